//! `catsteer`: data for the element-of-reality and contour figures, witness
//! evaluations, smearing scans and Monte Carlo runs.

mod output;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use catsteer::analytic_cat::{steering_witness, tabulate, CatState};
use catsteer::coarse_grain::{critical_delta, critical_delta_closed_form, delta_scan};
use catsteer::export::{fmt_f64, write_dist_csv, write_matrix_csv, write_records_csv};
use catsteer::figures::{fig1_panels, fig2_grids, fig2_matrix, FIG2_DEFAULT_ALPHAS};
use catsteer::ghz_sim::ghz_steering_witness;
use catsteer::grid::QuadratureGrid;
use catsteer::mc_sampler::{
    estimate_witness, sample_coherent_cat, sample_ghz, EstimateOptions, SampleConfig,
    DEFAULT_RESAMPLES,
};
use catsteer::steering::{falsifiability_2b, SteeringReport};
use catsteer::{Axis, Basis, Outcome};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::{emit, write_atomic, write_json, write_manifest, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "catsteer", version, about = "Steering of entangled cat states: distributions, witnesses, scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conditional quadrature density of the oscillator.
    Dist {
        #[arg(long)]
        alpha: f64,
        /// Alice's spin setting.
        #[arg(long, value_enum)]
        setting: SpinSetting,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_outcome)]
        outcome: Outcome,
        /// Defaults to the quadrature Alice's setting predicts.
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        /// `min:max:step`; defaults to the standard grid for the basis.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Eight element-of-reality prediction tables.
    Fig1 {
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value = "fig1")]
        out: PathBuf,
    },
    /// P(x)·P(p) matrices, one CSV per α.
    Fig2 {
        #[arg(long, value_delimiter = ',', default_values_t = FIG2_DEFAULT_ALPHAS.to_vec())]
        alphas: Vec<f64>,
        #[arg(long, default_value = "fig2")]
        out: PathBuf,
    },
    /// Steering witness report as JSON.
    Steer {
        #[arg(long, value_enum)]
        realisation: Realisation,
        #[arg(long, required_if_eq("realisation", "coherent"))]
        alpha: Option<f64>,
        #[arg(long, required_if_eq("realisation", "ghz"))]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Quadrature witness under Gaussian smearing of P by δ.
    DeltaScan {
        #[arg(long)]
        alpha: f64,
        /// `min:max:step`
        #[arg(long, conflicts_with = "find_critical", required_unless_present = "find_critical")]
        delta: Option<String>,
        /// Bisect for the smallest δ that removes the violation.
        #[arg(long)]
        find_critical: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether Δ·δ < c.
    Falsifiability {
        #[arg(long = "Delta")]
        big_delta: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
    },
    /// Monte Carlo records and the estimated witness.
    Sample {
        #[arg(long, value_enum)]
        realisation: Realisation,
        #[arg(long, required_if_eq("realisation", "coherent"))]
        alpha: Option<f64>,
        #[arg(long, required_if_eq("realisation", "ghz"))]
        n: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESAMPLES)]
        resamples: usize,
        /// Records CSV.
        #[arg(long)]
        out: PathBuf,
        /// Estimate JSON; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpinSetting {
    Z,
    X,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    X,
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Realisation {
    Coherent,
    Ghz,
}

fn parse_outcome(s: &str) -> Result<Outcome, String> {
    match s {
        "+1" | "1" => Ok(Outcome::Plus),
        "-1" => Ok(Outcome::Minus),
        _ => Err(format!("outcome must be +1 or -1, got {s:?}")),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(catsteer::Error),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use catsteer::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::GridResolution { .. } | E::Truncation { .. }) => 3,
            CliError::Core(E::InvalidParameter(_) | E::SizeCap { .. } | E::IndexOutOfRange { .. }) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<catsteer::Error> for CliError {
    fn from(e: catsteer::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn csv_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

fn report_json(r: &SteeringReport) -> serde_json::Value {
    json!({ "lhs": r.lhs, "bound": r.bound, "violated": r.violated, "margin": r.margin })
}

fn json_line(w: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    w.write_all(b"\n")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Dist { alpha, setting, outcome, basis, grid, out, format } => {
            let cat = CatState::new(alpha)?;
            let setting = match setting {
                SpinSetting::Z => Axis::Z,
                SpinSetting::X => Axis::X,
            };
            let natural = catsteer::analytic_cat::bob_basis(setting)?;
            if let Some(b) = basis {
                let b = match b {
                    BasisArg::X => Basis::X,
                    BasisArg::P => Basis::P,
                };
                if b != natural {
                    return Err(CliError::Usage(format!(
                        "setting {} predicts basis {natural:?}, not {b:?}",
                        setting.label()
                    )));
                }
            }
            let grid = match grid {
                Some(g) => QuadratureGrid::parse(&g)?,
                None => match natural {
                    Basis::X => cat.default_x_grid(),
                    Basis::P => cat.default_p_grid(),
                },
            };
            let dist = tabulate(cat, setting, outcome, grid)?;
            let manifest = RunManifest::new(
                "dist",
                json!({
                    "alpha": alpha, "setting": setting.label(), "outcome": outcome.as_i8(),
                    "basis": format!("{natural:?}").to_lowercase(),
                    "grid": { "min": grid.min(), "max": grid.max(), "step": grid.step() },
                    "format": format!("{format:?}").to_lowercase(),
                }),
                None,
            );
            emit(out.as_deref(), &manifest, |w| match format {
                Format::Csv => write_dist_csv(&dist, w).map_err(csv_io),
                Format::Json => json_line(
                    w,
                    &json!({
                        "coordinate": dist.coordinates().collect::<Vec<_>>(),
                        "density": dist.densities,
                    }),
                ),
            })?;
        }

        Command::Fig1 { alpha, out } => {
            let panels = fig1_panels(CatState::new(alpha)?)?;
            let mut files = Vec::new();
            for panel in &panels {
                let (sx, sp) = panel.file_stems();
                for (stem, dist) in [(sx, &panel.x), (sp, &panel.p)] {
                    let name = format!("{stem}.csv");
                    write_atomic(&out.join(&name), |w| write_dist_csv(dist, w).map_err(csv_io))?;
                    files.push(name);
                }
            }
            let m = RunManifest::new("fig1", json!({ "alpha": alpha, "files": files }), None);
            write_manifest(&out.join("manifest.json"), &m)?;
        }

        Command::Fig2 { alphas, out } => {
            if alphas.is_empty() {
                return Err(CliError::Usage("--alphas needs at least one value".into()));
            }
            let mut files = Vec::new();
            for &a in &alphas {
                let cat = CatState::new(a)?;
                let (_, gp) = fig2_grids(cat)?;
                let m = fig2_matrix(cat)?;
                let name = format!("fig2_alpha{}.csv", fmt_f64(a));
                write_atomic(&out.join(&name), |w| write_matrix_csv(&m, w).map_err(csv_io))?;
                files.push(json!({ "file": name, "p_step": gp.step(), "rows": m.xs.len(), "cols": m.ps.len() }));
            }
            let m = RunManifest::new("fig2", json!({ "alphas": alphas, "files": files }), None);
            write_manifest(&out.join("manifest.json"), &m)?;
        }

        Command::Steer { realisation, alpha, n, out, format: _ } => {
            let (report, params) = match realisation {
                Realisation::Coherent => {
                    let a = alpha.expect("required by clap");
                    (steering_witness(CatState::new(a)?), json!({ "realisation": "coherent", "alpha": a }))
                }
                Realisation::Ghz => {
                    let n = n.expect("required by clap");
                    (ghz_steering_witness(n)?.report, json!({ "realisation": "ghz", "n": n }))
                }
            };
            let manifest = RunManifest::new("steer", params, None);
            emit(out.as_deref(), &manifest, |w| json_line(w, &report_json(&report)))?;
        }

        Command::DeltaScan { alpha, delta, find_critical, tol, out } => {
            let cat = CatState::new(alpha)?;
            if find_critical {
                let d = critical_delta(cat, tol)?;
                let manifest = RunManifest::new(
                    "delta-scan",
                    json!({ "alpha": alpha, "find_critical": true, "tol": tol }),
                    None,
                );
                let v = json!({
                    "alpha": alpha,
                    "delta_critical": d,
                    "closed_form": critical_delta_closed_form(cat),
                    "tol": tol,
                });
                emit(out.as_deref(), &manifest, |w| json_line(w, &v))?;
            } else {
                let range = delta.expect("required by clap");
                let g = QuadratureGrid::parse(&range)?;
                if g.min() <= 0.0 {
                    return Err(CliError::Usage(format!("δ range must be positive, got {range}")));
                }
                let deltas: Vec<f64> = g.points().collect();
                let rows = delta_scan(cat, &deltas)?;
                let manifest = RunManifest::new("delta-scan", json!({ "alpha": alpha, "delta": range }), None);
                emit(out.as_deref(), &manifest, |w| {
                    let mut csv = csv::WriterBuilder::new()
                        .terminator(csv::Terminator::Any(b'\n'))
                        .from_writer(w);
                    let mut body = || -> csv::Result<()> {
                        csv.write_record(["delta", "var_inf_p", "product", "violated"])?;
                        for r in &rows {
                            csv.write_record([
                                fmt_f64(r.delta),
                                fmt_f64(r.var_inf_p),
                                fmt_f64(r.product),
                                r.violated.to_string(),
                            ])?;
                        }
                        csv.flush()?;
                        Ok(())
                    };
                    body().map_err(csv_io)
                })?;
            }
        }

        Command::Falsifiability { big_delta, delta, c } => {
            let signifiable = falsifiability_2b(big_delta, delta, c)?;
            println!("{signifiable}");
        }

        Command::Sample { realisation, alpha, n, shots, seed, resamples, out, report } => {
            let (records, params) = match realisation {
                Realisation::Coherent => {
                    let a = alpha.expect("required by clap");
                    let cfg = SampleConfig::coherent(shots as usize, seed)?;
                    (
                        sample_coherent_cat(CatState::new(a)?, &cfg)?,
                        json!({ "realisation": "coherent", "alpha": a, "shots": shots, "resamples": resamples }),
                    )
                }
                Realisation::Ghz => {
                    let n = n.expect("required by clap");
                    let cfg = SampleConfig::ghz(n, shots as usize, seed)?;
                    (
                        sample_ghz(n, &cfg)?,
                        json!({ "realisation": "ghz", "n": n, "shots": shots, "resamples": resamples }),
                    )
                }
            };
            let manifest = RunManifest::new("sample", params, Some(seed));
            emit(Some(&out), &manifest, |w| write_records_csv(&records, w).map_err(csv_io))?;
            let est = estimate_witness(&records, EstimateOptions { resamples, seed })?;
            let v = serde_json::to_value(est).map_err(io::Error::other)?;
            match report {
                Some(p) => write_json(&p, &v)?,
                None => json_line(&mut io::stdout().lock(), &v)?,
            }
        }
    }
    Ok(())
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("CATSTEER_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("CATSTEER_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(io::Error::other(e)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catsteer: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
