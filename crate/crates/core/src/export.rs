//! CSV emission for distributions, density matrices and sample records.
//!
//! Numbers are written in Rust's shortest round-trip form (`{:?}`), so the
//! output is independent of locale and parses back to the same bits.

use std::io::Write;

use crate::analytic_cat::{ConditionalDist, DensityMatrix};
use crate::mc_sampler::SampleRecord;

pub const RECORDS_HEADER: [&str; 4] = ["alice_setting", "alice_outcome", "bob_observable", "bob_value"];

pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Two columns, `coordinate,density`.
pub fn write_dist_csv<W: Write>(dist: &ConditionalDist, w: W) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(["coordinate", "density"])?;
    for (x, d) in dist.coordinates().zip(&dist.densities) {
        out.write_record([fmt_f64(x), fmt_f64(*d)])?;
    }
    out.flush()?;
    Ok(())
}

/// Header `x/p,<p_0>,<p_1>,...`, then one row per x value.
pub fn write_matrix_csv<W: Write>(m: &DensityMatrix, w: W) -> csv::Result<()> {
    let mut out = writer(w);
    let header: Vec<String> = std::iter::once("x/p".to_string())
        .chain(m.ps.iter().map(|p| fmt_f64(*p)))
        .collect();
    out.write_record(&header)?;
    for (i, x) in m.xs.iter().enumerate() {
        let row: Vec<String> = std::iter::once(fmt_f64(*x))
            .chain(m.row(i).iter().map(|v| fmt_f64(*v)))
            .collect();
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_records_csv<W: Write>(records: &[SampleRecord], w: W) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(RECORDS_HEADER)?;
    for r in records {
        out.write_record([
            r.alice_setting.label().to_string(),
            r.alice_outcome.as_i8().to_string(),
            r.bob_observable.to_string(),
            fmt_f64(r.bob_value),
        ])?;
    }
    out.flush()?;
    Ok(())
}
