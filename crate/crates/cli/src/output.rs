//! CSV serialization of sweep records.

use std::io::{self, Write};

use crate::sweep::SweepRecord;

pub const CSV_HEADER: &str =
    "n_atoms,u,s,p_t1,p_r1,p_tj,p_rj,p_t0,p_r0,p1,pj,p0,unitarity_residual";

/// Scientific notation with 17 significant digits; parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_row(record: &SweepRecord) -> String {
    let mut row = record.n_atoms.to_string();
    let fields = [record.u, record.s]
        .into_iter()
        .chain(record.probabilities.to_array())
        .chain([record.unitarity_residual]);
    for x in fields {
        row.push(',');
        row.push_str(&format_float(x));
    }
    row
}

pub fn write_csv<W: Write>(mut out: W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for record in records {
        writeln!(out, "{}", format_row(record))?;
    }
    out.flush()
}
