//! CSV and JSON serialization of simulation results.
//!
//! Both formats are written by hand so the byte layout is fully pinned:
//! floats always carry 17 significant digits (scientific notation), which
//! round-trips f64 exactly, and key order is fixed.

use std::io::{self, Write};

use crate::runner::{PointResult, TauProfile};

/// Exact CSV header of a sweep.
pub const CSV_HEADER: &str =
    "snr_db,strategy,frames,frame_errors,fer,ci_low,ci_high,mean_tau_star,mean_select_seconds";

/// A float with 17 significant digits, e.g. `6.2500000000000000e-2`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(rows: &[PointResult], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt_float(r.snr_db),
            r.strategy,
            r.frames,
            r.frame_errors,
            fmt_float(r.fer),
            fmt_float(r.ci_low),
            fmt_float(r.ci_high),
            fmt_float(r.mean_tau_star),
            fmt_float(r.mean_select_seconds),
        )?;
    }
    Ok(())
}

fn write_histogram<W: Write>(histogram: &[u64], out: &mut W) -> io::Result<()> {
    write!(out, "[")?;
    for (i, count) in histogram.iter().enumerate() {
        if i > 0 {
            write!(out, ",")?;
        }
        write!(out, "{count}")?;
    }
    write!(out, "]")
}

/// JSON mirror of the CSV rows plus the tau histogram per row.
pub fn write_json<W: Write>(rows: &[PointResult], out: &mut W) -> io::Result<()> {
    writeln!(out, "[")?;
    for (i, r) in rows.iter().enumerate() {
        write!(
            out,
            "  {{\"snr_db\": {}, \"strategy\": \"{}\", \"frames\": {}, \"frame_errors\": {}, \
             \"fer\": {}, \"ci_low\": {}, \"ci_high\": {}, \"mean_tau_star\": {}, \
             \"mean_select_seconds\": {}, \"tau_histogram\": ",
            fmt_float(r.snr_db),
            r.strategy,
            r.frames,
            r.frame_errors,
            fmt_float(r.fer),
            fmt_float(r.ci_low),
            fmt_float(r.ci_high),
            fmt_float(r.mean_tau_star),
            fmt_float(r.mean_select_seconds),
        )?;
        write_histogram(&r.tau_histogram, out)?;
        writeln!(out, "}}{}", if i + 1 < rows.len() { "," } else { "" })?;
    }
    writeln!(out, "]")
}

pub fn write_tau_profile_text<W: Write>(profile: &TauProfile, out: &mut W) -> io::Result<()> {
    writeln!(out, "tau,count")?;
    for (tau, count) in profile.histogram.iter().enumerate() {
        writeln!(out, "{tau},{count}")?;
    }
    writeln!(out, "frames={}", profile.frames)?;
    writeln!(out, "mean_tau_star={}", fmt_float(profile.mean_tau_star))?;
    writeln!(out, "mode_tau_star={}", profile.mode_tau_star)
}

pub fn write_tau_profile_json<W: Write>(profile: &TauProfile, out: &mut W) -> io::Result<()> {
    write!(
        out,
        "{{\"snr_db\": {}, \"strategy\": \"{}\", \"frames\": {}, \"mean_tau_star\": {}, \
         \"mode_tau_star\": {}, \"tau_histogram\": ",
        fmt_float(profile.snr_db),
        profile.strategy,
        profile.frames,
        fmt_float(profile.mean_tau_star),
        profile.mode_tau_star,
    )?;
    write_histogram(&profile.histogram, out)?;
    writeln!(out, "}}")
}
