//! CSV tables. Numbers carry 12 significant digits, rows end in `\n`.

use std::hash::Hasher;
use std::io::Write;

use fnv::FnvHasher;

use crate::config::{RegionSpec, ScenarioFile};
use crate::error::CliError;
use crate::run::{MaxInterferers, Record};

pub const RECORD_HEADER: [&str; 18] = [
    "fingerprint",
    "variable",
    "value",
    "method",
    "region",
    "receiver_x",
    "receiver_y",
    "r0",
    "M",
    "m0",
    "m",
    "alpha",
    "beta_db",
    "snr_db",
    "outage",
    "std_error",
    "trials",
    "seed",
];

pub const MAXM_HEADER: [&str; 10] = [
    "fingerprint",
    "method",
    "m0",
    "m",
    "alpha",
    "target",
    "m_star",
    "feasible",
    "outage_at_m_star",
    "outage_above",
];

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
pub fn fingerprint(file: &ScenarioFile) -> String {
    let mut h = FnvHasher::default();
    h.write(file.canonical_json().as_bytes());
    format!("{:016x}", h.finish())
}

/// `printf("%.12g")`.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mant), exp.abs())
    } else {
        strip_zeros(&format!("{x:.*}", (11 - exp) as usize)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn region_name(file: &ScenarioFile) -> &'static str {
    match file.region {
        RegionSpec::Disk(_) => "disk",
        RegionSpec::RegularPolygon(_) => "regular_polygon",
        RegionSpec::Polygon(_) => "polygon",
        RegionSpec::Fig2(_) => "fig2",
    }
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

/// Long format: one row per record, header always present.
pub fn write_records<W: Write>(base: &ScenarioFile, records: &[Record], out: W) -> Result<(), CliError> {
    let fp = fingerprint(base);
    let mut w = writer(out);
    w.write_record(RECORD_HEADER).map_err(io)?;
    for r in records {
        let p = &r.point;
        let opt = |v: Option<f64>| v.map(format_g12).unwrap_or_default();
        w.write_record([
            fp.clone(),
            r.variable.map(|v| v.as_str().to_string()).unwrap_or_default(),
            opt(r.value),
            r.result.method.as_str().to_string(),
            region_name(p).to_string(),
            format_g12(r.receiver.x),
            format_g12(r.receiver.y),
            format_g12(p.r0),
            p.interferers.to_string(),
            format_g12(p.m0),
            format_g12(p.m),
            format_g12(p.alpha),
            format_g12(p.beta_db),
            format_g12(p.snr_db),
            format_g12(r.result.outage),
            opt(r.result.std_error),
            r.result.trials.map(|t| t.to_string()).unwrap_or_default(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_max_interferers<W: Write>(base: &ScenarioFile, result: &MaxInterferers, out: W) -> Result<(), CliError> {
    let mut w = writer(out);
    w.write_record(MAXM_HEADER).map_err(io)?;
    w.write_record([
        fingerprint(base),
        result.method.as_str().to_string(),
        format_g12(base.m0),
        format_g12(base.m),
        format_g12(base.alpha),
        format_g12(result.target),
        result.m_star.to_string(),
        result.feasible.to_string(),
        format_g12(result.outage_at_m_star),
        format_g12(result.outage_above),
    ])
    .map_err(io)?;
    w.flush().map_err(io)
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit<F>(path: Option<&std::path::Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) if p != std::path::Path::new("-") => {
            let mut buf = Vec::new();
            write(&mut buf)?;
            std::fs::write(p, buf).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    }
}
