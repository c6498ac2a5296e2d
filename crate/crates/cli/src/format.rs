//! Text output: eval values, report JSON/CSV and sweep tables.

use std::collections::BTreeSet;
use std::io::{self, Write};

use harmonic_kernels::verify::{IdentityReport, ParamValue};
use harmonic_kernels::Complex64;

/// `x` with 17 significant digits. Positional notation for moderate
/// magnitudes, scientific otherwise. `None` for NaN and infinities.
pub fn number(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(if x.is_sign_negative() { "-0.0000000000000000" } else { "0.0000000000000000" }.into());
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).expect("{:e} always has an exponent");
    if (-5..=16).contains(&exp) {
        Some(format!("{x:.*}", (16 - exp) as usize))
    } else {
        Some(sci)
    }
}

/// `re±im i`, each part with 17 significant digits.
pub fn complex(z: Complex64) -> String {
    let re = number(z.re).unwrap_or_else(|| z.re.to_string());
    let im = number(z.im.abs()).unwrap_or_else(|| z.im.abs().to_string());
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

fn json_number(x: f64) -> String {
    number(x).unwrap_or_else(|| "null".into())
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn param_text(v: &ParamValue) -> String {
    match v {
        ParamValue::Real(x) => number(*x).unwrap_or_else(|| x.to_string()),
        other => other.to_string(),
    }
}

fn json_param(v: &ParamValue) -> String {
    match v {
        ParamValue::Real(x) => json_number(*x),
        other => json_string(&other.to_string()),
    }
}

/// Numeric report columns, in output order.
pub const NUMERIC_COLUMNS: [&str; 8] =
    ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "quad_error", "tolerance"];

fn numeric_fields(r: &IdentityReport) -> [f64; 8] {
    [r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.abs_err, r.rel_err, r.quad_error, r.tolerance]
}

/// A JSON array with one object per report, one object per line.
pub fn write_reports_json<W: Write>(mut out: W, reports: &[IdentityReport]) -> io::Result<()> {
    if reports.is_empty() {
        return out.write_all(b"[]\n");
    }
    out.write_all(b"[\n")?;
    for (k, r) in reports.iter().enumerate() {
        let params: Vec<String> =
            r.params.iter().map(|(key, v)| format!("{}: {}", json_string(key), json_param(v))).collect();
        write!(out, "  {{\"identity\": {}, \"params\": {{{}}}", json_string(&r.identity), params.join(", "))?;
        for (name, v) in NUMERIC_COLUMNS.iter().zip(numeric_fields(r)) {
            write!(out, ", \"{name}\": {}", json_number(v))?;
        }
        write!(out, ", \"status\": \"{}\"}}", r.status)?;
        out.write_all(if k + 1 < reports.len() { b",\n" } else { b"\n" })?;
    }
    out.write_all(b"]\n")
}

/// CSV with the JSON keys as columns and parameters flattened into
/// `param.<name>` columns (union over all reports, sorted). NaN is an empty field.
pub fn write_reports_csv<W: Write>(out: W, reports: &[IdentityReport]) -> io::Result<()> {
    let keys: BTreeSet<&str> = reports.iter().flat_map(|r| r.params.keys().map(String::as_str)).collect();
    let mut w = csv_writer(out);
    let mut header = vec!["identity".to_string()];
    header.extend(NUMERIC_COLUMNS.iter().map(|s| s.to_string()));
    header.push("status".into());
    header.extend(keys.iter().map(|k| format!("param.{k}")));
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![r.identity.clone()];
        row.extend(numeric_fields(r).map(|v| number(v).unwrap_or_default()));
        row.push(r.status.to_string());
        row.extend(keys.iter().map(|k| r.params.get(*k).map(param_text).unwrap_or_default()));
        w.write_record(&row)?;
    }
    w.flush()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// One sample of a sweep; `None` where evaluation failed.
pub type SweepRow = (f64, Option<Complex64>);

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["r", "value_re", "value_im"])?;
    for &(r, v) in rows {
        let (re, im) = match v {
            Some(z) => (number(z.re).unwrap_or_default(), number(z.im).unwrap_or_default()),
            None => (String::new(), String::new()),
        };
        w.write_record([number(r).unwrap_or_default(), re, im])?;
    }
    w.flush()
}

pub fn write_sweep_json<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    if rows.is_empty() {
        return out.write_all(b"[]\n");
    }
    out.write_all(b"[\n")?;
    for (k, &(r, v)) in rows.iter().enumerate() {
        let (re, im) = match v {
            Some(z) => (json_number(z.re), json_number(z.im)),
            None => ("null".into(), "null".into()),
        };
        write!(out, "  {{\"r\": {}, \"value_re\": {re}, \"value_im\": {im}}}", json_number(r))?;
        out.write_all(if k + 1 < rows.len() { b",\n" } else { b"\n" })?;
    }
    out.write_all(b"]\n")
}
