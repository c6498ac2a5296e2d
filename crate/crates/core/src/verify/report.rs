use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use num_complex::Complex64;

use crate::Error;

/// Magnitude below which a report is judged on absolute error.
pub const ABSOLUTE_FALLBACK: f64 = 1e-12;

/// A parameter as recorded in a report or read from a grid config.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl ParamValue {
    pub fn as_complex(&self) -> Option<Complex64> {
        match *self {
            ParamValue::Real(v) => Some(Complex64::new(v, 0.0)),
            ParamValue::Complex(z) => Some(z),
            ParamValue::Text(_) => None,
        }
    }

    /// Real value; complex values are accepted when their imaginary part is zero.
    pub fn as_real(&self) -> Option<f64> {
        self.as_complex().filter(|z| z.im == 0.0).map(|z| z.re)
    }

    pub fn as_u32(&self) -> Option<u32> {
        let v = self.as_real()?;
        (v >= 0.0 && v <= f64::from(u32::MAX) && v == (v as u32) as f64).then_some(v as u32)
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            ParamValue::Text(s) => Some(s),
            _ => None,
        }
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Real(f64::from(v))
    }
}

impl From<Complex64> for ParamValue {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            ParamValue::Real(z.re)
        } else {
            ParamValue::Complex(z)
        }
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_string())
    }
}

impl fmt::Display for ParamValue {
    /// Shortest round-trip form; complex values as `a+bi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Complex(z) => {
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", z.re, sign, z.im.abs())
            }
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, ParamValue>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// Estimated relative quadrature error, zero when no quadrature was involved.
    pub quad_error: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl IdentityReport {
    /// Compares `lhs` against `rhs` and sets the status.
    pub fn compare(
        identity: &str,
        params: BTreeMap<String, ParamValue>,
        lhs: Complex64,
        rhs: Complex64,
        quad_error: f64,
        tolerance: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = relative_error(lhs, rhs);
        let metric = if lhs.norm() < ABSOLUTE_FALLBACK { abs_err } else { rel_err };
        let status = if metric <= tolerance { Status::Pass } else { Status::Fail };
        Self { identity: identity.to_string(), params, lhs, rhs, abs_err, rel_err, quad_error, tolerance, status }
    }

    /// A report for a check that could not be evaluated; the reason lands in
    /// the `error` and `error_kind` parameters.
    pub fn skipped(identity: &str, mut params: BTreeMap<String, ParamValue>, tolerance: f64, error: &Error) -> Self {
        params.insert("error".to_string(), ParamValue::Text(error.to_string()));
        params.insert("error_kind".to_string(), ParamValue::Text(error.kind().to_string()));
        let nan = Complex64::new(f64::NAN, f64::NAN);
        Self {
            identity: identity.to_string(),
            params,
            lhs: nan,
            rhs: nan,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            quad_error: f64::NAN,
            tolerance,
            status: Status::Skipped,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `true` for reports skipped because of a numerical failure (pole,
    /// non-convergence) rather than a violated precondition.
    pub fn is_numerical_error(&self) -> bool {
        self.status == Status::Skipped
            && matches!(self.params.get("error_kind").and_then(ParamValue::as_text),
                Some(k) if k != "DomainError")
    }

    /// Deterministic sort key: identity, then parameters in name order.
    pub fn sort_key(&self) -> (String, String) {
        let mut params = String::new();
        for (k, v) in &self.params {
            params.push_str(k);
            params.push('=');
            params.push_str(&v.to_string());
            params.push(';');
        }
        (self.identity.clone(), params)
    }
}

/// `|a - b| / max(|a|, |b|, 1e-300)`.
pub fn relative_error(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_metric() {
        let one = Complex64::new(1.0, 0.0);
        let r = IdentityReport::compare("x", BTreeMap::new(), one, one * (1.0 + 1e-7), 0.0, 1e-6);
        assert_eq!(r.status, Status::Pass);
        let r = IdentityReport::compare("x", BTreeMap::new(), one, one * 1.1, 0.0, 1e-6);
        assert_eq!(r.status, Status::Fail);
        // tiny lhs: absolute error decides
        let tiny = Complex64::new(1e-14, 0.0);
        let r = IdentityReport::compare("x", BTreeMap::new(), tiny, tiny * 3.0, 0.0, 1e-6);
        assert_eq!(r.status, Status::Pass);
        assert!(r.rel_err > 0.5);
    }

    #[test]
    fn skipped_carries_reason() {
        let r = IdentityReport::skipped("x", BTreeMap::new(), 1e-6, &Error::Convergence { terms: 5 });
        assert_eq!(r.status, Status::Skipped);
        assert!(r.is_numerical_error());
        assert_eq!(r.params["error_kind"], ParamValue::Text("ConvergenceError".into()));
        let r = IdentityReport::skipped("x", BTreeMap::new(), 1e-6, &Error::Domain("bad"));
        assert!(!r.is_numerical_error());
    }

    #[test]
    fn param_display() {
        assert_eq!(ParamValue::from(Complex64::new(2.0, -0.5)).to_string(), "2-0.5i");
        assert_eq!(ParamValue::from(Complex64::new(2.0, 0.0)).to_string(), "2");
        assert_eq!(ParamValue::from(3u32).as_u32(), Some(3));
        assert_eq!(ParamValue::from(3.5).as_u32(), None);
    }
}
