//! Text form of complex numbers: `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`.

use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseComplexError;

impl fmt::Display for ParseComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a complex number of the form a, bi, a+bi or a-bi")
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi` (with `i` alone meaning `1i`).
pub fn parse_complex(s: &str) -> Result<Complex64, ParseComplexError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseComplexError);
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    };
    // Split at the last sign that is not the leading one and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(parse_real(&body[..k])?, parse_imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, parse_imag(body)?)),
    }
}

fn parse_imag(s: &str) -> Result<f64, ParseComplexError> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

fn parse_real(s: &str) -> Result<f64, ParseComplexError> {
    if s.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return Err(ParseComplexError);
    }
    let v = f64::from_str(s).map_err(|_| ParseComplexError)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseComplexError)
    }
}
