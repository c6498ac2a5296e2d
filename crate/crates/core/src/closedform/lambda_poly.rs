use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// Polynomial in the formal variable `iλ` with exact integer coefficients.
///
/// `coefficients[p]` multiplies `(iλ)^p`. Trailing zeros are stripped, so the
/// zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coefficients: Vec<i128>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coefficients: alloc::vec![1] }
    }

    pub fn from_coefficients(coefficients: Vec<i128>) -> Self {
        let mut p = Self { coefficients };
        p.normalize();
        p
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Multiplies by `iλ`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = Vec::with_capacity(self.coefficients.len() + 1);
        coefficients.push(0);
        coefficients.extend_from_slice(&self.coefficients);
        Self { coefficients }
    }

    pub fn checked_scale(&self, factor: i128) -> Option<Self> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| c.checked_mul(factor))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coefficients(coefficients))
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let n = self.coefficients.len().max(other.coefficients.len());
        let coefficients = (0..n)
            .map(|i| {
                let a = self.coefficients.get(i).copied().unwrap_or(0);
                let b = other.coefficients.get(i).copied().unwrap_or(0);
                a.checked_add(b)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_coefficients(coefficients))
    }

    /// Evaluates at `iλ = x`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c as f64)
    }

    fn normalize(&mut self) {
        while self.coefficients.last() == Some(&0) {
            self.coefficients.pop();
        }
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            match (p, mag) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, 1) => write!(f, "{sign}(iλ)^{p}")?,
                _ => write!(f, "{sign}{mag}(iλ)^{p}")?,
            }
            first = false;
        }
        Ok(())
    }
}
