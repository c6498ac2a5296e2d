use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::LambdaPoly;
use crate::{Error, Result};

/// Exact sum `e^{iλr} · Σ c_{k,j}(iλ) · csch^k(r) · coth^j(r)`.
///
/// Keys are `(k, j)` = (csch power, coth power). The basis is not reduced with
/// `coth² = 1 + csch²`, so two equal functions may have different term maps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermSum {
    terms: BTreeMap<(u32, u32), LambdaPoly>,
}

impl TermSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The bare exponential `e^{iλr}`.
    pub fn exponential() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), LambdaPoly::one());
        Self { terms }
    }

    /// Builds a sum from `(k, j, coefficient)` triples, merging duplicates.
    pub fn from_terms<I>(terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = (u32, u32, LambdaPoly)>,
    {
        let mut sum = Self::zero();
        for (k, j, c) in terms {
            sum.accumulate(k, j, &c)?;
        }
        Some(sum)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: u32, j: u32) -> Option<&LambdaPoly> {
        self.terms.get(&(k, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &LambdaPoly)> {
        self.terms.iter().map(|(&key, c)| (key, c))
    }

    /// Image under `(1/sinh r) · d/dr`.
    ///
    /// # Panics
    /// On `i128` coefficient overflow; see [`TermSum::checked_apply_d`].
    pub fn apply_d(&self) -> Self {
        self.checked_apply_d().expect("TermSum coefficient overflow")
    }

    pub fn checked_apply_d(&self) -> Option<Self> {
        Some(self.checked_derivative()?.mul_csch())
    }

    /// Image under `d/dr`, using `csch' = -csch·coth` and `coth' = -csch²`.
    pub fn checked_derivative(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (&(k, j), c) in &self.terms {
            out.accumulate(k, j, &c.shift())?;
            if k > 0 {
                out.accumulate(k, j + 1, &c.checked_scale(-(k as i128))?)?;
            }
            if j > 0 {
                out.accumulate(k + 2, j - 1, &c.checked_scale(-(j as i128))?)?;
            }
        }
        Some(out)
    }

    /// Multiplies every term by `csch r`.
    pub fn mul_csch(&self) -> Self {
        let terms = self.terms.iter().map(|(&(k, j), c)| ((k + 1, j), c.clone())).collect();
        Self { terms }
    }

    /// Largest absolute integer coefficient.
    pub fn max_coefficient(&self) -> u128 {
        self.terms
            .values()
            .flat_map(|p| p.coefficients().iter().map(|c| c.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    /// Fixes `λ`, turning every coefficient polynomial into a complex number.
    pub fn bind(&self, lambda: Complex64) -> BoundTermSum {
        let i_lambda = Complex64::new(0.0, 1.0) * lambda;
        let terms: Vec<_> = self.terms.iter().map(|(&(k, j), c)| (k, j, c.eval(i_lambda))).collect();
        let max_k = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0);
        BoundTermSum { i_lambda, terms, max_k, max_j }
    }

    fn accumulate(&mut self, k: u32, j: u32, c: &LambdaPoly) -> Option<()> {
        if c.is_zero() {
            return Some(());
        }
        let key = (k, j);
        let merged = match self.terms.get(&key) {
            Some(existing) => existing.checked_add(c)?,
            None => c.clone(),
        };
        if merged.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
        Some(())
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(k, j), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]·csch^{k}·coth^{j}")?;
        }
        f.write_str(" · e^{iλr}")
    }
}

/// A [`TermSum`] with `λ` fixed, ready for repeated evaluation in `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTermSum {
    i_lambda: Complex64,
    terms: Vec<(u32, u32, Complex64)>,
    max_k: u32,
    max_j: u32,
}

impl BoundTermSum {
    pub fn eval(&self, r: f64) -> Result<Complex64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain("term sums are evaluated at r > 0"));
        }
        let (csch, coth) = csch_coth(r);
        let csch_powers = powers(csch, self.max_k);
        let coth_powers = powers(coth, self.max_j);
        let sum = self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &(k, j, c)| {
            acc + c * (csch_powers[k as usize] * coth_powers[j as usize])
        });
        Ok((self.i_lambda * r).exp() * sum)
    }
}

/// `csch r` and `coth r`, without overflow for large `r`.
pub(crate) fn csch_coth(r: f64) -> (f64, f64) {
    if r > 20.0 {
        let e = (-2.0 * r).exp();
        let denom = 1.0 - e;
        (2.0 * (-r).exp() / denom, (1.0 + e) / denom)
    } else {
        let s = r.sinh();
        (1.0 / s, r.cosh() / s)
    }
}

fn powers(x: f64, n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut p = 1.0;
    for _ in 0..=n {
        out.push(p);
        p *= x;
    }
    out
}

/// Evaluates `t` at `(λ, r)`.
pub fn eval_term_sum(t: &TermSum, lambda: Complex64, r: f64) -> Result<Complex64> {
    t.bind(lambda).eval(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(c: &[i128]) -> LambdaPoly {
        LambdaPoly::from_coefficients(c.to_vec())
    }

    #[test]
    fn first_application() {
        let d = TermSum::exponential().apply_d();
        let expected = TermSum::from_terms(vec![(1, 0, poly(&[0, 1]))]).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn second_application() {
        let d2 = TermSum::exponential().apply_d().apply_d();
        let expected = TermSum::from_terms(vec![(2, 0, poly(&[0, 0, 1])), (2, 1, poly(&[0, -1]))]).unwrap();
        assert_eq!(d2, expected);
    }

    #[test]
    fn zero_is_fixed() {
        assert!(TermSum::zero().apply_d().is_zero());
    }

    #[test]
    fn eval_examples() {
        let t = TermSum::from_terms(vec![(1, 0, poly(&[0, 1]))]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);

        let v = eval_term_sum(&t, i, 1.0).unwrap();
        let expected = -(-1.0f64).exp() / 1.0f64.sinh();
        assert!((v.re - expected).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!((expected + 0.313_035_285_4).abs() < 1e-10);

        let v = eval_term_sum(&t, one, 1.0).unwrap();
        let expected = i * i.exp() / 1.0f64.sinh();
        assert!((v - expected).norm() < 1e-15);

        let e = eval_term_sum(&TermSum::exponential(), Complex64::new(2.0, 0.5), 0.7).unwrap();
        assert!((e - (i * Complex64::new(2.0, 0.5) * 0.7).exp()).norm() < 1e-15);
    }

    #[test]
    fn eval_rejects_nonpositive_r() {
        let t = TermSum::exponential();
        assert!(matches!(eval_term_sum(&t, Complex64::new(1.0, 0.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_term_sum(&t, Complex64::new(1.0, 0.0), -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn csch_coth_branches_agree() {
        let (a, b) = csch_coth(20.0);
        let (c, d) = csch_coth(20.000_000_000_001);
        assert!((a - c).abs() < 1e-12 * a && (b - d).abs() < 1e-12);
    }
}
