use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::lemmas::{check_key_lemma, check_lemma31, check_lemma32, KeyLemmaVariant};
use super::report::{IdentityReport, ParamValue, Status};
use super::resolvents::{
    check_bundle_transform, check_closed_form, check_jacobi_ode, check_quadratic_transform, check_recurrence,
    check_transform, OdeTarget,
};
use crate::kernels::{BundleParam, SpaceDescriptor, SpectralParam};
use crate::Result;

/// Names accepted by [`Check::from_params`].
pub const IDENTITIES: [&str; 9] = [
    "lemma31",
    "lemma32",
    "key_lemma",
    "quadratic_transform",
    "recurrence",
    "closed_form",
    "transform",
    "bundle_transform",
    "jacobi_ode",
];

/// Problems turning a parameter map into a [`Check`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckSpecError {
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("{identity}: missing parameter '{key}'")]
    MissingKey { identity: String, key: String },
    #[error("{identity}: unknown parameter '{key}'")]
    UnknownKey { identity: String, key: String },
    #[error("parameter '{key}' must be {expected}")]
    BadValue { key: String, expected: &'static str },
    #[error("tolerance must be a positive finite number")]
    BadTolerance,
}

/// One identity at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Lemma31 { a: Complex64, b: Complex64, c: Complex64, mu: Complex64, x: f64 },
    Lemma32 { a: Complex64, b: Complex64, c: Complex64, nu: Complex64, x: f64 },
    KeyLemma { a: Complex64, b: Complex64, c: Complex64, mu: Complex64, nu: Complex64, x: f64, variant: KeyLemmaVariant },
    QuadraticTransform { n: u32, lambda: Complex64, r: f64 },
    Recurrence { n: u32, lambda: Complex64, r: f64 },
    ClosedForm { m: u32, lambda: Complex64, r: f64 },
    Transform { dim_n: u32, dim_z: u32, lambda: Complex64, r: f64 },
    BundleTransform { dim_n: u32, dim_z: u32, tau: f64, lambda: Complex64, r: f64 },
    JacobiOde { target: OdeSpec, lambda: Complex64, r: f64 },
}

/// Unvalidated [`OdeTarget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeSpec {
    Na { dim_n: u32, dim_z: u32 },
    Hyperbolic { n: u32 },
    Spherical { n: u32 },
}

struct Reader<'a> {
    identity: &'a str,
    params: &'a BTreeMap<String, ParamValue>,
}

impl Reader<'_> {
    fn get(&self, key: &str) -> core::result::Result<&ParamValue, CheckSpecError> {
        self.params.get(key).ok_or_else(|| CheckSpecError::MissingKey {
            identity: self.identity.to_string(),
            key: key.to_string(),
        })
    }

    fn complex(&self, key: &str) -> core::result::Result<Complex64, CheckSpecError> {
        self.get(key)?.as_complex().ok_or(bad(key, "a complex number"))
    }

    fn real(&self, key: &str) -> core::result::Result<f64, CheckSpecError> {
        self.get(key)?.as_real().ok_or(bad(key, "a real number"))
    }

    fn int(&self, key: &str) -> core::result::Result<u32, CheckSpecError> {
        self.get(key)?.as_u32().ok_or(bad(key, "a nonnegative integer"))
    }

    fn text(&self, key: &str) -> core::result::Result<&str, CheckSpecError> {
        self.get(key)?.as_text().ok_or(bad(key, "a name"))
    }
}

fn bad(key: &str, expected: &'static str) -> CheckSpecError {
    CheckSpecError::BadValue { key: key.to_string(), expected }
}

fn allowed_keys(identity: &str, params: &BTreeMap<String, ParamValue>) -> Option<&'static [&'static str]> {
    Some(match identity {
        "lemma31" => &["a", "b", "c", "mu", "x"],
        "lemma32" => &["a", "b", "c", "nu", "x"],
        "key_lemma" => &["a", "b", "c", "mu", "nu", "x", "variant"],
        "quadratic_transform" | "recurrence" => &["n", "lambda", "r"],
        "closed_form" => &["m", "lambda", "r"],
        "transform" => &["dim_n", "dim_z", "lambda", "r"],
        "bundle_transform" => &["dim_n", "dim_z", "tau", "lambda", "r"],
        "jacobi_ode" => match params.get("target").and_then(ParamValue::as_text) {
            Some("na") => &["target", "dim_n", "dim_z", "lambda", "r"],
            _ => &["target", "n", "lambda", "r"],
        },
        _ => return None,
    })
}

impl Check {
    /// Builds a check from named parameters. Every required key must be
    /// present and no other key is accepted. `key_lemma` takes an optional
    /// `variant` (`plain` or `tilde`, default `plain`); `jacobi_ode` takes
    /// `target` = `na` (with `dim_n`, `dim_z`), `hyperbolic` or `spherical` (with `n`).
    pub fn from_params(
        identity: &str,
        params: &BTreeMap<String, ParamValue>,
    ) -> core::result::Result<Self, CheckSpecError> {
        let allowed =
            allowed_keys(identity, params).ok_or_else(|| CheckSpecError::UnknownIdentity(identity.to_string()))?;
        if let Some(key) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CheckSpecError::UnknownKey { identity: identity.to_string(), key: key.clone() });
        }
        let p = Reader { identity, params };
        Ok(match identity {
            "lemma31" => Check::Lemma31 {
                a: p.complex("a")?,
                b: p.complex("b")?,
                c: p.complex("c")?,
                mu: p.complex("mu")?,
                x: p.real("x")?,
            },
            "lemma32" => Check::Lemma32 {
                a: p.complex("a")?,
                b: p.complex("b")?,
                c: p.complex("c")?,
                nu: p.complex("nu")?,
                x: p.real("x")?,
            },
            "key_lemma" => Check::KeyLemma {
                a: p.complex("a")?,
                b: p.complex("b")?,
                c: p.complex("c")?,
                mu: p.complex("mu")?,
                nu: p.complex("nu")?,
                x: p.real("x")?,
                variant: match params.get("variant") {
                    None => KeyLemmaVariant::Plain,
                    Some(_) => KeyLemmaVariant::parse(p.text("variant")?).ok_or(bad("variant", "plain or tilde"))?,
                },
            },
            "quadratic_transform" => {
                Check::QuadraticTransform { n: p.int("n")?, lambda: p.complex("lambda")?, r: p.real("r")? }
            }
            "recurrence" => Check::Recurrence { n: p.int("n")?, lambda: p.complex("lambda")?, r: p.real("r")? },
            "closed_form" => Check::ClosedForm { m: p.int("m")?, lambda: p.complex("lambda")?, r: p.real("r")? },
            "transform" => Check::Transform {
                dim_n: p.int("dim_n")?,
                dim_z: p.int("dim_z")?,
                lambda: p.complex("lambda")?,
                r: p.real("r")?,
            },
            "bundle_transform" => Check::BundleTransform {
                dim_n: p.int("dim_n")?,
                dim_z: p.int("dim_z")?,
                tau: p.real("tau")?,
                lambda: p.complex("lambda")?,
                r: p.real("r")?,
            },
            "jacobi_ode" => Check::JacobiOde {
                target: match p.text("target")? {
                    "na" => OdeSpec::Na { dim_n: p.int("dim_n")?, dim_z: p.int("dim_z")? },
                    "hyperbolic" => OdeSpec::Hyperbolic { n: p.int("n")? },
                    "spherical" => OdeSpec::Spherical { n: p.int("n")? },
                    _ => return Err(bad("target", "na, hyperbolic or spherical")),
                },
                lambda: p.complex("lambda")?,
                r: p.real("r")?,
            },
            _ => unreachable!("identity validated by allowed_keys"),
        })
    }

    pub fn identity(&self) -> &'static str {
        match self {
            Check::Lemma31 { .. } => "lemma31",
            Check::Lemma32 { .. } => "lemma32",
            Check::KeyLemma { .. } => "key_lemma",
            Check::QuadraticTransform { .. } => "quadratic_transform",
            Check::Recurrence { .. } => "recurrence",
            Check::ClosedForm { .. } => "closed_form",
            Check::Transform { .. } => "transform",
            Check::BundleTransform { .. } => "bundle_transform",
            Check::JacobiOde { .. } => "jacobi_ode",
        }
    }

    /// Input parameters, keyed as in [`Check::from_params`].
    pub fn params(&self) -> BTreeMap<String, ParamValue> {
        let mut p: Vec<(&str, ParamValue)> = match *self {
            Check::Lemma31 { a, b, c, mu, x } => {
                vec![("a", a.into()), ("b", b.into()), ("c", c.into()), ("mu", mu.into()), ("x", x.into())]
            }
            Check::Lemma32 { a, b, c, nu, x } => {
                vec![("a", a.into()), ("b", b.into()), ("c", c.into()), ("nu", nu.into()), ("x", x.into())]
            }
            Check::KeyLemma { a, b, c, mu, nu, x, variant } => vec![
                ("a", a.into()),
                ("b", b.into()),
                ("c", c.into()),
                ("mu", mu.into()),
                ("nu", nu.into()),
                ("x", x.into()),
                ("variant", variant.as_str().into()),
            ],
            Check::QuadraticTransform { n, lambda, r } | Check::Recurrence { n, lambda, r } => {
                vec![("n", n.into()), ("lambda", lambda.into()), ("r", r.into())]
            }
            Check::ClosedForm { m, lambda, r } => vec![("m", m.into()), ("lambda", lambda.into()), ("r", r.into())],
            Check::Transform { dim_n, dim_z, lambda, r } => {
                vec![("dim_n", dim_n.into()), ("dim_z", dim_z.into()), ("lambda", lambda.into()), ("r", r.into())]
            }
            Check::BundleTransform { dim_n, dim_z, tau, lambda, r } => vec![
                ("dim_n", dim_n.into()),
                ("dim_z", dim_z.into()),
                ("tau", tau.into()),
                ("lambda", lambda.into()),
                ("r", r.into()),
            ],
            Check::JacobiOde { target, lambda, r } => {
                let mut v = match target {
                    OdeSpec::Na { dim_n, dim_z } => {
                        vec![("target", "na".into()), ("dim_n", dim_n.into()), ("dim_z", dim_z.into())]
                    }
                    OdeSpec::Hyperbolic { n } => vec![("target", "hyperbolic".into()), ("n", n.into())],
                    OdeSpec::Spherical { n } => vec![("target", "spherical".into()), ("n", n.into())],
                };
                v.push(("lambda", lambda.into()));
                v.push(("r", r.into()));
                v
            }
        };
        p.drain(..).map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// Runs the check. Invalid descriptors or spectral parameters give a
    /// skipped report rather than an error.
    pub fn run(&self, tol: f64) -> IdentityReport {
        match self.try_run(tol) {
            Ok(report) => report,
            Err(e) => IdentityReport::skipped(self.identity(), self.params(), tol, &e),
        }
    }

    fn try_run(&self, tol: f64) -> Result<IdentityReport> {
        Ok(match *self {
            Check::Lemma31 { a, b, c, mu, x } => check_lemma31(a, b, c, mu, x, tol),
            Check::Lemma32 { a, b, c, nu, x } => check_lemma32(a, b, c, nu, x, tol),
            Check::KeyLemma { a, b, c, mu, nu, x, variant } => check_key_lemma(a, b, c, mu, nu, x, tol, variant),
            Check::QuadraticTransform { n, lambda, r } => {
                check_quadratic_transform(n, SpectralParam::new(lambda)?, r, tol)
            }
            Check::Recurrence { n, lambda, r } => check_recurrence(n, SpectralParam::new(lambda)?, r, tol),
            Check::ClosedForm { m, lambda, r } => check_closed_form(m, SpectralParam::new(lambda)?, r, tol),
            Check::Transform { dim_n, dim_z, lambda, r } => {
                check_transform(SpaceDescriptor::new(dim_n, dim_z)?, SpectralParam::new(lambda)?, r, tol)
            }
            Check::BundleTransform { dim_n, dim_z, tau, lambda, r } => check_bundle_transform(
                SpaceDescriptor::new(dim_n, dim_z)?,
                BundleParam::new(tau)?,
                SpectralParam::new(lambda)?,
                r,
                tol,
            ),
            Check::JacobiOde { target, lambda, r } => {
                let target = match target {
                    OdeSpec::Na { dim_n, dim_z } => OdeTarget::Na(SpaceDescriptor::new(dim_n, dim_z)?),
                    OdeSpec::Hyperbolic { n } => OdeTarget::Hyperbolic(n),
                    OdeSpec::Spherical { n } => OdeTarget::Spherical(n),
                };
                check_jacobi_ode(target, SpectralParam::new(lambda)?, r, tol)
            }
        })
    }
}

/// A check together with the tolerance it is judged at.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub check: Check,
    pub tolerance: f64,
}

impl Case {
    pub fn run(&self) -> IdentityReport {
        self.check.run(self.tolerance)
    }
}

/// One identity over a parameter grid.
///
/// Cases are every `points` entry (default: one empty point) merged with every
/// combination from `grid`. Keys appearing in both are an error.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridGroup {
    pub identity: String,
    pub tolerance: f64,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "BTreeMap::is_empty"))]
    pub grid: BTreeMap<String, Vec<ParamValue>>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub points: Vec<BTreeMap<String, ParamValue>>,
}

impl GridGroup {
    pub fn new(identity: &str, tolerance: f64) -> Self {
        Self { identity: identity.to_string(), tolerance, ..Self::default() }
    }

    /// Adds a cartesian axis.
    pub fn axis<V: Into<ParamValue>>(mut self, key: &str, values: impl IntoIterator<Item = V>) -> Self {
        self.grid.insert(key.to_string(), values.into_iter().map(Into::into).collect());
        self
    }

    /// Adds an explicit point.
    pub fn point<const N: usize>(mut self, entries: [(&str, ParamValue); N]) -> Self {
        self.points.push(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
        self
    }

    pub fn cases(&self) -> core::result::Result<Vec<Case>, CheckSpecError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CheckSpecError::BadTolerance);
        }
        let mut combos: Vec<BTreeMap<String, ParamValue>> =
            if self.points.is_empty() { vec![BTreeMap::new()] } else { self.points.clone() };
        for (key, values) in &self.grid {
            let mut next = Vec::with_capacity(combos.len() * values.len());
            for combo in &combos {
                if combo.contains_key(key) {
                    return Err(CheckSpecError::UnknownKey { identity: self.identity.clone(), key: key.clone() });
                }
                for v in values {
                    let mut c = combo.clone();
                    c.insert(key.clone(), v.clone());
                    next.push(c);
                }
            }
            combos = next;
        }
        combos
            .iter()
            .map(|p| Ok(Case { check: Check::from_params(&self.identity, p)?, tolerance: self.tolerance }))
            .collect()
    }
}

/// A list of [`GridGroup`]s.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridConfig {
    pub groups: Vec<GridGroup>,
}

/// Spectral parameters of the standard grid.
pub fn standard_lambdas() -> [Complex64; 5] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(2.0, 0.5),
        Complex64::new(0.3, 1.0),
        Complex64::new(0.0, 3.0),
    ]
}

/// Radii of the standard grid.
pub const STANDARD_RADII: [f64; 6] = [0.1, 0.3, 0.5, 1.0, 2.0, 5.0];

/// Spaces used for transform certification: `(dim N, dim Z)`.
pub const TRANSFORM_SPACES: [(u32, u32); 4] = [(3, 1), (5, 1), (7, 3), (15, 7)];

/// Radii used for transform certification.
pub const TRANSFORM_RADII: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

fn c(re: f64, im: f64) -> ParamValue {
    Complex64::new(re, im).into()
}

fn r(v: f64) -> ParamValue {
    v.into()
}

impl GridConfig {
    /// Every established identity over its certification grid. The bundle
    /// transform appears only at `τ = 2β`, where it reduces to the NA case.
    pub fn default_suite() -> Self {
        let lambdas = standard_lambdas();
        let mut groups = vec![
            GridGroup::new("lemma31", 1e-9)
                .point([("a", r(1.0)), ("b", r(1.0)), ("c", r(2.0)), ("mu", r(1.0)), ("x", r(2.0))])
                .point([("a", r(2.0)), ("b", r(1.0)), ("c", r(2.0)), ("mu", r(1.0)), ("x", r(2.0))]),
            GridGroup::new("lemma31", 1e-6)
                .axis("a", [c(1.0, 0.0), c(0.5, 0.5)])
                .axis("b", [c(1.0, 0.0), c(2.5, 0.0)])
                .axis("c", [c(2.0, 0.0), c(3.5, -1.0)])
                .axis("mu", [c(0.5, 0.0), c(1.3, 0.2)])
                .axis("x", [2.0, 3.0]),
            GridGroup::new("lemma32", 1e-9).point([
                ("a", r(1.0)),
                ("b", r(1.0)),
                ("c", r(2.0)),
                ("nu", r(1.0)),
                ("x", r(2.0)),
            ]),
            GridGroup::new("lemma32", 1e-6)
                .axis("a", [c(1.0, 0.0), c(0.5, 0.5)])
                .axis("b", [c(2.0, 0.0), c(1.5, 0.0)])
                .axis("c", [c(3.0, 0.0), c(4.0, 0.5)])
                .axis("nu", [c(1.0, 0.0), c(0.7, 0.0)])
                .axis("x", [2.0, 3.0]),
            GridGroup::new("key_lemma", 1e-9)
                .point([("a", r(1.5)), ("b", r(1.0)), ("c", r(2.0)), ("mu", r(0.5)), ("nu", r(0.5)), ("x", r(2.0))])
                .axis("variant", ["plain", "tilde"]),
            GridGroup::new("key_lemma", 1e-6)
                .axis("variant", ["plain", "tilde"])
                .axis("a", [c(1.0, 0.0), c(1.5, 0.0), c(0.8, 0.3)])
                .axis("b", [c(1.0, 0.0), c(0.6, 0.0)])
                .axis("c", [c(2.0, 0.0), c(2.5, 0.5)])
                .axis("mu", [0.5])
                .axis("nu", [c(0.5, 0.0), c(1.2, 0.0)])
                .axis("x", [3.0]),
            GridGroup::new("key_lemma", 1e-8)
                .point([("a", r(1.5)), ("b", r(1.0)), ("c", r(2.0)), ("mu", r(0.5)), ("nu", r(0.0)), ("x", r(2.5))])
                .axis("variant", ["plain", "tilde"]),
            GridGroup::new("quadratic_transform", 1e-8)
                .axis("n", 1u32..=9)
                .axis("lambda", lambdas)
                .axis("r", STANDARD_RADII),
            GridGroup::new("recurrence", 1e-10)
                .axis("n", (0u32..=8).map(|m| 2 * m + 1))
                .axis("lambda", lambdas)
                .axis("r", STANDARD_RADII),
            GridGroup::new("recurrence", 1e-4)
                .axis("n", [2u32, 4, 6])
                .axis("lambda", lambdas)
                .axis("r", STANDARD_RADII),
            GridGroup::new("closed_form", 1e-9)
                .axis("m", 1u32..=5)
                .axis("lambda", lambdas)
                .axis("r", STANDARD_RADII),
        ];
        let mut transform = GridGroup::new("transform", 1e-6).axis("lambda", lambdas).axis("r", TRANSFORM_RADII);
        for (n, z) in TRANSFORM_SPACES {
            transform = transform.point([("dim_n", n.into()), ("dim_z", z.into())]);
        }
        groups.push(transform);
        let mut bundle = GridGroup::new("bundle_transform", 1e-6).axis("lambda", lambdas).axis("r", [0.5, 1.0, 2.0]);
        for (n, z) in [(7u32, 3u32), (9, 3), (15, 7)] {
            bundle = bundle.point([("dim_n", n.into()), ("dim_z", z.into()), ("tau", r(f64::from(z) - 1.0))]);
        }
        groups.push(bundle);
        let mut ode = GridGroup::new("jacobi_ode", 1e-4).axis("lambda", lambdas).axis("r", STANDARD_RADII);
        for (n, z) in TRANSFORM_SPACES {
            ode = ode.point([("target", "na".into()), ("dim_n", n.into()), ("dim_z", z.into())]);
        }
        for n in [2u32, 3, 4, 5] {
            ode = ode.point([("target", "hyperbolic".into()), ("n", n.into())]);
        }
        for n in [2u32, 3, 5] {
            ode = ode.point([("target", "spherical".into()), ("n", n.into())]);
        }
        groups.push(ode);
        Self { groups }
    }

    pub fn cases(&self) -> core::result::Result<Vec<Case>, CheckSpecError> {
        let mut out = Vec::new();
        for g in &self.groups {
            out.extend(g.cases()?);
        }
        Ok(out)
    }
}

/// Sorts reports by identity, then by parameters.
pub fn sort_reports(reports: &mut [IdentityReport]) {
    reports.sort_by_cached_key(IdentityReport::sort_key);
}

/// Runs every case in turn and returns the reports in canonical order.
pub fn run_suite(cases: &[Case]) -> Vec<IdentityReport> {
    let mut reports: Vec<IdentityReport> = cases.iter().map(Case::run).collect();
    sort_reports(&mut reports);
    reports
}

/// Pass/fail/skip counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

pub fn summarize(reports: &[IdentityReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}
