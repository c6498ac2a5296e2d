//! Registry of evaluable functions.

use std::collections::BTreeMap;

use harmonic_kernels::closedform::odd_resolvent;
use harmonic_kernels::kernels::{
    bundle_resolvent, bundle_resolvent_consistent, hyperbolic_resolvent, hyperbolic_resolvent_half, na_resolvent,
    spherical_function, transform_kernel, BundleParam, SpaceDescriptor, SpectralParam,
};
use harmonic_kernels::quadrature::integrate_transform;
use harmonic_kernels::specfun::{gamma, hyp2f1, hyp2f1_negative, pochhammer, Hyp2F1Args};
use harmonic_kernels::verify::ParamValue;
use harmonic_kernels::{Complex64, Error, Result};

/// How a parameter value is read from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Real,
    Complex,
    Name(&'static [&'static str]),
}

impl Kind {
    pub fn describe(self) -> String {
        match self {
            Kind::Int => "a nonnegative integer".into(),
            Kind::Real => "a finite real number".into(),
            Kind::Complex => "a complex number such as 2, 1.5i or 2-0.5i".into(),
            Kind::Name(names) => format!("one of {}", names.join(", ")),
        }
    }
}

#[derive(Debug)]
pub struct Target {
    pub name: &'static str,
    pub required: &'static [(&'static str, Kind)],
    pub optional: &'static [(&'static str, Kind)],
    pub summary: &'static str,
}

impl Target {
    /// Whether `r` is a parameter, i.e. whether the target can be swept.
    pub fn has_radius(&self) -> bool {
        self.required.iter().any(|(k, _)| *k == "r")
    }
}

const C: Kind = Kind::Complex;
const R: Kind = Kind::Real;
const N: Kind = Kind::Int;
const CONSTANTS: Kind = Kind::Name(&["printed", "consistent"]);

pub const TARGETS: &[Target] = &[
    Target { name: "gamma", required: &[("z", C)], optional: &[], summary: "Γ(z)" },
    Target { name: "pochhammer", required: &[("a", C), ("k", N)], optional: &[], summary: "(a)_k" },
    Target {
        name: "hyp2f1",
        required: &[("a", C), ("b", C), ("c", C), ("z", R)],
        optional: &[],
        summary: "₂F₁(a, b; c; z), z ≤ 0.999",
    },
    Target {
        name: "odd-resolvent",
        required: &[("m", N), ("lambda", C), ("r", R)],
        optional: &[],
        summary: "closed-form resolvent on H^{2m+1}",
    },
    Target {
        name: "hyperbolic-resolvent",
        required: &[("n", N), ("lambda", C), ("r", R)],
        optional: &[],
        summary: "resolvent on H^n, full argument",
    },
    Target {
        name: "hyperbolic-resolvent-half",
        required: &[("n", N), ("lambda", C), ("r", R)],
        optional: &[],
        summary: "resolvent on H^n, half argument",
    },
    Target {
        name: "spherical-function",
        required: &[("n", N), ("lambda", C), ("r", R)],
        optional: &[],
        summary: "spherical function on H^n",
    },
    Target {
        name: "na-resolvent",
        required: &[("dim_n", N), ("dim_z", N), ("lambda", C), ("r", R)],
        optional: &[],
        summary: "resolvent on the NA space (dim N, dim Z)",
    },
    Target {
        name: "bundle-resolvent",
        required: &[("dim_n", N), ("dim_z", N), ("tau", R), ("lambda", C), ("r", R)],
        optional: &[("constant", CONSTANTS)],
        summary: "bundle resolvent; --constant printed (default) or consistent",
    },
    Target {
        name: "transform-kernel",
        required: &[("dim_n", N), ("dim_z", N), ("r", R), ("rho", R)],
        optional: &[],
        summary: "transform weight W(r, rho)",
    },
    Target {
        name: "transform-integral",
        required: &[("dim_n", N), ("dim_z", N), ("lambda", C), ("r", R)],
        optional: &[("tol", R)],
        summary: "the transform of the odd hyperbolic resolvent, by quadrature",
    },
];

pub fn find(name: &str) -> Option<&'static Target> {
    let name = name.replace('_', "-");
    let name = if name == "spherical" { "spherical-function".to_string() } else { name };
    TARGETS.iter().find(|t| t.name == name)
}

/// Default relative tolerance of `transform-integral`.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

struct Get<'a>(&'a BTreeMap<String, ParamValue>);

impl Get<'_> {
    // Values were checked against the target's kinds when parsed.
    fn c(&self, key: &str) -> Complex64 {
        self.0[key].as_complex().expect("validated complex")
    }

    fn r(&self, key: &str) -> f64 {
        self.0[key].as_real().expect("validated real")
    }

    fn n(&self, key: &str) -> u32 {
        self.0[key].as_u32().expect("validated integer")
    }

    fn space(&self) -> Result<SpaceDescriptor> {
        SpaceDescriptor::new(self.n("dim_n"), self.n("dim_z"))
    }

    fn lambda(&self) -> Result<SpectralParam> {
        SpectralParam::new(self.c("lambda"))
    }
}

/// Evaluates `target` at validated parameters.
pub fn evaluate(target: &Target, params: &BTreeMap<String, ParamValue>) -> Result<Complex64> {
    let p = Get(params);
    match target.name {
        "gamma" => gamma(p.c("z")),
        "pochhammer" => Ok(pochhammer(p.c("a"), p.n("k"))),
        "hyp2f1" => {
            let z = p.r("z");
            if z < 0.0 {
                hyp2f1_negative(p.c("a"), p.c("b"), p.c("c"), z)
            } else {
                hyp2f1(Hyp2F1Args::new(p.c("a"), p.c("b"), p.c("c"), z)?)
            }
        }
        "odd-resolvent" => odd_resolvent(p.n("m"), p.c("lambda"), p.r("r")),
        "hyperbolic-resolvent" => hyperbolic_resolvent(p.n("n"), p.lambda()?, p.r("r")),
        "hyperbolic-resolvent-half" => hyperbolic_resolvent_half(p.n("n"), p.lambda()?, p.r("r")),
        "spherical-function" => spherical_function(p.n("n"), p.c("lambda"), p.r("r")),
        "na-resolvent" => na_resolvent(p.space()?, p.lambda()?, p.r("r")),
        "bundle-resolvent" => {
            let tau = BundleParam::new(p.r("tau"))?;
            match params.get("constant").and_then(ParamValue::as_text) {
                Some("consistent") => bundle_resolvent_consistent(p.space()?, tau, p.lambda()?, p.r("r")),
                _ => bundle_resolvent(p.space()?, tau, p.lambda()?, p.r("r")),
            }
        }
        "transform-kernel" => Ok(Complex64::new(transform_kernel(p.space()?, p.r("r"), p.r("rho"))?, 0.0)),
        "transform-integral" => {
            let tol = params.get("tol").and_then(ParamValue::as_real).unwrap_or(DEFAULT_QUAD_TOL);
            let q = integrate_transform(p.space()?, p.lambda()?, p.r("r"), tol)?;
            if q.converged {
                Ok(q.value)
            } else {
                Err(Error::NonConvergence { estimate: q.error_estimate })
            }
        }
        other => unreachable!("target '{other}' missing from evaluate"),
    }
}
