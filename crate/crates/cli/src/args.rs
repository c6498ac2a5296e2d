//! Command-line parsing.
//!
//! clap handles the subcommand and target; the rest of the line is read as
//! `--key value` (or `--key=value`) pairs, with kebab-case keys mapped to the
//! snake_case names used by the library.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use harmonic_kernels::parse::parse_complex;
use harmonic_kernels::verify::{Case, Check, GridConfig, ParamValue, IDENTITIES};

use crate::eval::{self, Kind, Target};

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    /// Help or version text; not an error for the caller.
    #[error("{0}")]
    Display(String),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> UsageError {
    UsageError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Verify,
    Sweep,
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Inclusive, evenly spaced radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn radii(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.r_min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.r_min + (self.r_max - self.r_min) * k as f64 / last).collect()
    }
}

/// What to run.
#[derive(Debug, Clone)]
pub enum Job {
    Eval { target: &'static Target, params: BTreeMap<String, ParamValue> },
    Verify(Case),
    Sweep { target: &'static Target, params: BTreeMap<String, ParamValue>, range: SweepRange },
    Suite(Vec<Case>),
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    /// Function or identity name, in library spelling; `default` or the config path for `suite`.
    pub target: String,
    pub job: Job,
    pub tol: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

const TOP_HELP: &str = "\
Targets for eval and sweep:
  gamma --z                          pochhammer --a --k
  hyp2f1 --a --b --c --z             odd-resolvent --m --lambda --r
  hyperbolic-resolvent --n --lambda --r
  hyperbolic-resolvent-half --n --lambda --r
  spherical-function --n --lambda --r
  na-resolvent --dim-n --dim-z --lambda --r
  bundle-resolvent --dim-n --dim-z --tau --lambda --r [--constant printed|consistent]
  transform-kernel --dim-n --dim-z --r --rho
  transform-integral --dim-n --dim-z --lambda --r [--tol]

Identities for verify:
  lemma31 --a --b --c --mu --x       lemma32 --a --b --c --nu --x
  key-lemma --a --b --c --mu --nu --x [--variant plain|tilde]
  quadratic-transform --n --lambda --r
  recurrence --n --lambda --r        closed-form --m --lambda --r
  transform --dim-n --dim-z --lambda --r
  bundle-transform --dim-n --dim-z --tau --lambda --r
  jacobi-ode --target na --dim-n --dim-z --lambda --r
  jacobi-ode --target hyperbolic|spherical --n --lambda --r

Complex values: 2, 1.5i, 2+0.5i, 0.3-1e-2i.
Exit codes: 0 all pass, 1 a check failed, 2 usage error, 3 numerical error.
HARMONIC_KERNELS_THREADS caps the number of suite worker threads.";

#[derive(Parser, Debug)]
#[command(name = "harmonic-kernels", version, about = "Resolvent kernels on harmonic NA spaces", after_help = TOP_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Print one value as re±im i.
    Eval(Targeted),
    /// Check one identity at one parameter point and write its report.
    Verify(Targeted),
    /// Tabulate a kernel over r (--r-min, --r-max, --steps).
    Sweep(Targeted),
    /// Run a grid of checks (--config default|<path to JSON>).
    Suite(Rest),
}

#[derive(Args, Debug)]
struct Targeted {
    target: String,
    #[command(flatten)]
    rest: Rest,
}

#[derive(Args, Debug)]
struct Rest {
    /// `--key value` pairs.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 0.., value_name = "--KEY VALUE")]
    pairs: Vec<String>,
}

fn key_value_pairs(tokens: &[String]) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    let mut it = tokens.iter();
    while let Some(tok) = it.next() {
        let Some(flag) = tok.strip_prefix("--") else {
            return Err(invalid(format!("unexpected argument '{tok}', expected --key value")));
        };
        let (key, value) = match flag.split_once('=') {
            Some((k, v)) => (k, v.to_string()),
            None => {
                let v = it.next().ok_or_else(|| invalid(format!("--{flag} needs a value")))?;
                (flag, v.clone())
            }
        };
        if key.is_empty() {
            return Err(invalid("empty option name"));
        }
        let key = key.replace('-', "_");
        if out.insert(key.clone(), value).is_some() {
            return Err(invalid(format!("--{} given twice", key.replace('_', "-"))));
        }
    }
    Ok(out)
}

fn flag(key: &str) -> String {
    format!("--{}", key.replace('_', "-"))
}

fn parse_real(key: &str, raw: &str) -> Result<f64, UsageError> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| invalid(format!("{} must be {}, got '{raw}'", flag(key), Kind::Real.describe())))
}

fn parse_typed(key: &str, raw: &str, kind: Kind) -> Result<ParamValue, UsageError> {
    let bad = || invalid(format!("{} must be {}, got '{raw}'", flag(key), kind.describe()));
    Ok(match kind {
        Kind::Int => ParamValue::from(raw.trim().parse::<u32>().map_err(|_| bad())?),
        Kind::Real => ParamValue::from(parse_real(key, raw)?),
        Kind::Complex => ParamValue::from(parse_complex(raw).map_err(|_| bad())?),
        Kind::Name(names) => {
            if !names.contains(&raw) {
                return Err(bad());
            }
            ParamValue::from(raw)
        }
    })
}

// Untyped value for identity parameters: a number if it parses as one.
fn parse_loose(raw: &str) -> ParamValue {
    parse_complex(raw).map(ParamValue::from).unwrap_or_else(|_| ParamValue::from(raw))
}

struct Options {
    pairs: BTreeMap<String, String>,
}

impl Options {
    fn take(&mut self, key: &str) -> Option<String> {
        self.pairs.remove(key)
    }

    fn take_real(&mut self, key: &str) -> Result<Option<f64>, UsageError> {
        self.take(key).map(|v| parse_real(key, &v)).transpose()
    }

    fn take_format(&mut self) -> Result<Format, UsageError> {
        match self.take("format").as_deref() {
            None | Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(invalid(format!("--format must be json or csv, got '{other}'"))),
        }
    }

    fn take_output(&mut self) -> Result<Option<PathBuf>, UsageError> {
        match self.take("output") {
            Some(p) if p.is_empty() => Err(invalid("--output needs a path")),
            p => Ok(p.map(PathBuf::from)),
        }
    }

    fn take_tol(&mut self) -> Result<Option<f64>, UsageError> {
        match self.take_real("tol")? {
            Some(t) if t <= 0.0 => Err(invalid("--tol must be positive")),
            t => Ok(t),
        }
    }

    /// Typed parameters of an eval/sweep target.
    fn target_params(
        &mut self,
        target: &Target,
        skip: &[&str],
    ) -> Result<BTreeMap<String, ParamValue>, UsageError> {
        let mut out = BTreeMap::new();
        // bad values first, then missing keys
        for &(key, kind) in target.required.iter().chain(target.optional) {
            if skip.contains(&key) {
                continue;
            }
            if let Some(raw) = self.take(key) {
                out.insert(key.to_string(), parse_typed(key, &raw, kind)?);
            }
        }
        if let Some((key, _)) = target.required.iter().find(|(k, _)| !skip.contains(k) && !out.contains_key(*k)) {
            return Err(invalid(format!("{} needs {}", target.name, flag(key))));
        }
        Ok(out)
    }

    fn finish(self, context: &str) -> Result<(), UsageError> {
        match self.pairs.keys().next() {
            None => Ok(()),
            Some(key) => Err(invalid(format!("{context} does not take {}", flag(key)))),
        }
    }
}

/// Validates a command line. `argv[0]` is the program name.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            UsageError::Display(e.to_string())
        }
        clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            invalid("a command is required: eval, verify, sweep or suite")
        }
        _ => invalid(e.render().to_string().trim_start_matches("error: ").trim_end().to_string()),
    })?;
    match cli.command {
        Sub::Eval(t) => parse_eval(t, Command::Eval),
        Sub::Sweep(t) => parse_eval(t, Command::Sweep),
        Sub::Verify(t) => parse_verify(t),
        Sub::Suite(rest) => parse_suite(rest),
    }
}

fn parse_eval(t: Targeted, command: Command) -> Result<CliConfig, UsageError> {
    let target = eval::find(&t.target).ok_or_else(|| {
        let names: Vec<&str> = eval::TARGETS.iter().map(|t| t.name).collect();
        invalid(format!("unknown target '{}'; expected one of {}", t.target, names.join(", ")))
    })?;
    let mut opts = Options { pairs: key_value_pairs(&t.rest.pairs)? };
    let (job, format, output_path) = if command == Command::Sweep {
        if !target.has_radius() {
            return Err(invalid(format!("{} has no r to sweep", target.name)));
        }
        if opts.pairs.contains_key("r") {
            return Err(invalid("sweep takes --r-min, --r-max and --steps instead of --r"));
        }
        let r_min = opts.take_real("r_min")?.ok_or_else(|| invalid("sweep needs --r-min"))?;
        let r_max = opts.take_real("r_max")?.ok_or_else(|| invalid("sweep needs --r-max"))?;
        let steps = match opts.take("steps") {
            Some(s) => s.trim().parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(|| {
                invalid(format!("--steps must be a positive integer, got '{s}'"))
            })?,
            None => return Err(invalid("sweep needs --steps")),
        };
        if !(r_min > 0.0 && r_max >= r_min) {
            return Err(invalid("sweep needs 0 < r-min <= r-max"));
        }
        if steps == 1 && r_max != r_min {
            return Err(invalid("--steps 1 needs r-min = r-max"));
        }
        let format = opts.take_format()?;
        let output = opts.take_output()?;
        let params = opts.target_params(target, &["r"])?;
        (Job::Sweep { target, params, range: SweepRange { r_min, r_max, steps } }, format, output)
    } else {
        let params = opts.target_params(target, &[])?;
        (Job::Eval { target, params }, Format::Json, None)
    };
    let tol = match job {
        Job::Eval { ref params, .. } | Job::Sweep { ref params, .. } => {
            params.get("tol").and_then(ParamValue::as_real)
        }
        _ => None,
    };
    if tol.is_some_and(|t| t <= 0.0) {
        return Err(invalid("--tol must be positive"));
    }
    opts.finish(target.name)?;
    Ok(CliConfig { command, target: target.name.to_string(), job, tol, output_path, format })
}

/// Library spelling of an identity name; hyphens are accepted.
pub fn identity_name(name: &str) -> Option<&'static str> {
    let name = name.replace('-', "_");
    IDENTITIES.iter().copied().find(|&id| id == name)
}

/// Tolerance used by `verify` when `--tol` is absent.
pub const DEFAULT_TOL: f64 = 1e-6;

fn parse_verify(t: Targeted) -> Result<CliConfig, UsageError> {
    let identity = identity_name(&t.target).ok_or_else(|| {
        invalid(format!("unknown identity '{}'; expected one of {}", t.target, IDENTITIES.join(", ")))
    })?;
    let mut opts = Options { pairs: key_value_pairs(&t.rest.pairs)? };
    let tol = opts.take_tol()?;
    let format = opts.take_format()?;
    let output_path = opts.take_output()?;
    let params: BTreeMap<String, ParamValue> = opts.pairs.iter().map(|(k, v)| (k.clone(), parse_loose(v))).collect();
    let check = Check::from_params(identity, &params).map_err(|e| invalid(e.to_string().replace('_', "-")))?;
    let case = Case { check, tolerance: tol.unwrap_or(DEFAULT_TOL) };
    Ok(CliConfig {
        command: Command::Verify,
        target: identity.to_string(),
        job: Job::Verify(case),
        tol,
        output_path,
        format,
    })
}

fn parse_suite(rest: Rest) -> Result<CliConfig, UsageError> {
    let mut opts = Options { pairs: key_value_pairs(&rest.pairs)? };
    let source = opts.take("config").unwrap_or_else(|| "default".into());
    let format = opts.take_format()?;
    let output_path = opts.take_output()?;
    opts.finish("suite")?;
    let config = if source == "default" {
        GridConfig::default_suite()
    } else {
        let text = fs::read_to_string(&source).map_err(|e| invalid(format!("cannot read config '{source}': {e}")))?;
        serde_json::from_str::<GridConfig>(&text).map_err(|e| invalid(format!("config '{source}': {e}")))?
    };
    let cases = config.cases().map_err(|e| invalid(format!("config '{source}': {e}")))?;
    Ok(CliConfig { command: Command::Suite, target: source, job: Job::Suite(cases), tol: None, output_path, format })
}
