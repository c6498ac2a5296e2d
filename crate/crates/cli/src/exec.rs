//! Running a validated [`CliConfig`].

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::thread;

use harmonic_kernels::verify::{sort_reports, summarize, Case, IdentityReport, Status};
use harmonic_kernels::Error;

use crate::args::{CliConfig, Format, Job};
use crate::eval::evaluate;
use crate::format::{self, SweepRow};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Environment variable capping suite worker threads.
pub const THREADS_VAR: &str = "HARMONIC_KERNELS_THREADS";

/// Runs `config` and returns the process exit code.
pub fn execute(config: &CliConfig) -> u8 {
    match run(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_FAIL, message: format!("write failed: {e}") }
    }
}

fn eval_failure(e: &Error) -> Failure {
    // bad input reaching a domain guard is a usage problem, anything else numerical
    let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
    Failure { code, message: format!("{} ({})", e, e.kind()) }
}

fn run(config: &CliConfig) -> Result<u8, Failure> {
    match &config.job {
        Job::Eval { target, params } => {
            let value = evaluate(target, params).map_err(|e| eval_failure(&e))?;
            println!("{}", format::complex(value));
            Ok(EXIT_OK)
        }
        Job::Sweep { target, params, range } => {
            let mut worst = EXIT_OK;
            let mut rows: Vec<SweepRow> = Vec::with_capacity(range.steps);
            for r in range.radii() {
                let mut p = params.clone();
                p.insert("r".into(), r.into());
                match evaluate(target, &p) {
                    Ok(v) => rows.push((r, Some(v))),
                    Err(e) => {
                        eprintln!("r = {r}: {e}");
                        worst = worst.max(eval_failure(&e).code);
                        rows.push((r, None));
                    }
                }
            }
            emit(config, |out, fmt| match fmt {
                Format::Json => format::write_sweep_json(out, &rows),
                Format::Csv => format::write_sweep_csv(out, &rows),
            })?;
            Ok(worst)
        }
        Job::Verify(case) => report(config, vec![case.run()]),
        Job::Suite(cases) => {
            let threads = thread_count().map_err(|message| Failure { code: EXIT_USAGE, message })?;
            report(config, run_parallel(cases, threads))
        }
    }
}

fn report(config: &CliConfig, reports: Vec<IdentityReport>) -> Result<u8, Failure> {
    emit(config, |out, fmt| match fmt {
        Format::Json => format::write_reports_json(out, &reports),
        Format::Csv => format::write_reports_csv(out, &reports),
    })?;
    let s = summarize(&reports);
    eprintln!("{} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
    Ok(exit_code(&reports))
}

/// A failed check wins, then a numerical error, then any other skip.
pub fn exit_code(reports: &[IdentityReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(IdentityReport::is_numerical_error) {
        EXIT_NUMERICAL
    } else if reports.iter().any(|r| r.status == Status::Skipped) {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

fn emit<F>(config: &CliConfig, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write, Format) -> io::Result<()>,
{
    match &config.output_path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure { code: EXIT_FAIL, message: format!("cannot create {}: {e}", path.display()) })?;
            let mut out = BufWriter::new(file);
            write(&mut out, config.format)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out, config.format)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn thread_count() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<NonZeroUsize>()
            .map(NonZeroUsize::get)
            .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got '{v}'")),
        Err(std::env::VarError::NotPresent) => Ok(thread::available_parallelism().map_or(1, NonZeroUsize::get)),
        Err(e) => Err(format!("{THREADS_VAR}: {e}")),
    }
}

/// Runs `cases` on up to `threads` workers, then restores canonical order.
/// Worker `k` takes cases `k, k + threads, …`, which spreads slow groups.
pub fn run_parallel(cases: &[Case], threads: usize) -> Vec<IdentityReport> {
    let threads = threads.clamp(1, cases.len().max(1));
    let mut reports: Vec<IdentityReport> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| s.spawn(move || cases.iter().skip(k).step_by(threads).map(Case::run).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("check panicked")).collect()
    });
    sort_reports(&mut reports);
    reports
}
