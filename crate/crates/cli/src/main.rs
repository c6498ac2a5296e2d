use std::process::ExitCode;

fn main() -> ExitCode {
    harmonic_kernels_cli::run(std::env::args_os())
}
