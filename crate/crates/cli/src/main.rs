//! Command-line driver: run selections on CSV files, verify the criterion
//! identities, benchmark the fast path against the definition-based
//! search, and drive the synthetic recovery experiments.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 verification
//! failure.

mod bench_cmd;
mod report;
mod select_cmd;
mod synth_cmd;
mod verify_cmd;

use clap::{Parser, Subcommand};
use socc_core::Error;

#[derive(Parser)]
#[command(
    name = "socc",
    version,
    about = "Greedy feature selection ranked by squared orthogonal correlation"
)]
struct Cli {
    /// Worker threads for candidate scoring and trials (defaults to the
    /// SOCC_THREADS environment variable, then to all hardware threads).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select features from a CSV file and report per-step criterion gains
    Select(select_cmd::SelectArgs),
    /// Check the criterion identities on randomized instances
    Verify(verify_cmd::VerifyArgs),
    /// Time the fast path against the definition-based greedy search
    Bench(bench_cmd::BenchArgs),
    /// Run the synthetic feature-recovery experiments
    Synth(synth_cmd::SynthArgs),
}

fn init_threads(requested: Option<usize>) {
    let from_env = std::env::var("SOCC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = requested.or(from_env) {
        if n >= 1 {
            // Ignore the error if a pool already exists (tests).
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => 1,
        Error::Io(_) | Error::Data(_) | Error::Numerical(_) | Error::GuardExceeded(_) => 2,
    }
}

/// Restore default SIGPIPE handling so piping into `head` and friends
/// terminates the process instead of panicking on a closed stdout.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    init_threads(cli.threads);
    let outcome = match cli.command {
        Command::Select(args) => select_cmd::run(&args),
        Command::Verify(args) => verify_cmd::run(&args),
        Command::Bench(args) => bench_cmd::run(&args),
        Command::Synth(args) => synth_cmd::run(&args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
