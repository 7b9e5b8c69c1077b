use clap::Parser;
use wandering_lab::cli::{run, Cli};

/// Worker-count cap honored before any parallel work starts; invalid values
/// fall back to machine parallelism with a warning.
const THREADS_ENV: &str = "WANDERING_LAB_THREADS";

fn main() {
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        match raw.trim().parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                {
                    eprintln!("warning: could not apply {THREADS_ENV}={threads}: {e}");
                }
            }
            _ => eprintln!("warning: ignoring invalid {THREADS_ENV}={raw:?}"),
        }
    }
    std::process::exit(run(Cli::parse()));
}
