//! Command-line front end: compute concentration functions, evaluate the
//! box functional and the infinitely divisible bounds, search generator
//! structure, run the invariant suite, and sweep parameters.
//!
//! Exit codes: 0 success, 1 violated verification, 2 input error,
//! 3 unconverged quadrature (best estimate still reported).

mod fmt;
mod inputs;
mod run;

use clap::Parser;

fn main() {
    if let Ok(threads) = std::env::var("ANTICONC_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = run::Cli::parse();
    std::process::exit(run::main_with(cli));
}
