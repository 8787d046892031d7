//! Verification of the asymptotic expansions in each regime.
//!
//! Run with `cargo run --release --example verify_regimes`.

use biflogis::cli::summary;
use biflogis::nonlocal::ProblemParams;
use biflogis::verify::{default_alpha_grid, run_verification, ReadingChoice};

fn main() -> biflogis::Result<()> {
    for (p, q, a1, a2) in [(5.0, 2.0, 0.5, 0.5), (3.0, 2.0, 0.5, 0.5), (2.0, 2.0, 1.0, 1.0)] {
        let params = ProblemParams::new(p, q, a1, a2)?;
        let report = run_verification(&params, &default_alpha_grid(params.regime()), ReadingChoice::Both)?;
        println!("p = {p}, q = {q}, a1 = {a1}, a2 = {a2}");
        print!("{}", summary(&report));
        println!();
    }
    Ok(())
}
