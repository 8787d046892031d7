//! Samples of the nonlocal solution u(x), written as CSV to standard output.
//!
//! Run with `cargo run --release --example profile > profile.csv`.

use biflogis::local_logistic::sample_profile;
use biflogis::nonlocal::{solve_alpha, ProblemParams};

fn main() -> biflogis::Result<()> {
    let params = ProblemParams::new(5.0, 2.0, 1.0, 0.0)?;
    println!("alpha,x,u");
    for alpha in [1.0, 10.0, 100.0] {
        let sol = solve_alpha(alpha, &params)?;
        let profile = sample_profile(&sol.local, 41, &params.local())?;
        for (x, w) in profile.nodes {
            println!("{alpha},{x:.10},{:.10e}", sol.h * w);
        }
    }
    Ok(())
}
