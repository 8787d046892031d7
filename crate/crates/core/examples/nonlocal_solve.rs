//! λ(α) in the three regimes of the reaction exponent.
//!
//! Run with `cargo run --release --example nonlocal_solve`.

use biflogis::nonlocal::{invariant_defects, residual_check, solve_alpha, ProblemParams};

fn main() -> biflogis::Result<()> {
    for (p, q, a1, a2) in [(5.0, 2.0, 1.0, 0.0), (3.0, 2.0, 0.5, 0.5), (2.0, 3.0, 1.0, 1.0)] {
        let params = ProblemParams::new(p, q, a1, a2)?;
        println!("p = {p}, q = {q}, a1 = {a1}, a2 = {a2} ({:?})", params.regime());
        for alpha in [1.0, 10.0, 100.0, 1000.0] {
            let sol = solve_alpha(alpha, &params)?;
            println!(
                "  α = {alpha:>6}: λ = {:.10e}, λ/α² = {:.10}, k = {:.4e}, h = {:.4e}, residual {:.1e}, invariants {:.1e}",
                sol.lambda,
                sol.lambda / (alpha * alpha),
                sol.k(),
                sol.h,
                residual_check(&sol, 41, &params)?,
                invariant_defects(&sol, &params).max()
            );
        }
    }
    Ok(())
}
