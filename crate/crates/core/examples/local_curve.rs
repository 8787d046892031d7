//! The local curve γ(d) from the bifurcation point to large amplitudes,
//! against its small- and large-d expansions.
//!
//! Run with `cargo run --release --example local_curve`.

use std::f64::consts::PI;

use biflogis::constants::{compute_a, compute_c1};
use biflogis::local_logistic::{point_from_gamma, solve_for_d, LocalParams};

fn main() -> biflogis::Result<()> {
    let p = 5.0;
    let params = LocalParams::new(p)?;
    let a3 = compute_a(p, 2.0, &params.quad)?.a3;
    let c1 = compute_c1(p, &params.quad)?;

    println!("p = {p}: A3 = {a3:.10}, C1 = {c1:.10}");
    println!(
        "{:>10} {:>14} {:>24} {:>14} {:>14}",
        "d", "k", "gamma", "small-d", "large-d"
    );
    for d in [1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0] {
        let pt = solve_for_d(d, &params)?;
        // √γ ≈ π + A3 d^{p-1} and γ ≈ d^{p-1} + C1 d^{(p-1)/2}.
        let small = (PI + a3 * d.powf(p - 1.0)).powi(2);
        let large = d.powf(p - 1.0) + c1 * d.powf((p - 1.0) / 2.0);
        println!(
            "{d:>10.0e} {:>14.8e} {:>24.16e} {:>14.3e} {:>14.3e}",
            pt.k,
            pt.gamma,
            (small - pt.gamma).abs() / pt.gamma,
            (large - pt.gamma).abs() / pt.gamma
        );
    }

    let pt = point_from_gamma(50.0, &params)?;
    println!(
        "gamma = 50: k = {:.12}, d = {:.12}, ‖w‖_4 = {:.12}, T = {:.15}",
        pt.k,
        pt.d,
        pt.q_norm(4.0, &params)?,
        pt.time_map(&params)?
    );
    Ok(())
}
