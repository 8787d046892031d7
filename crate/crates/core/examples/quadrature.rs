//! Endpoint-singular integrals with both quadrature rules.
//!
//! Run with `cargo run --release --example quadrature`.

use std::f64::consts::PI;

use biflogis::quadrature::{integrate, integrate_with_complement, QuadRule, QuadSpec};

fn main() -> biflogis::Result<()> {
    let smooth = |x: f64| x.exp() * (3.0 * x).cos();
    let exact = (1f64.exp() * (3f64.cos() + 3.0 * 3f64.sin()) - 1.0) / 10.0;

    for rule in [QuadRule::GaussLegendreAdaptive, QuadRule::DoubleExponential] {
        let spec = QuadSpec::default().with_rule(rule);
        let r = integrate(smooth, 0.0, 1.0, &spec)?;
        println!(
            "{rule:?}: ∫ e^x cos 3x = {:.16} (error {:.1e}, estimate {:.1e}, {} evaluations)",
            r.value,
            (r.value - exact).abs(),
            r.error_estimate,
            r.evaluations
        );
    }

    // ∫_0^1 ds / sqrt(1 - s²) = π/2. Passing the exact complement 1 - s keeps
    // the nodes that crowd the singular endpoint accurate.
    let spec = QuadSpec::default().with_rule(QuadRule::DoubleExponential);
    let r = integrate_with_complement(|s, c| 1.0 / (c * (1.0 + s)).sqrt(), 0.0, 1.0, &spec)?;
    println!(
        "double exponential, arcsine kernel: {:.16} (error {:.1e}, {} evaluations)",
        r.value,
        (r.value - PI / 2.0).abs(),
        r.evaluations
    );
    Ok(())
}
