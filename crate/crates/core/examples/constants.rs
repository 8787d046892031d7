//! Asymptotic constants of the bifurcation curves.
//!
//! Run with `cargo run --release --example constants`.

use std::f64::consts::PI;

use biflogis::constants::{compute_a, compute_c1, compute_cq, subcritical_direct_coefficients, ConstantSet, E3Reading};
use biflogis::quadrature::QuadSpec;

fn main() -> biflogis::Result<()> {
    let quad = QuadSpec::default();

    println!("large-amplitude constants");
    for p in [3.0, 4.0, 5.0, 7.0] {
        let c1 = compute_c1(p, &quad)?;
        let c3 = compute_cq(p, 3.0, &quad)?;
        println!("  p = {p}: C1 = {c1:.12}, C(3) = {c3:.12}");
    }
    println!(
        "  C1 at p = 3 against 2√2: {:.1e}",
        (compute_c1(3.0, &quad)? - 2.0 * 2f64.sqrt()).abs()
    );

    println!("small-amplitude constants, p = 2");
    for q in [2.0, 3.0] {
        let a = compute_a(2.0, q, &quad)?;
        println!(
            "  q = {q}: A1 = {:.12}, A2 = {:.12}, A3 = {:.12}, A4 = {:+.12}, A6 = {:+.12}",
            a.a1,
            a.a2,
            a.a3,
            a.a4,
            a.a6.unwrap()
        );
    }

    println!("coefficients of λ/α² for p = 2, q = 2, a1 = 0, a2 = 1");
    for reading in E3Reading::ALL {
        let set = ConstantSet::compute(2.0, 2.0, 0.0, 1.0, reading, &quad)?;
        println!(
            "  stated, {:<16}: leading {:.10}, second {:+.10}",
            reading.as_str(),
            set.leading_coeff.unwrap(),
            set.second_coeff.unwrap()
        );
    }
    let (lead, second) = subcritical_direct_coefficients(2.0, 2.0, 0.0, 1.0, &quad)?;
    println!(
        "  direct expansion        : leading {lead:.10}, second {second:+.10}   (π² = {:.10})",
        PI * PI
    );

    let set = ConstantSet::compute(2.5, 3.0, 1.0, 1.0, E3Reading::ProofVariant, &quad)?;
    println!("full record for p = 2.5, q = 3, a1 = a2 = 1:");
    println!(
        "{}",
        serde_json::to_string_pretty(&set).expect("constant sets serialize")
    );
    Ok(())
}
