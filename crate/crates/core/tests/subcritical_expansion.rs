//! The subcritical curve against the coefficients of the exact identity
//! `λ/α² = γ (a1 ‖w‖_q² + a2 d²) / d²`, and the size of the bifurcation
//! offset near `π²`.

use std::f64::consts::PI;

use biflogis::constants::{compute_a3, subcritical_direct_coefficients, ConstantSet, E3Reading};
use biflogis::local_logistic::{point_from_k, LocalParams};
use biflogis::nonlocal::ProblemParams;
use biflogis::oracle::{solve_bvp, ShootConfig};
use biflogis::quadrature::QuadSpec;
use biflogis::verify::{check_theorem_3, geometric_grid, sweep};

#[test]
fn limits_match_direct_coefficients() {
    for (p, q, a1, a2) in [
        (2.0, 2.0, 0.0, 1.0),
        (2.0, 2.0, 1.0, 1.0),
        (2.5, 3.0, 1.0, 0.0),
        (1.5, 2.5, 0.5, 2.0),
    ] {
        let params = ProblemParams::new(p, q, a1, a2).unwrap();
        let report = sweep(&params, &geometric_grid(1e2, 1e4, 5)).unwrap();
        let quad = QuadSpec::default();
        let paper = ConstantSet::compute(p, q, a1, a2, E3Reading::PaperDefinition, &quad).unwrap();
        let variant = ConstantSet::compute(p, q, a1, a2, E3Reading::ProofVariant, &quad).unwrap();
        let t3 = check_theorem_3(&report, &paper, &variant).unwrap();
        for c in &t3.direct {
            assert!(c.pass, "p = {p}, q = {q}, a = ({a1}, {a2}): {c:?}");
        }
    }
}

#[test]
fn leading_coefficient_for_l2_weight_is_pi_squared_times_weight_sum() {
    // q = 2 makes ‖w‖_q = d, so λ/α² → π² (a1 + a2) exactly.
    let quad = QuadSpec::default();
    for (a1, a2) in [(0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        let (lead, _) = subcritical_direct_coefficients(2.0, 2.0, a1, a2, &quad).unwrap();
        assert!((lead / (PI * PI * (a1 + a2)) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bifurcation_offset_is_physical() {
    // √γ - π ≈ A3 d^{p-1} with d ≈ k/√2: at p = 2, k = 1e-6 this puts γ about
    // 8.6e-8 above π² in relative terms; shooting at that γ recovers k.
    let params = LocalParams::new(2.0).unwrap();
    let pt = point_from_k(1e-6, &params).unwrap();
    let a3 = compute_a3(2.0, &QuadSpec::default()).unwrap();
    let predicted = (PI + a3 * 1e-6 / 2f64.sqrt()).powi(2) / (PI * PI) - 1.0;
    let offset = pt.gamma / (PI * PI) - 1.0;
    assert!((offset / predicted - 1.0).abs() < 1e-5, "{offset:e} vs {predicted:e}");
    let shot = solve_bvp(pt.gamma, 2.0, &ShootConfig::default()).unwrap();
    assert!(
        (shot.point.k / 1e-6 - 1.0).abs() < 1e-3,
        "shooting amplitude {}",
        shot.point.k
    );
}
