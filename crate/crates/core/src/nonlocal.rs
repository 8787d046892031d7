//! The nonlocal problem
//!
//! ```text
//!     -(a1 ‖u‖_q² + a2 ‖u‖_2²) u'' + u^p = λ u  on (0, 1),   u > 0,   u(0) = u(1) = 0,
//! ```
//!
//! parameterized by `α = ‖u‖_2`. Writing `u = h w` with `w` a local solution
//! `(k, γ, d)` and `β = a1 ‖u‖_q² + a2 ‖u‖_2²` gives `h^{p-1} = β`, hence
//!
//! ```text
//!     h = (a1 ‖w‖_q² + a2 d²)^{1/(p-3)},   α = g(k) := h d,   λ = β γ.
//! ```
//!
//! For `p ≠ 3` the amplitude `k` solves `g(k) = α`. At `p = 3` the scale
//! drops out and `k` is fixed by `a1 ‖w‖_q² + a2 d² = 1`; then `h = α / d`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::constants::compute_a1;
use crate::error::{Error, Result};
use crate::local_logistic::{phi, point_from_k, sample_profile, LocalParams, LocalPoint};
use crate::quadrature::QuadSpec;
use crate::roots::solve_monotone;

/// Exponents within this distance of 3 use the critical branch.
pub const CRITICAL_BAND: f64 = 1e-9;

/// Relative offset at which the monotonicity of `g` is confirmed around a
/// root.
const MONOTONICITY_PROBE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `p > 3`
    Supercritical,
    /// `p = 3`
    Critical,
    /// `1 < p < 3`
    Subcritical,
}

impl Regime {
    pub fn of(p: f64) -> Self {
        if (p - 3.0).abs() < CRITICAL_BAND {
            Regime::Critical
        } else if p > 3.0 {
            Regime::Supercritical
        } else {
            Regime::Subcritical
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub p: f64,
    pub q: f64,
    pub a1: f64,
    pub a2: f64,
    pub quad: QuadSpec,
    /// Absolute tolerance on `ln k` of the amplitude root find.
    pub root_tol: f64,
}

impl ProblemParams {
    pub fn new(p: f64, q: f64, a1: f64, a2: f64) -> Result<Self> {
        let params = Self {
            p,
            q,
            a1,
            a2,
            quad: QuadSpec::default(),
            root_tol: 1e-10,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_quad(mut self, quad: QuadSpec) -> Result<Self> {
        self.quad = quad;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) || !self.p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponent p must exceed 1, got {}",
                self.p
            )));
        }
        if !(self.q > 1.0) || !self.q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponent q must exceed 1, got {}",
                self.q
            )));
        }
        if !(self.a1 >= 0.0 && self.a2 >= 0.0) || !self.a1.is_finite() || !self.a2.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "a1 and a2 must be finite and nonnegative, got {} and {}",
                self.a1, self.a2
            )));
        }
        if self.a1 + self.a2 == 0.0 {
            return Err(Error::ZeroCoefficients);
        }
        if !(self.root_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "root_tol must be positive, got {}",
                self.root_tol
            )));
        }
        self.quad.validate()
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.p)
    }

    pub fn local(&self) -> LocalParams {
        LocalParams {
            p: self.p,
            quad: self.quad,
        }
    }

    /// Absolute tolerance used on `ln k`; tight enough that `α` is
    /// reproduced far below `root_tol` even where `g` is steep.
    fn ln_k_tol(&self) -> f64 {
        (self.root_tol * 1e-4).max(1e-15)
    }

    /// `‖w‖_q` at a local point; skipped when `a1 = 0` and free when `q = 2`.
    fn q_norm_at(&self, point: &LocalPoint) -> Result<f64> {
        if self.q == 2.0 {
            Ok(point.d)
        } else if self.a1 == 0.0 {
            Ok(f64::NAN)
        } else {
            point.q_norm(self.q, &self.local())
        }
    }

    /// `a1 ‖w‖_q² + a2 d²`.
    fn weighted(&self, q_norm_val: f64, d: f64) -> f64 {
        let q_part = if self.a1 == 0.0 {
            0.0
        } else {
            self.a1 * q_norm_val * q_norm_val
        };
        q_part + self.a2 * d * d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlocalSolution {
    /// `‖u‖_2`.
    pub alpha: f64,
    pub local: LocalPoint,
    /// `‖w‖_q` of the local solution; NaN when not needed (`a1 = 0`, `q ≠ 2`).
    pub q_norm: f64,
    pub h: f64,
    pub beta: f64,
    pub lambda: f64,
    pub regime: Regime,
}

impl NonlocalSolution {
    pub fn k(&self) -> f64 {
        self.local.k
    }

    pub fn d(&self) -> f64 {
        self.local.d
    }

    pub fn gamma(&self) -> f64 {
        self.local.gamma
    }
}

/// Relative defects of the four defining relations of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantDefects {
    /// `β` against `a1 (h ‖w‖_q)² + a2 (h d)²`.
    pub beta: f64,
    /// `h^{p-1}` against `β`; zero on the critical branch, where `h` is free.
    pub h_power: f64,
    /// `λ` against `β γ`.
    pub lambda: f64,
    /// `α` against `h d`.
    pub alpha: f64,
}

impl InvariantDefects {
    pub fn max(&self) -> f64 {
        self.beta.max(self.h_power).max(self.lambda).max(self.alpha)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub fn invariant_defects(sol: &NonlocalSolution, params: &ProblemParams) -> InvariantDefects {
    let hq = sol.h * sol.q_norm;
    let hd = sol.h * sol.local.d;
    let beta_def = params.weighted(hq, hd);
    let h_power = match sol.regime {
        Regime::Critical => 0.0,
        _ => rel(sol.h.powf(params.p - 1.0), sol.beta),
    };
    InvariantDefects {
        beta: rel(sol.beta, beta_def),
        h_power,
        lambda: rel(sol.lambda, sol.beta * sol.local.gamma),
        alpha: rel(sol.alpha, hd),
    }
}

/// `h = (a1 ‖w‖_q² + a2 d²)^{1/(p-3)}`.
pub fn scale_factor(local: &LocalPoint, q_norm_val: f64, params: &ProblemParams) -> Result<f64> {
    if params.regime() == Regime::Critical {
        return Err(Error::InvalidRegime(
            "the scale factor is not determined by the local solution at p = 3".into(),
        ));
    }
    let s = params.weighted(q_norm_val, local.d);
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "a1 ‖w‖_q² + a2 d² = {s} is not positive"
        )));
    }
    Ok((s.ln() / (params.p - 3.0)).exp())
}

/// `ln g(k)` together with the local point and `‖w‖_q` it was built from.
fn log_g(k: f64, params: &ProblemParams) -> Result<(f64, LocalPoint, f64)> {
    let point = point_from_k(k, &params.local())?;
    let qn = params.q_norm_at(&point)?;
    let s = params.weighted(qn, point.d);
    Ok((s.ln() / (params.p - 3.0) + point.d.ln(), point, qn))
}

/// `g(k) = h d`, the `L²` norm of the nonlocal solution built on amplitude `k`.
pub fn g_of_k(k: f64, params: &ProblemParams) -> Result<f64> {
    if params.regime() == Regime::Critical {
        return Err(Error::InvalidRegime("g is not defined at p = 3".into()));
    }
    Ok(log_g(k, params)?.0.exp())
}

/// Initial `ln k`. For `p < 3` the small-`d` model
/// `d^{p-1} ≈ π^{2/q} α^{p-3} / E1` is used; elsewhere the `‖w‖_q ≈ d` guess.
fn seed_ln_k(alpha: f64, params: &ProblemParams) -> Result<f64> {
    let p = params.p;
    let ln_d = match params.regime() {
        Regime::Subcritical => {
            let q = params.q;
            let a1_const = compute_a1(q, &params.quad)?;
            let e1 = params.a1 * 2f64.powf((q + 2.0) / q) * a1_const.powf(2.0 / q) + params.a2 * PI.powf(2.0 / q);
            (2.0 / q * PI.ln() - e1.ln() + (p - 3.0) * alpha.ln()) / (p - 1.0)
        }
        _ => ((p - 3.0) * alpha.ln() - (params.a1 + params.a2).ln()) / (p - 1.0),
    };
    Ok(0.5 * LN_2 + ln_d.clamp(-200.0, 200.0))
}

fn check_local_monotonicity<F>(f: F, k: f64, target: f64, increasing: bool, what: &str) -> Result<()>
where
    F: Fn(f64) -> Result<f64>,
{
    let below = f(k * (1.0 - MONOTONICITY_PROBE))?;
    let above = f(k * (1.0 + MONOTONICITY_PROBE))?;
    let ok = if increasing {
        below < target && target < above
    } else {
        below > target && target > above
    };
    if ok {
        Ok(())
    } else {
        Err(Error::MonotonicityViolation(format!(
            "{what} is not {} around k = {k:e}: {below:e}, {target:e}, {above:e}",
            if increasing { "increasing" } else { "decreasing" }
        )))
    }
}

fn critical_branch(alpha: f64, params: &ProblemParams) -> Result<NonlocalSolution> {
    let local = params.local();
    let log_s = |ln_k: f64| -> Result<f64> {
        let point = point_from_k(ln_k.exp(), &local)?;
        let qn = params.q_norm_at(&point)?;
        Ok(params.weighted(qn, point.d).ln())
    };
    let seed = 0.5 * LN_2 - 0.5 * (params.a1 + params.a2).ln();
    let ln_k = solve_monotone(log_s, seed, LN_2, true, params.ln_k_tol(), 200)?;
    let k = ln_k.exp();
    check_local_monotonicity(|kk| log_s(kk.ln()), k, log_s(ln_k)?, true, "a1 ‖w‖_q² + a2 d²")?;
    let point = point_from_k(k, &local)?;
    let qn = params.q_norm_at(&point)?;
    let h = alpha / point.d;
    let beta = h * h * params.weighted(qn, point.d);
    Ok(NonlocalSolution {
        alpha,
        local: point,
        q_norm: qn,
        h,
        beta,
        lambda: beta * point.gamma,
        regime: Regime::Critical,
    })
}

/// The unique solution with `‖u‖_2 = α`.
pub fn solve_alpha(alpha: f64, params: &ProblemParams) -> Result<NonlocalSolution> {
    params.validate()?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let regime = params.regime();
    if regime == Regime::Critical {
        return critical_branch(alpha, params);
    }
    let increasing = regime == Regime::Supercritical;
    let target = alpha.ln();
    let f = |ln_k: f64| -> Result<f64> { Ok(log_g(ln_k.exp(), params)?.0 - target) };
    let seed = seed_ln_k(alpha, params)?;
    let ln_k = solve_monotone(f, seed, LN_2, increasing, params.ln_k_tol(), 200)?;
    let k = ln_k.exp();
    let (_, point, qn) = log_g(k, params)?;
    check_local_monotonicity(|kk| Ok(log_g(kk, params)?.0), k, target, increasing, "g")?;
    let h = scale_factor(&point, qn, params)?;
    let hq = h * qn;
    let hd = h * point.d;
    let beta = params.weighted(hq, hd);
    Ok(NonlocalSolution {
        alpha,
        local: point,
        q_norm: qn,
        h,
        beta,
        lambda: beta * point.gamma,
        regime,
    })
}

/// `F(s) = (1 - s²)(1 - μ φ(s))`, so that `w'² = k² γ F(w / k)`.
fn first_integral(s: f64, mu: f64, p: f64) -> f64 {
    (1.0 - s) * (1.0 + s) * (1.0 - mu * phi(s, p))
}

/// `F'(s)` by second-order finite differences; one-sided near `s = 1`.
fn first_integral_slope(s: f64, mu: f64, p: f64) -> f64 {
    const STEP: f64 = 1e-4;
    let f = |x: f64| first_integral(x, mu, p);
    if s + STEP <= 1.0 && s - STEP >= -1.0 {
        (f(s + STEP) - f(s - STEP)) / (2.0 * STEP)
    } else {
        (3.0 * f(s) - 4.0 * f(s - STEP) + f(s - 2.0 * STEP)) / (2.0 * STEP)
    }
}

/// Largest scaled defect `|-β u'' + u^p - λ u| / (λ ‖u‖_∞)` over `n` interior
/// samples of `u = h w`.
///
/// `u''` is rebuilt independently of the equation, by differentiating the
/// first integral: `w'' = ½ k γ F'(w / k)`.
pub fn residual_check(sol: &NonlocalSolution, n: usize, params: &ProblemParams) -> Result<f64> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "residual check needs n >= 5 samples, got {n}"
        )));
    }
    let point = &sol.local;
    let half = n.div_ceil(2) + 1;
    let profile = sample_profile(point, half, &params.local())?;
    let p = params.p;
    let mu = point.mu();
    let u_max = sol.h * point.k;
    let scale = sol.lambda * u_max;
    let worst = profile
        .nodes
        .iter()
        .filter(|&&(x, _)| x > 0.0 && x < 1.0)
        .map(|&(_, w)| {
            let s = (w / point.k).clamp(0.0, 1.0);
            let w2 = 0.5 * point.k * point.gamma * first_integral_slope(s, mu, p);
            let u = sol.h * w;
            let u2 = sol.h * w2;
            (-sol.beta * u2 + u.powf(p) - sol.lambda * u).abs() / scale
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_logistic::solve_for_d;

    fn params(p: f64, q: f64, a1: f64, a2: f64) -> ProblemParams {
        ProblemParams::new(p, q, a1, a2).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            ProblemParams::new(2.0, 2.0, 0.0, 0.0),
            Err(Error::ZeroCoefficients)
        ));
        assert!(ProblemParams::new(2.0, 2.0, -1.0, 1.0).is_err());
        assert!(ProblemParams::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(ProblemParams::new(2.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(Regime::of(5.0), Regime::Supercritical);
        assert_eq!(Regime::of(3.0 + 1e-10), Regime::Critical);
        assert_eq!(Regime::of(2.0), Regime::Subcritical);
    }

    #[test]
    fn scale_factor_pure_l2() {
        for (p, expect) in [(5.0, 0.7), (2.0, 0.7f64.powi(-2))] {
            let pp = params(p, 2.0, 0.0, 1.0);
            let point = solve_for_d(0.7, &pp.local()).unwrap();
            let h = scale_factor(&point, point.d, &pp).unwrap();
            assert!(rel(h, expect) < 1e-10);
        }
        let pp = params(3.0, 2.0, 0.0, 1.0);
        let point = point_from_k(1.0, &pp.local()).unwrap();
        assert!(matches!(scale_factor(&point, 1.0, &pp), Err(Error::InvalidRegime(_))));
    }

    #[test]
    fn scale_factor_a1_only_is_q_norm() {
        let pp = params(5.0, 2.0, 1.0, 0.0);
        let point = point_from_k(1.3, &pp.local()).unwrap();
        let qn = point.q_norm(2.0, &pp.local()).unwrap();
        let h = scale_factor(&point, qn, &pp).unwrap();
        assert!(rel(h, qn) < 1e-10);
    }

    #[test]
    fn g_closed_form_pure_l2() {
        for p in [2.0, 5.0] {
            let pp = params(p, 2.0, 0.0, 1.0);
            for k in [0.3, 1.0, 2.5] {
                let d = point_from_k(k, &pp.local()).unwrap().d;
                let g = g_of_k(k, &pp).unwrap();
                assert!(rel(g, d.powf((p - 1.0) / (p - 3.0))) < 1e-12);
            }
        }
    }

    #[test]
    fn g_monotone_supercritical_and_blows_up_subcritical() {
        let pp = params(5.0, 3.0, 1.0, 1.0);
        let vals: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&k| g_of_k(k, &pp).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        let pp = params(2.0, 2.0, 1.0, 1.0);
        let vals: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&k| g_of_k(k, &pp).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] * 5.0 < w[1]));
    }

    #[test]
    fn solutions_satisfy_invariants() {
        for (pp, alpha) in [
            (params(5.0, 2.0, 1.0, 0.0), 3.0),
            (params(4.0, 3.0, 0.5, 0.5), 0.2),
            (params(2.0, 2.0, 0.5, 0.5), 50.0),
            (params(2.5, 3.0, 1.0, 2.0), 7.0),
            (params(3.0, 2.5, 1.0, 1.0), 4.0),
        ] {
            let sol = solve_alpha(alpha, &pp).unwrap();
            let def = invariant_defects(&sol, &pp);
            assert!(def.beta < 1e-10 && def.h_power < 1e-10, "{def:?}");
            assert!(def.lambda < 1e-12 && def.alpha < 1e-10, "{def:?}");
            assert!(residual_check(&sol, 41, &pp).unwrap() <= 1e-6);
        }
    }

    #[test]
    fn critical_ratio_independent_of_alpha() {
        let pp = params(3.0, 2.0, 1.0, 0.5);
        let ratios: Vec<f64> = [1.0, 10.0, 100.0]
            .iter()
            .map(|&a| solve_alpha(a, &pp).unwrap().lambda / (a * a))
            .collect();
        for r in &ratios[1..] {
            assert!(rel(*r, ratios[0]) < 1e-10);
        }
        let sol = solve_alpha(1.0, &pp).unwrap();
        assert!(rel(ratios[0], sol.gamma() / (sol.d() * sol.d())) < 1e-10);
    }

    #[test]
    fn supercritical_large_alpha() {
        let pp = params(5.0, 2.0, 1.0, 0.0);
        let sol = solve_alpha(1e4, &pp).unwrap();
        let ratio = sol.lambda / 1e16;
        assert!(ratio > 1.0 && ratio < 1.1, "{ratio}");
    }

    #[test]
    fn perturbed_lambda_is_detected() {
        let pp = params(2.0, 2.0, 1.0, 0.0);
        let mut sol = solve_alpha(20.0, &pp).unwrap();
        sol.lambda *= 1.01;
        assert!(residual_check(&sol, 41, &pp).unwrap() >= 1e-3);
        assert!(residual_check(&sol, 3, &pp).is_err());
    }
}
