//! Independent route to the local problem: shooting on
//!
//! ```text
//!     w'' = w^p - γ w,   w(0) = 0,   w'(0) = m,
//! ```
//!
//! with fixed-step classical Runge–Kutta, and bisection on `m` until the
//! trajectory returns to zero exactly at `x = 1`. Nothing here uses the time
//! map.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_logistic::{LocalPoint, Profile};
use crate::roots::brent;

/// Trajectories larger than this are treated as escaping to infinity.
const OVERFLOW: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootConfig {
    /// Integration step; `1 / step` is rounded to a whole number of steps.
    pub step: f64,
    /// Bisection stops once the slope bracket is narrower than
    /// `slope_tol · m`.
    pub slope_tol: f64,
    pub max_bisections: usize,
}

impl Default for ShootConfig {
    fn default() -> Self {
        Self {
            step: 1e-4,
            slope_tol: 1e-12,
            max_bisections: 200,
        }
    }
}

impl ShootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "step must lie in (0, 1e-2], got {}",
                self.step
            )));
        }
        if !(self.slope_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "slope_tol must be positive, got {}",
                self.slope_tol
            )));
        }
        if self.max_bisections == 0 {
            return Err(Error::InvalidParameter("max_bisections must be positive".into()));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (1.0 / self.step).round() as usize
    }
}

/// One trajectory of the initial value problem on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shot {
    /// `(x, w(x))` at every step up to `x = 1` or up to the first zero,
    /// whose located position is then the last node.
    pub profile: Profile,
    /// `w'(x)` at the same nodes.
    pub slopes: Vec<f64>,
    /// First zero of `w` in `(0, 1]`, if any.
    pub crossing: Option<f64>,
    /// Largest relative deviation of `½w'² + ½γw² - |w|^{p+1}/(p+1)` from
    /// its initial value `½m²`.
    pub energy_drift: f64,
}

impl Shot {
    pub fn returned(&self) -> bool {
        self.crossing.is_some()
    }
}

/// Solution of the local problem found by shooting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub point: LocalPoint,
    pub profile: Profile,
    /// Initial slope `w'(0)`.
    pub slope: f64,
    pub energy_drift: f64,
}

fn rhs(w: f64, dw: f64, gamma: f64, p: f64) -> (f64, f64) {
    // Odd extension of w^p so stages that step past a zero stay finite.
    (dw, w.abs().powf(p - 1.0) * w - gamma * w)
}

fn rk4(w: f64, dw: f64, h: f64, gamma: f64, p: f64) -> (f64, f64) {
    let (k1w, k1v) = rhs(w, dw, gamma, p);
    let (k2w, k2v) = rhs(w + 0.5 * h * k1w, dw + 0.5 * h * k1v, gamma, p);
    let (k3w, k3v) = rhs(w + 0.5 * h * k2w, dw + 0.5 * h * k2v, gamma, p);
    let (k4w, k4v) = rhs(w + h * k3w, dw + h * k3v, gamma, p);
    (
        w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
        dw + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

fn energy(w: f64, dw: f64, gamma: f64, p: f64) -> f64 {
    0.5 * dw * dw + 0.5 * gamma * w * w - w.abs().powf(p + 1.0) / (p + 1.0)
}

/// Integrate from `x = 0` with slope `m`, stopping at the first zero.
pub fn shoot(gamma: f64, m: f64, p: f64, cfg: &ShootConfig) -> Result<Shot> {
    cfg.validate()?;
    if !(gamma > 0.0) || !(m > 0.0) || !(p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "shooting needs gamma > 0, m > 0, p > 1; got {gamma}, {m}, {p}"
        )));
    }
    let n = cfg.steps();
    let h = 1.0 / n as f64;
    let e0 = 0.5 * m * m;
    let mut nodes = Vec::with_capacity(n + 1);
    let mut slopes = Vec::with_capacity(n + 1);
    nodes.push((0.0, 0.0));
    slopes.push(m);
    let (mut w, mut dw) = (0.0, m);
    let mut drift: f64 = 0.0;
    let mut crossing = None;
    for i in 0..n {
        let (w1, dw1) = rk4(w, dw, h, gamma, p);
        let x1 = (i + 1) as f64 * h;
        if !w1.is_finite() || !dw1.is_finite() || w1.abs() > OVERFLOW || dw1.abs() > OVERFLOW {
            return Err(Error::Overflow { x: x1 });
        }
        if w1 <= 0.0 {
            // Secant between the bracketing nodes.
            let t = w / (w - w1);
            let xc = i as f64 * h + t * h;
            let dwc = dw + t * (dw1 - dw);
            nodes.push((xc, 0.0));
            slopes.push(dwc);
            crossing = Some(xc);
            break;
        }
        drift = drift.max(((energy(w1, dw1, gamma, p) - e0) / e0).abs());
        w = w1;
        dw = dw1;
        nodes.push((x1, w));
        slopes.push(dw);
    }
    Ok(Shot {
        profile: Profile { nodes },
        slopes,
        crossing,
        energy_drift: drift,
    })
}

/// Amplitude `k` from `½m² = ½γk² - k^{p+1}/(p+1)`, the smallest positive
/// root.
fn amplitude_from_slope(gamma: f64, m: f64, p: f64) -> Result<f64> {
    let f = |k: f64| Ok(0.5 * gamma * k * k - k.powf(p + 1.0) / (p + 1.0) - 0.5 * m * m);
    let top = gamma.powf(1.0 / (p - 1.0));
    let f_top = f(top)?;
    if f_top < 0.0 {
        return Err(Error::NoSolution(format!(
            "slope {m} exceeds the separatrix for gamma = {gamma}"
        )));
    }
    brent(f, 0.0, top, -0.5 * m * m, f_top, 0.0)
}

/// Positive solution for a prescribed `γ > π²`.
pub fn solve_bvp(gamma: f64, p: f64, cfg: &ShootConfig) -> Result<OracleSolution> {
    cfg.validate()?;
    if !(gamma > PI * PI) || !gamma.is_finite() {
        return Err(Error::NoSolution(format!("gamma = {gamma} does not exceed π²")));
    }
    // Too small a slope comes back to zero before x = 1; too large does not.
    let early = |m: f64| -> Result<bool> {
        match shoot(gamma, m, p, cfg) {
            Ok(shot) => Ok(shot.crossing.is_some_and(|x| x < 1.0)),
            Err(Error::Overflow { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let mut lo = 1e-12;
    if !early(lo)? {
        return Err(Error::NoSolution(format!(
            "even slope {lo:e} fails to return before x = 1 at gamma = {gamma}"
        )));
    }
    let mut hi = 1.0;
    let mut expansions = 0;
    while early(hi)? {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 1100 {
            return Err(Error::BracketFailure(format!(
                "no overshooting slope for gamma = {gamma}"
            )));
        }
    }
    let mut converged = false;
    for _ in 0..cfg.max_bisections {
        if hi - lo <= cfg.slope_tol * hi {
            converged = true;
            break;
        }
        let mid = 0.5 * (lo + hi);
        if early(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "slope bisection",
            estimate: (hi - lo) / hi,
        });
    }
    let m = lo;
    let shot = shoot(gamma, m, p, cfg)?;
    let k = amplitude_from_slope(gamma, m, p)?;
    let d = norms_from_profile(&shot.profile, 2.0)?;
    let km = k.powf(p - 1.0);
    let point = LocalPoint {
        k,
        gamma,
        d,
        p,
        log_gap: ((gamma - km) / km).ln(),
    };
    Ok(OracleSolution {
        point,
        profile: shot.profile,
        slope: m,
        energy_drift: shot.energy_drift,
    })
}

/// `‖w‖_q` by composite Simpson over the profile nodes (non-uniform form;
/// an odd number of intervals closes with a one-interval three-point rule).
pub fn norms_from_profile(profile: &Profile, q: f64) -> Result<f64> {
    let nodes = &profile.nodes;
    if nodes.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "profile needs at least 3 nodes, got {}",
            nodes.len()
        )));
    }
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "norm exponent must be positive, got {q}"
        )));
    }
    let f: Vec<f64> = nodes.iter().map(|&(_, w)| w.abs().powf(q)).collect();
    let x: Vec<f64> = nodes.iter().map(|&(x, _)| x).collect();
    let intervals = nodes.len() - 1;
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 <= intervals {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let span = h0 + h1;
        total +=
            span / 6.0 * ((2.0 - h1 / h0) * f[i] + span * span / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        let n = intervals;
        let h0 = x[n - 1] - x[n - 2];
        let h1 = x[n] - x[n - 1];
        total += h1 / 6.0
            * ((2.0 * h1 + 3.0 * h0) / (h0 + h1) * f[n] + (h1 + 3.0 * h0) / h0 * f[n - 1]
                - h1 * h1 / (h0 * (h0 + h1)) * f[n - 2]);
    }
    Ok(total.powf(1.0 / q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_logistic::{point_from_gamma, LocalParams};

    fn cfg() -> ShootConfig {
        ShootConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn config_validation() {
        assert!(ShootConfig { step: 0.1, ..cfg() }.validate().is_err());
        assert!(ShootConfig { step: 0.0, ..cfg() }.validate().is_err());
        assert!(cfg().validate().is_ok());
    }

    #[test]
    fn linear_limit_is_a_sine() {
        let m = 1e-6;
        let shot = shoot(PI * PI, m, 3.0, &cfg()).unwrap();
        for &(x, w) in &shot.profile.nodes {
            assert!((w - m / PI * (PI * x).sin()).abs() < 1e-8 * m);
        }
        let end = shot.profile.nodes.last().unwrap().0;
        assert!((end - 1.0).abs() < 1e-6);
    }

    #[test]
    fn energy_is_conserved_and_amplitude_grows_with_slope() {
        let a = shoot(20.0, 2.0, 3.0, &cfg()).unwrap();
        let b = shoot(20.0, 3.0, 3.0, &cfg()).unwrap();
        assert!(a.energy_drift < 1e-8 && b.energy_drift < 1e-8);
        assert!(b.profile.max_value() > a.profile.max_value());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(shoot(20.0, 1e4, 3.0, &cfg()), Err(Error::Overflow { .. })));
    }

    #[test]
    fn no_solution_at_or_below_first_eigenvalue() {
        assert!(matches!(solve_bvp(PI * PI, 3.0, &cfg()), Err(Error::NoSolution(_))));
        assert!(matches!(solve_bvp(5.0, 3.0, &cfg()), Err(Error::NoSolution(_))));
    }

    #[test]
    fn near_bifurcation_amplitude_vanishes() {
        let sol = solve_bvp(PI * PI * (1.0 + 1e-6), 3.0, &cfg()).unwrap();
        assert!(sol.point.k < 1e-2, "{}", sol.point.k);
    }

    #[test]
    fn agrees_with_time_map() {
        let params = LocalParams::new(3.0).unwrap();
        let sol = solve_bvp(20.0, 3.0, &cfg()).unwrap();
        let tm = point_from_gamma(20.0, &params).unwrap();
        assert!(rel(sol.point.k, tm.k) < 1e-6);
        assert!(rel(sol.point.d, tm.d) < 1e-6);
        let q4 = norms_from_profile(&sol.profile, 4.0).unwrap();
        assert!(rel(q4, tm.q_norm(4.0, &params).unwrap()) < 1e-6);
        assert!(sol.energy_drift < 1e-8);
    }

    #[test]
    fn profile_is_symmetric_with_peak_in_the_middle() {
        let sol = solve_bvp(20.0, 2.0, &cfg()).unwrap();
        let nodes = &sol.profile.nodes;
        let n = nodes.len() - 1;
        let k = sol.point.k;
        for i in 0..=n / 2 {
            assert!((nodes[i].1 - nodes[n - i].1).abs() <= 1e-7 * k);
        }
        let (x_peak, _) = nodes
            .iter()
            .copied()
            .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        assert!((x_peak - 0.5).abs() <= cfg().step);
    }

    #[test]
    fn step_halving_is_invisible() {
        let coarse = solve_bvp(30.0, 2.5, &cfg()).unwrap();
        let fine = solve_bvp(30.0, 2.5, &ShootConfig { step: 5e-5, ..cfg() }).unwrap();
        assert!(rel(coarse.point.k, fine.point.k) <= 1e-8);
        assert!(rel(coarse.point.d, fine.point.d) <= 1e-8);
    }

    #[test]
    fn simpson_norms() {
        let constant = Profile {
            nodes: (0..=100).map(|i| (i as f64 / 100.0, 2.5)).collect(),
        };
        assert!((norms_from_profile(&constant, 3.0).unwrap() - 2.5).abs() < 1e-13);
        let sine = Profile {
            nodes: (0..=1000)
                .map(|i| {
                    let x = i as f64 / 1000.0;
                    (x, (PI * x).sin())
                })
                .collect(),
        };
        assert!((norms_from_profile(&sine, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-8);
        // Odd interval count and uneven spacing.
        let uneven = Profile {
            nodes: (0..=101)
                .map(|i| {
                    let x = (i as f64 / 101.0).powi(2);
                    (x, (PI * x).sin())
                })
                .collect(),
        };
        assert!((norms_from_profile(&uneven, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-6);
    }
}
