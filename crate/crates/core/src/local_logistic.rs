//! Positive solutions of the local logistic problem
//!
//! ```text
//!     -w'' + w^p = γ w  on (0, 1),   w > 0,   w(0) = w(1) = 0
//! ```
//!
//! through the time map. With amplitude `k = w(1/2)` and the gap ratio
//! `τ = (γ - k^{p-1}) / k^{p-1}`, the substitution `w = k cos u` turns the
//! half-interval traversal time into
//!
//! ```text
//!     T(k, γ) = k^{-(p-1)/2} ∫_0^{π/2} du / sqrt(τ + G(u)),
//!     G(u)    = 1 - 2 (1 - s^{p+1}) / ((p+1)(1 - s²)),   s = cos u,
//! ```
//!
//! and a solution exists iff `T = 1/2`. Every unknown is solved for in the
//! variable `ln τ`. For large amplitudes `τ` is exponentially small and
//! underflows, so the integral is split into the closed-form part
//! `∫ du / sqrt(τ + G''(0) u² / 2)` (an `asinh`, evaluated from `ln τ`) plus a
//! bounded remainder handled by adaptive Gauss–Legendre.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_value, QuadRule, QuadSpec};
use crate::roots::{brent, solve_monotone};

/// Below `1 - s` of this size [`phi`] switches to its Taylor expansion.
pub const PHI_GUARD: f64 = 1e-6;

/// Gap ratios below `exp(-64)` only affect the bounded remainder integral at
/// the 1e-28 level and are treated as zero there.
const NEGLIGIBLE_LOG_GAP: f64 = -64.0;

const SERIES_CUTOFF: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalParams {
    pub p: f64,
    pub quad: QuadSpec,
}

impl LocalParams {
    pub fn new(p: f64) -> Result<Self> {
        Self::with_quad(p, QuadSpec::default())
    }

    pub fn with_quad(p: f64, quad: QuadSpec) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent p must exceed 1, got {p}")));
        }
        quad.validate()?;
        Ok(Self { p, quad })
    }

    fn gauss(&self) -> QuadSpec {
        self.quad.with_rule(QuadRule::GaussLegendreAdaptive)
    }

    fn kernel(&self) -> Kernel {
        Kernel {
            p: self.p,
            h0: (self.p - 1.0).sqrt() / 2.0,
        }
    }
}

/// One point `(k, γ, d)` of the local bifurcation curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalPoint {
    /// Amplitude `‖w‖_∞ = w(1/2)`.
    pub k: f64,
    pub gamma: f64,
    /// `‖w‖_2`.
    pub d: f64,
    pub p: f64,
    /// `ln((γ - k^{p-1}) / k^{p-1})`; finite even where the gap itself
    /// underflows.
    pub log_gap: f64,
}

impl LocalPoint {
    /// `μ = 2 k^{p-1} / ((p+1) γ)`.
    pub fn mu(&self) -> f64 {
        2.0 * self.k.powf(self.p - 1.0) / ((self.p + 1.0) * self.gamma)
    }

    pub fn q_norm(&self, q: f64, params: &LocalParams) -> Result<f64> {
        norm_from_gap(self.k, self.log_gap, q, params)
    }

    pub fn time_map(&self, params: &LocalParams) -> Result<f64> {
        let i0 = params.kernel().partial(self.log_gap, FRAC_PI_2, &params.gauss())?;
        Ok(amplitude_scale(self.k, self.p) * i0)
    }
}

/// Sampled solution `(x, w(x))`, ascending in `x` over `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub nodes: Vec<(f64, f64)>,
}

impl Profile {
    pub fn max_value(&self) -> f64 {
        self.nodes.iter().map(|&(_, w)| w).fold(0.0, f64::max)
    }
}

/// `(1 - s^{p+1}) / (1 - s²)`, with its limit `(p+1)/2` at `s = 1`.
pub fn phi(s: f64, p: f64) -> f64 {
    let t = 1.0 - s;
    if t < PHI_GUARD {
        0.5 * (p + 1.0) * (1.0 - 0.5 * (p - 1.0) * t)
    } else {
        -((p + 1.0) * s.ln()).exp_m1() / (t * (1.0 + s))
    }
}

/// `1 - 2 φ(1 - t) / (p + 1)` for `t = 1 - s ∈ [0, 1]`, accurate as `t → 0`
/// where it vanishes like `(p - 1) t / 2`.
pub fn one_minus_psi(t: f64, p: f64) -> f64 {
    if t < SERIES_CUTOFF {
        // (1-t)^{p+1} = Σ b_j t^j; the j = 0, 1, 2 terms cancel analytically.
        let lead = (p + 1.0) * (p - 1.0) * t;
        let mut b = 0.5 * (p + 1.0) * p;
        let mut power = t;
        let mut tail = 0.0;
        for j in 3..=120 {
            let jf = j as f64;
            b *= (jf - p - 2.0) / jf;
            power *= t;
            let term = b * power;
            tail += term;
            if jf > p + 2.0 && term.abs() <= 1e-18 * (lead.abs() + tail.abs()) {
                break;
            }
        }
        (lead + 2.0 * tail) / ((p + 1.0) * (2.0 - t))
    } else {
        let s = 1.0 - t;
        let num = -((p + 1.0) * s.ln()).exp_m1();
        1.0 - 2.0 * num / ((p + 1.0) * t * (1.0 + s))
    }
}

/// `G(u)` with `1 - cos u` evaluated as `2 sin²(u/2)`.
fn g_of_u(u: f64, p: f64) -> f64 {
    let half = (0.5 * u).sin();
    one_minus_psi(2.0 * half * half, p)
}

/// `1 - cos^q u` without cancellation near `u = 0`.
fn one_minus_cos_pow(u: f64, q: f64) -> f64 {
    let half = (0.5 * u).sin();
    -(q * (-2.0 * half * half).ln_1p()).exp_m1()
}

fn amplitude_scale(k: f64, p: f64) -> f64 {
    (-0.5 * (p - 1.0) * k.ln()).exp()
}

/// `asinh(x0 / sqrt(τ))` from `ln τ`.
fn asinh_over_root_gap(x0: f64, log_gap: f64) -> f64 {
    let ln_x = x0.ln() - 0.5 * log_gap;
    if ln_x > 20.0 {
        LN_2 + ln_x
    } else {
        ln_x.exp().asinh()
    }
}

struct Kernel {
    p: f64,
    /// `sqrt(G''(0) / 2) = sqrt(p - 1) / 2`.
    h0: f64,
}

impl Kernel {
    fn gap(log_gap: f64) -> f64 {
        if log_gap < NEGLIGIBLE_LOG_GAP {
            0.0
        } else {
            log_gap.exp()
        }
    }

    /// `∫_0^upper du / sqrt(τ + G(u))`.
    fn partial(&self, log_gap: f64, upper: f64, quad: &QuadSpec) -> Result<f64> {
        if upper <= 0.0 {
            return Ok(0.0);
        }
        let h0 = self.h0;
        let p = self.p;
        let tau = Self::gap(log_gap);
        let closed = asinh_over_root_gap(h0 * upper, log_gap) / h0;
        let remainder = integrate_value(
            |u| {
                let g = g_of_u(u, p);
                let c = h0 * h0 * u * u;
                let a = (tau + g).sqrt();
                let b = (tau + c).sqrt();
                (c - g) / (a * b * (a + b))
            },
            0.0,
            upper,
            quad,
        )?;
        Ok(closed + remainder)
    }

    /// `∫_0^{π/2} (1 - cos^q u) / sqrt(τ + G(u)) du`.
    fn deficit(&self, log_gap: f64, q: f64, quad: &QuadSpec) -> Result<f64> {
        let p = self.p;
        let tau = Self::gap(log_gap);
        integrate_value(
            |u| one_minus_cos_pow(u, q) / (tau + g_of_u(u, p)).sqrt(),
            0.0,
            FRAC_PI_2,
            quad,
        )
    }
}

fn log_gap_of(k: f64, gamma: f64, p: f64) -> Result<f64> {
    let base = k.powf(p - 1.0);
    if !(gamma > base) {
        return Err(Error::InvalidBracket(format!(
            "gamma = {gamma} must exceed k^(p-1) = {base}"
        )));
    }
    Ok(((gamma - base) / base).ln())
}

fn check_amplitude(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("amplitude must be positive, got {k}")));
    }
    Ok(())
}

/// `‖w‖_q` of the amplitude-`k` solution with gap `ln τ = log_gap`:
/// `‖w‖_q^q = 2 k^{q - (p-1)/2} ∫ cos^q u / sqrt(τ + G)`.
fn norm_from_gap(k: f64, log_gap: f64, q: f64, params: &LocalParams) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "norm exponent must be positive, got {q}"
        )));
    }
    let kernel = params.kernel();
    let quad = params.gauss();
    let full = kernel.partial(log_gap, FRAC_PI_2, &quad)?;
    let deficit = kernel.deficit(log_gap, q, &quad)?;
    let ratio = 2.0 * amplitude_scale(k, params.p) * (full - deficit);
    Ok(k * ratio.powf(1.0 / q))
}

fn gamma_from_gap(k: f64, log_gap: f64, p: f64) -> f64 {
    let base = k.powf(p - 1.0);
    base + (log_gap + (p - 1.0) * k.ln()).exp()
}

fn softplus(z: f64) -> f64 {
    if z > 40.0 {
        z
    } else {
        z.exp().ln_1p()
    }
}

/// Half-interval traversal time `T(k, γ)`; the amplitude-`k` solution exists
/// for this `γ` iff the result is `1/2`.
pub fn time_map(k: f64, gamma: f64, params: &LocalParams) -> Result<f64> {
    check_amplitude(k)?;
    let log_gap = log_gap_of(k, gamma, params.p)?;
    let i0 = params.kernel().partial(log_gap, FRAC_PI_2, &params.gauss())?;
    Ok(amplitude_scale(k, params.p) * i0)
}

/// `ln τ` of the solution with amplitude `k`.
fn solve_log_gap(k: f64, params: &LocalParams) -> Result<f64> {
    check_amplitude(k)?;
    let p = params.p;
    let kernel = params.kernel();
    let quad = params.gauss();
    let target = (0.5f64).ln() + 0.5 * (p - 1.0) * k.ln();
    let small_amplitude_seed = 2.0 * ((FRAC_PI_2).ln() - target);
    let seed = if small_amplitude_seed > 1.0 {
        small_amplitude_seed
    } else {
        2.0 * ((kernel.h0 * PI).ln() - kernel.h0 * target.exp())
    };
    if seed > 600.0 {
        return Err(Error::InvalidParameter(format!(
            "amplitude {k} is too small to resolve"
        )));
    }
    let f = |z: f64| -> Result<f64> { Ok(kernel.partial(z, FRAC_PI_2, &quad)?.ln() - target) };
    solve_monotone(f, seed, 1.0, false, 1e-14, 200).map_err(|e| match e {
        Error::BracketFailure(m) => Error::BracketFailure(format!("eigenvalue for k = {k}: {m}")),
        other => other,
    })
}

/// Unique `γ` with `T(k, γ) = 1/2`.
pub fn solve_gamma(k: f64, params: &LocalParams) -> Result<f64> {
    let z = solve_log_gap(k, params)?;
    Ok(gamma_from_gap(k, z, params.p))
}

/// `‖w‖_q` of the solution with amplitude `k` and eigenvalue `γ`.
pub fn q_norm(k: f64, gamma: f64, q: f64, params: &LocalParams) -> Result<f64> {
    check_amplitude(k)?;
    let log_gap = log_gap_of(k, gamma, params.p)?;
    norm_from_gap(k, log_gap, q, params)
}

pub fn point_from_k(k: f64, params: &LocalParams) -> Result<LocalPoint> {
    let log_gap = solve_log_gap(k, params)?;
    let gamma = gamma_from_gap(k, log_gap, params.p);
    let d = norm_from_gap(k, log_gap, 2.0, params)?;
    Ok(LocalPoint {
        k,
        gamma,
        d,
        p: params.p,
        log_gap,
    })
}

/// Solution of the local problem for a prescribed eigenvalue `γ > π²`.
pub fn point_from_gamma(gamma: f64, params: &LocalParams) -> Result<LocalPoint> {
    if !(gamma > PI * PI) || !gamma.is_finite() {
        return Err(Error::NoSolution(format!("gamma = {gamma} does not exceed π²")));
    }
    let p = params.p;
    let kernel = params.kernel();
    let quad = params.gauss();
    let target = (0.5 * gamma.sqrt()).ln();
    let excess = gamma.sqrt() / PI - 1.0;
    let seed = if excess < 0.5 {
        -(2.0 * excess).ln()
    } else {
        2.0 * (kernel.h0 * PI).ln() - kernel.h0 * gamma.sqrt()
    };
    let f = |z: f64| -> Result<f64> { Ok(kernel.partial(z, FRAC_PI_2, &quad)?.ln() + 0.5 * softplus(z) - target) };
    let log_gap = solve_monotone(f, seed, 1.0, false, 1e-14, 200)?;
    let k = ((gamma.ln() - softplus(log_gap)) / (p - 1.0)).exp();
    let d = norm_from_gap(k, log_gap, 2.0, params)?;
    Ok(LocalPoint {
        k,
        gamma,
        d,
        p,
        log_gap,
    })
}

/// Solution with `‖w‖_2 = d`, by monotone root finding in `ln k`.
pub fn solve_for_d(d: f64, params: &LocalParams) -> Result<LocalPoint> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("L2 norm must be positive, got {d}")));
    }
    let f = |ln_k: f64| -> Result<f64> { Ok(point_from_k(ln_k.exp(), params)?.d.ln() - d.ln()) };
    let seed = (2f64.sqrt() * d).ln();
    let ln_k = solve_monotone(f, seed, LN_2, true, 1e-15, 200)?;
    let point = point_from_k(ln_k.exp(), params)?;
    if (point.d - d).abs() > 1e-10 * d {
        return Err(Error::NoConvergence {
            what: "L2-norm inversion",
            estimate: (point.d - d).abs() / d,
        });
    }
    Ok(point)
}

/// `x` position on `[0, 1/2]` where `w = k cos u`.
fn abscissa(point: &LocalPoint, u: f64, full: f64, params: &LocalParams) -> Result<f64> {
    let partial = params.kernel().partial(point.log_gap, u, &params.gauss())?;
    Ok(amplitude_scale(point.k, point.p) * (full - partial))
}

/// Sample the solution at `n` nodes on `[0, 1/2]` (uniform in `u`, where
/// `w = k cos u`), mirrored onto `[1/2, 1]`.
pub fn sample_profile(point: &LocalPoint, n: usize, params: &LocalParams) -> Result<Profile> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("profile needs n >= 3 nodes, got {n}")));
    }
    let full = params.kernel().partial(point.log_gap, FRAC_PI_2, &params.gauss())?;
    let mut half = Vec::with_capacity(n);
    for j in 0..n {
        let (x, w) = if j == 0 {
            (0.0, 0.0)
        } else if j == n - 1 {
            (abscissa(point, 0.0, full, params)?, point.k)
        } else {
            let u = FRAC_PI_2 * (1.0 - j as f64 / (n - 1) as f64);
            (abscissa(point, u, full, params)?, point.k * u.cos())
        };
        half.push((x, w));
    }
    let mut nodes = half.clone();
    nodes.extend(half.iter().rev().skip(1).map(|&(x, w)| (1.0 - x, w)));
    Ok(Profile { nodes })
}

/// `w(x)` for any `x ∈ [0, 1]`, by inverting the time-map parameterization.
pub fn profile_value(point: &LocalPoint, x: f64, params: &LocalParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} is outside [0, 1]")));
    }
    let x = x.min(1.0 - x);
    if x == 0.0 {
        return Ok(0.0);
    }
    let full = params.kernel().partial(point.log_gap, FRAC_PI_2, &params.gauss())?;
    let top = abscissa(point, 0.0, full, params)?;
    if x >= top {
        return Ok(point.k);
    }
    // x(u) decreases from `top` at u = 0 to 0 at u = π/2.
    let f = |u: f64| -> Result<f64> { Ok(abscissa(point, u, full, params)? - x) };
    let u = brent(f, 0.0, FRAC_PI_2, top - x, -x, 1e-15)?;
    Ok(point.k * u.cos())
}

/// `w'(x)` at a node with value `w`, from the first integral written through
/// `φ`: `w' = k sqrt(γ (1 - s²)(1 - μ φ(s)))`, `s = w / k`.
pub fn slope_at(point: &LocalPoint, w: f64) -> f64 {
    let s = (w / point.k).clamp(0.0, 1.0);
    let r = (1.0 - s) * (1.0 + s) * (1.0 - point.mu() * phi(s, point.p));
    point.k * (point.gamma * r.max(0.0)).sqrt()
}

/// Largest relative deviation of `½w'² + ½γw² - w^{p+1}/(p+1)` from its value
/// at the maximum, along a sampled profile.
pub fn energy_drift(point: &LocalPoint, profile: &Profile) -> f64 {
    let p = point.p;
    let energy = |w: f64, dw: f64| 0.5 * dw * dw + 0.5 * point.gamma * w * w - w.powf(p + 1.0) / (p + 1.0);
    let reference = energy(point.k, 0.0);
    profile
        .nodes
        .iter()
        .map(|&(_, w)| ((energy(w, slope_at(point, w)) - reference) / reference).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64) -> LocalParams {
        LocalParams::new(p).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0, 2.5), 1.0);
        assert!((phi(1.0, 2.5) - 1.75).abs() < 1e-15);
        assert!((phi(0.5, 3.0) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn phi_is_continuous_across_guard() {
        for p in [1.5, 2.0, 3.0, 5.0] {
            let below = phi(1.0 - PHI_GUARD * (1.0 - 1e-9), p);
            let above = phi(1.0 - PHI_GUARD * (1.0 + 1e-9), p);
            assert!((below - above).abs() < 1e-10 * below, "p = {p}: {below} vs {above}");
        }
    }

    #[test]
    fn series_and_direct_forms_agree() {
        for p in [1.2, 2.0, 2.5, 3.0, 5.0, 7.3] {
            let t = SERIES_CUTOFF;
            let s = 1.0 - t;
            let direct = 1.0 - 2.0 * (1.0 - s.powf(p + 1.0)) / ((p + 1.0) * (1.0 - s * s));
            let series = one_minus_psi(t * (1.0 - 1e-15), p);
            assert!((direct - series).abs() < 1e-13, "p = {p}: {direct} vs {series}");
            // slope at t = 0 is (p - 1)/2
            let tiny = 1e-12;
            assert!((one_minus_psi(tiny, p) / tiny - 0.5 * (p - 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn psi_at_p3_is_closed_form() {
        // (1 - s²)/2 at p = 3
        for t in [1e-9, 0.05, 0.3, 0.9] {
            let s: f64 = 1.0 - t;
            let exact = 0.5 * (1.0 - s * s);
            assert!((one_minus_psi(t, 3.0) - exact).abs() < 1e-15);
        }
    }

    #[test]
    fn small_amplitude_limit() {
        for p in [2.0, 3.0, 5.0] {
            let pt = point_from_k(1e-6, &params(p)).unwrap();
            // γ - π² ≈ 2π A3 d^{p-1}: about 9e-8 relative at p = 2.
            let tol = if p == 2.0 { 1e-7 } else { 1e-8 };
            assert!((pt.gamma / (PI * PI) - 1.0).abs() < tol);
            assert!((pt.d * 2f64.sqrt() / pt.k - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn time_map_at_tiny_amplitude() {
        let t = time_map(1e-8, PI * PI, &params(3.0)).unwrap();
        assert!((t - 0.5).abs() < 1e-10);
    }

    #[test]
    fn time_map_rejects_gamma_below_amplitude_curve() {
        let err = time_map(2.0, 3.9, &params(3.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket(_)));
    }

    #[test]
    fn solved_point_has_half_time_map() {
        let par = params(2.5);
        for k in [0.1, 1.0, 10.0, 300.0] {
            let pt = point_from_k(k, &par).unwrap();
            assert!((pt.time_map(&par).unwrap() - 0.5).abs() < 1e-12, "k = {k}");
            // the gap is below one ulp of γ for large k
            assert!(pt.gamma >= pt.k.powf(1.5) && pt.log_gap.is_finite());
            assert!(pt.gamma > PI * PI);
            assert!(pt.d > 0.0 && pt.d < pt.k);
        }
    }

    #[test]
    fn large_amplitude_gap_underflows_cleanly() {
        let par = params(5.0);
        let pt = point_from_k(100.0, &par).unwrap();
        assert!(pt.log_gap < -700.0);
        let ratio = pt.gamma / 1e8;
        assert!(ratio > 1.0 - 1e-15 && ratio < 1.01);
    }

    #[test]
    fn from_gamma_inverts_from_k() {
        let par = params(3.0);
        for k in [0.3, 2.0, 20.0] {
            let a = point_from_k(k, &par).unwrap();
            let b = point_from_gamma(a.gamma, &par).unwrap();
            assert!((a.k - b.k).abs() < 1e-10 * k, "k = {k}: {} vs {}", a.k, b.k);
        }
        assert!(matches!(point_from_gamma(9.0, &par), Err(Error::NoSolution(_))));
    }

    #[test]
    fn solve_for_d_round_trip() {
        let par = params(5.0);
        for k in [0.01, 1.5, 40.0] {
            let pt = point_from_k(k, &par).unwrap();
            let back = solve_for_d(pt.d, &par).unwrap();
            assert!((back.k / k - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn profile_shape() {
        let par = params(3.0);
        let pt = point_from_k(1.0, &par).unwrap();
        let prof = sample_profile(&pt, 41, &par).unwrap();
        let n = prof.nodes.len();
        assert_eq!(n, 81);
        assert_eq!(prof.nodes[0], (0.0, 0.0));
        assert!((prof.nodes[40].0 - 0.5).abs() < 1e-10);
        assert_eq!(prof.nodes[40].1, pt.k);
        for i in 0..n {
            let (x, w) = prof.nodes[i];
            let (xm, wm) = prof.nodes[n - 1 - i];
            assert!((x + xm - 1.0).abs() < 1e-15);
            assert!((w - wm).abs() <= 1e-10 * pt.k);
        }
        for pair in prof.nodes[..41].windows(2) {
            assert!(pair[1].0 > pair[0].0 && pair[1].1 > pair[0].1);
        }
        assert!(energy_drift(&pt, &prof) < 1e-8);
    }

    #[test]
    fn profile_value_matches_samples() {
        let par = params(2.0);
        let pt = point_from_k(3.0, &par).unwrap();
        let prof = sample_profile(&pt, 11, &par).unwrap();
        for &(x, w) in &prof.nodes {
            let v = profile_value(&pt, x, &par).unwrap();
            assert!((v - w).abs() < 1e-9 * pt.k, "x = {x}: {v} vs {w}");
        }
    }

    #[test]
    fn norms_increase_toward_amplitude() {
        let par = params(3.0);
        let pt = point_from_k(1.0, &par).unwrap();
        let mut prev = 0.0;
        for q in [2.0, 4.0, 8.0, 16.0, 64.0] {
            let v = pt.q_norm(q, &par).unwrap();
            assert!(v > prev && v <= pt.k);
            prev = v;
        }
        assert!((pt.q_norm(2.0, &par).unwrap() - pt.d).abs() < 1e-15);
    }
}
