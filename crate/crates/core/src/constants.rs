//! Closed-form asymptotic constants of the bifurcation curves.
//!
//! All integrals carrying a `(1 - s²)^{-3/2}(1 - s^{p+1})` kernel are
//! evaluated as `φ(s) (1 - s²)^{-1/2}` with the double exponential rule, so
//! they share one singular kernel class.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_logistic::{one_minus_psi, phi};
use crate::quadrature::{integrate_value_with_complement, QuadRule, QuadSpec};

/// Which exponent denominator enters the `π` powers of `E3` and `E5`.
///
/// `PaperDefinition` uses `(p - 1) q` as in the stated definition of `E3`;
/// `ProofVariant` uses `(p - 3) q`, the form that appears when `α²` is first
/// expanded in powers of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E3Reading {
    PaperDefinition,
    ProofVariant,
}

impl E3Reading {
    pub const ALL: [E3Reading; 2] = [E3Reading::PaperDefinition, E3Reading::ProofVariant];

    fn denominator(self, p: f64, q: f64) -> f64 {
        match self {
            E3Reading::PaperDefinition => (p - 1.0) * q,
            E3Reading::ProofVariant => (p - 3.0) * q,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            E3Reading::PaperDefinition => "paper_definition",
            E3Reading::ProofVariant => "proof_variant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AConstants {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Not used by any of the curve expansions; kept for completeness.
    pub a5: f64,
    /// Undefined at `p = 3`.
    pub a6: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EConstants {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub e5: f64,
}

fn check_exponents(p: f64, q: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent p must exceed 1, got {p}")));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent q must be positive, got {q}")));
    }
    Ok(())
}

fn de(quad: &QuadSpec) -> QuadSpec {
    quad.with_rule(QuadRule::DoubleExponential)
}

/// `∫_0^1 weight(s) / sqrt(1 - s²) ds`.
fn arcsine_moment<W: Fn(f64) -> f64>(weight: W, quad: &QuadSpec) -> Result<f64> {
    integrate_value_with_complement(|s, c| weight(s) / (c * (1.0 + s)).sqrt(), 0.0, 1.0, &de(quad))
}

fn root2_pow(p: f64) -> f64 {
    2f64.sqrt().powf(p - 1.0)
}

/// `A1 = ∫_0^1 s^q / sqrt(1 - s²) ds`.
pub fn compute_a1(q: f64, quad: &QuadSpec) -> Result<f64> {
    arcsine_moment(|s| s.powf(q), quad)
}

/// `A2 = (√2)^{p-1} / ((p+1)π²) ∫_0^1 s^q φ(s) / sqrt(1 - s²) ds`.
pub fn compute_a2(p: f64, q: f64, quad: &QuadSpec) -> Result<f64> {
    let integral = arcsine_moment(|s| s.powf(q) * phi(s, p), quad)?;
    Ok(root2_pow(p) / ((p + 1.0) * PI * PI) * integral)
}

/// `A3 = 2 (√2)^{p-1} / ((p+1)π²) ∫_0^1 φ(s) / sqrt(1 - s²) ds`.
pub fn compute_a3(p: f64, quad: &QuadSpec) -> Result<f64> {
    let integral = arcsine_moment(|s| phi(s, p), quad)?;
    Ok(2.0 * root2_pow(p) / ((p + 1.0) * PI * PI) * integral)
}

/// `A5 = 1 / ((p+1)π²) ∫_0^1 s² φ(s) / sqrt(1 - s²) ds`.
pub fn compute_a5(p: f64, quad: &QuadSpec) -> Result<f64> {
    let integral = arcsine_moment(|s| s * s * phi(s, p), quad)?;
    Ok(integral / ((p + 1.0) * PI * PI))
}

/// `A6 = 4 A3 / ((p - 3) q π)`.
pub fn compute_a6(p: f64, q: f64, a3: f64) -> Result<f64> {
    if p == 3.0 {
        return Err(Error::DivisionByZero("A6 is undefined at p = 3"));
    }
    Ok(4.0 * a3 / ((p - 3.0) * q * PI))
}

/// `A1` through `A6`.
///
/// `A4` is the coefficient of the small-`d` expansion of `k²/(2d²)`. It is
/// built from `A2` at `q = 2`, because that expansion comes from the `L²`
/// norm whatever `q` is; for `q = 2` this is the usual `(A3 - 4 A2)/π`.
pub fn compute_a(p: f64, q: f64, quad: &QuadSpec) -> Result<AConstants> {
    check_exponents(p, q)?;
    let a1 = compute_a1(q, quad)?;
    let a2 = compute_a2(p, q, quad)?;
    let a2_l2 = if q == 2.0 { a2 } else { compute_a2(p, 2.0, quad)? };
    let a3 = compute_a3(p, quad)?;
    let a4 = (a3 - 4.0 * a2_l2) / PI;
    let a5 = compute_a5(p, quad)?;
    let a6 = compute_a6(p, q, a3).ok();
    Ok(AConstants { a1, a2, a3, a4, a5, a6 })
}

/// `C1 = (p+3) ∫_0^1 sqrt((p-1)/(p+1) - s² + 2 s^{p+1}/(p+1)) ds`.
///
/// The radicand equals `(1 - s²) G(1 - s)` and is evaluated in that form,
/// which keeps its double zero at `s = 1` free of cancellation.
pub fn compute_c1(p: f64, quad: &QuadSpec) -> Result<f64> {
    check_exponents(p, 2.0)?;
    let integral =
        integrate_value_with_complement(|s, c| (c * (1.0 + s) * one_minus_psi(c, p)).sqrt(), 0.0, 1.0, &de(quad))?;
    Ok((p + 3.0) * integral)
}

/// Integrand of `C(q)` at `s` given `c = 1 - s`; the removable limit at
/// `s = 1` is `q / sqrt(p - 1)`.
fn cq_integrand_complement(c: f64, p: f64, q: f64) -> f64 {
    if c < 1e-14 {
        return q / (p - 1.0).sqrt();
    }
    let s = 1.0 - c;
    let num = -(q * (-c).ln_1p()).exp_m1();
    num / (c * (1.0 + s) * one_minus_psi(c, p)).sqrt()
}

/// `(1 - s^q) / sqrt(1 - s² - 2(1 - s^{p+1})/(p+1))`.
pub fn cq_integrand(s: f64, p: f64, q: f64) -> f64 {
    cq_integrand_complement(1.0 - s, p, q)
}

/// `C(q) = 2 ∫_0^1 (1 - s^q) / sqrt(1 - s² - 2(1 - s^{p+1})/(p+1)) ds`.
pub fn compute_cq(p: f64, q: f64, quad: &QuadSpec) -> Result<f64> {
    check_exponents(p, q)?;
    let integral = integrate_value_with_complement(|_, c| cq_integrand_complement(c, p, q), 0.0, 1.0, &de(quad))?;
    Ok(2.0 * integral)
}

fn check_subcritical(p: f64, a1: f64, a2: f64) -> Result<()> {
    if !(p > 1.0 && p < 3.0) {
        return Err(Error::InvalidRegime(format!(
            "the E constants need 1 < p < 3, got p = {p}"
        )));
    }
    if a1 < 0.0 || a2 < 0.0 {
        return Err(Error::InvalidParameter("a1 and a2 must be nonnegative".into()));
    }
    if a1 + a2 == 0.0 {
        return Err(Error::ZeroCoefficients);
    }
    Ok(())
}

fn e_from_a(p: f64, q: f64, a1: f64, a2: f64, a: &AConstants, reading: E3Reading) -> EConstants {
    let m = reading.denominator(p, q);
    let k = 2f64.powf((q + 2.0) / q) * a.a1.powf(2.0 / q);
    let e1 = a1 * k + a2 * PI.powf(2.0 / q);
    let e2 = a1 * k * (a.a4 + 2.0 / q * a.a2 / a.a1) + 2.0 * a2 * PI.powf((2.0 - q) / q) / q * a.a3;
    let e3 = PI.powf(-4.0 / m) * e1.powf(2.0 / (p - 3.0));
    let e4 = 2.0 * (q * (p - 3.0) - (p - 1.0)) / (q * (p - 3.0) * PI) * a.a3;
    let a6 = 4.0 * a.a3 / ((p - 3.0) * q * PI);
    let e5 = (2.0 / (p - 3.0) * e2 / e1 - a6) * PI.powf(2.0 * (p - 3.0) / m) / e1;
    EConstants { e1, e2, e3, e4, e5 }
}

/// `E1` through `E5` for `1 < p < 3` under the chosen `E3` reading.
pub fn compute_e(p: f64, q: f64, a1: f64, a2: f64, reading: E3Reading, quad: &QuadSpec) -> Result<EConstants> {
    check_subcritical(p, a1, a2)?;
    let a = compute_a(p, q, quad)?;
    Ok(e_from_a(p, q, a1, a2, &a, reading))
}

fn coefficients_from_e(p: f64, q: f64, e: &EConstants) -> (f64, f64) {
    let leading = PI.powf(2.0 * (q * (p - 3.0) - (p - 1.0)) / (q * (p - 3.0))) * e.e1 / e.e3;
    let half = (p - 3.0) / 2.0;
    let second = (e.e2 / e.e1 + e.e4 - e.e3.powf(half) * e.e5) * e.e3.powf(-half);
    (leading, second)
}

/// `(Λ₀, c₂)` of the stated subcritical expansion
/// `λ(α) = Λ₀ α² (1 + c₂ α^{p-3} + o(α^{p-3}))`.
pub fn theorem3_coefficients(
    p: f64,
    q: f64,
    a1: f64,
    a2: f64,
    reading: E3Reading,
    quad: &QuadSpec,
) -> Result<(f64, f64)> {
    let e = compute_e(p, q, a1, a2, reading, quad)?;
    Ok(coefficients_from_e(p, q, &e))
}

/// Subcritical coefficients obtained from the exact identity
/// `λ/α² = γ (a1 ‖w‖_q² + a2 d²) / d²` and the small-`d` expansions of `γ`,
/// `k²` and `‖w‖_q²`:
///
/// ```text
///     λ/α² = π^{2(q-1)/q} E1 (1 + (E2/E1 + 2(q-1) A3/(q π)) d^{p-1} + …),
///     d^{p-1} = E3^{-(p-3)/2} α^{p-3} (1 + …)   with E3 = π^{-4/((p-3)q)} E1^{2/(p-3)}.
/// ```
pub fn subcritical_direct_coefficients(p: f64, q: f64, a1: f64, a2: f64, quad: &QuadSpec) -> Result<(f64, f64)> {
    check_subcritical(p, a1, a2)?;
    let a = compute_a(p, q, quad)?;
    let e = e_from_a(p, q, a1, a2, &a, E3Reading::ProofVariant);
    let leading = PI.powf(2.0 * (q - 1.0) / q) * e.e1;
    let second = e.e3.powf(-(p - 3.0) / 2.0) * (e.e2 / e.e1 + 2.0 * (q - 1.0) * a.a3 / (q * PI));
    Ok((leading, second))
}

/// Every constant for one parameter set, as a flat record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantSet {
    pub p: f64,
    pub q: f64,
    pub a1: f64,
    pub a2: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "Cq")]
    pub cq: f64,
    #[serde(rename = "A1")]
    pub big_a1: f64,
    #[serde(rename = "A2")]
    pub big_a2: f64,
    #[serde(rename = "A3")]
    pub big_a3: f64,
    #[serde(rename = "A4")]
    pub big_a4: f64,
    #[serde(rename = "A5")]
    pub big_a5: f64,
    #[serde(rename = "A6")]
    pub big_a6: Option<f64>,
    #[serde(rename = "E1")]
    pub e1: Option<f64>,
    #[serde(rename = "E2")]
    pub e2: Option<f64>,
    #[serde(rename = "E3")]
    pub e3: Option<f64>,
    #[serde(rename = "E4")]
    pub e4: Option<f64>,
    #[serde(rename = "E5")]
    pub e5: Option<f64>,
    pub e3_reading: E3Reading,
    pub leading_coeff: Option<f64>,
    pub second_coeff: Option<f64>,
}

impl ConstantSet {
    /// The `E` constants and the expansion coefficients are only filled in
    /// for `1 < p < 3`; `A6` is absent at `p = 3`.
    pub fn compute(p: f64, q: f64, a1: f64, a2: f64, reading: E3Reading, quad: &QuadSpec) -> Result<Self> {
        check_exponents(p, q)?;
        if a1 < 0.0 || a2 < 0.0 {
            return Err(Error::InvalidParameter("a1 and a2 must be nonnegative".into()));
        }
        if a1 + a2 == 0.0 {
            return Err(Error::ZeroCoefficients);
        }
        let a = compute_a(p, q, quad)?;
        let c1 = compute_c1(p, quad)?;
        let cq = compute_cq(p, q, quad)?;
        let sub = if p > 1.0 && p < 3.0 {
            let e = e_from_a(p, q, a1, a2, &a, reading);
            Some((e, coefficients_from_e(p, q, &e)))
        } else {
            None
        };
        Ok(Self {
            p,
            q,
            a1,
            a2,
            c1,
            cq,
            big_a1: a.a1,
            big_a2: a.a2,
            big_a3: a.a3,
            big_a4: a.a4,
            big_a5: a.a5,
            big_a6: a.a6,
            e1: sub.map(|(e, _)| e.e1),
            e2: sub.map(|(e, _)| e.e2),
            e3: sub.map(|(e, _)| e.e3),
            e4: sub.map(|(e, _)| e.e4),
            e5: sub.map(|(e, _)| e.e5),
            e3_reading: reading,
            leading_coeff: sub.map(|(_, c)| c.0),
            second_coeff: sub.map(|(_, c)| c.1),
        })
    }
}
