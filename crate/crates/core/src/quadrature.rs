//! One-dimensional quadrature on finite intervals.
//!
//! Two rules are provided:
//!
//! * adaptive Gauss–Legendre: panels are bisected where the 10- and 20-point
//!   rules disagree most, for smooth integrands;
//! * double exponential (tanh-sinh): level refinement of the step in the
//!   transformed variable, for integrands with `(b - x)^{-1/2}` type endpoint
//!   behaviour or removable `0/0` endpoints.
//!
//! Neither rule evaluates the integrand exactly at `a` or `b`. Callers that
//! need a limiting endpoint value build it into the integrand.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrature rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRule {
    GaussLegendreAdaptive,
    DoubleExponential,
}

/// Accuracy controls for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of a panel (Gauss–Legendre) or maximum number
    /// of step halvings (double exponential).
    pub max_refinements: u32,
    pub rule: QuadRule,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_refinements: 30,
            rule: QuadRule::GaussLegendreAdaptive,
        }
    }
}

impl QuadSpec {
    pub fn with_rule(self, rule: QuadRule) -> Self {
        Self { rule, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_refinements < 1 {
            return Err(Error::InvalidParameter(format!(
                "quadrature spec needs rel_tol > 0, abs_tol > 0, max_refinements >= 1 (got {self:?})"
            )));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Integrate `f` over `(a, b)` with the rule and tolerances of `spec`.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    validate(a, b, spec)?;
    let g = |x: f64, _: f64| f(x);
    match spec.rule {
        QuadRule::GaussLegendreAdaptive => gauss_legendre_adaptive(&g, a, b, spec),
        QuadRule::DoubleExponential => double_exponential(&g, a, b, spec, false),
    }
}

fn validate(a: f64, b: f64, spec: &QuadSpec) -> Result<()> {
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "integration interval must satisfy a < b, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Like [`integrate`], but `f(x, b - x)` also receives the distance to the
/// upper endpoint, computed without the rounding of `b - x`. Integrands that
/// are singular at `b` need it: within one ulp of `b = 1` a `(1 - s)^{-1/2}`
/// kernel still carries mass of order 1e-8. Nodes that lie strictly inside
/// the interval may then arrive with `x` rounded to `b`, but always with a
/// positive complement.
pub fn integrate_with_complement<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    validate(a, b, spec)?;
    match spec.rule {
        QuadRule::GaussLegendreAdaptive => gauss_legendre_adaptive(&f, a, b, spec),
        QuadRule::DoubleExponential => double_exponential(&f, a, b, spec, true),
    }
}

/// Convenience wrapper returning only the value.
pub fn integrate_value<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(f, a, b, spec).map(|r| r.value)
}

/// Value-only form of [`integrate_with_complement`].
pub fn integrate_value_with_complement<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    integrate_with_complement(f, a, b, spec).map(|r| r.value)
}

// ---------------------------------------------------------------------------
// Gauss–Legendre

struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1], by
/// Newton iteration on the Legendre recurrence.
fn gauss_legendre_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

fn gl10() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(10))
}

fn gl20() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(20))
}

fn apply_rule<F: Fn(f64, f64) -> f64>(f: &F, rule: &GaussRule, a: f64, b: f64, upper: f64) -> Result<f64> {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let xi = c + hw * x;
        let v = f(xi, upper - xi);
        if !v.is_finite() {
            return Err(Error::NonFinite { x: xi });
        }
        sum += w * v;
    }
    Ok(sum * hw)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties broken by position for determinism.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

const MAX_PANELS: usize = 200_000;

fn gauss_legendre_adaptive<F: Fn(f64, f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult> {
    let upper = b;
    let mut evaluations = 0usize;
    let mut eval_panel = |a: f64, b: f64, depth: u32| -> Result<Panel> {
        let coarse = apply_rule(f, gl10(), a, b, upper)?;
        let fine = apply_rule(f, gl20(), a, b, upper)?;
        evaluations += 30;
        Ok(Panel {
            a,
            b,
            value: fine,
            error: (fine - coarse).abs(),
            depth,
        })
    };

    let root = eval_panel(a, b, 0)?;
    let mut total_value = root.value;
    let mut total_error = root.error;
    let mut active = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    active.push(root);

    while total_error > spec.tolerance(total_value) {
        let Some(worst) = active.pop() else {
            return Err(Error::NoConvergence {
                what: "adaptive Gauss-Legendre quadrature",
                estimate: total_error,
            });
        };
        if worst.depth >= spec.max_refinements {
            frozen.push(worst);
            continue;
        }
        if active.len() + frozen.len() > MAX_PANELS {
            return Err(Error::NoConvergence {
                what: "adaptive Gauss-Legendre quadrature (panel limit)",
                estimate: total_error,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = eval_panel(worst.a, mid, worst.depth + 1)?;
        let right = eval_panel(mid, worst.b, worst.depth + 1)?;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }

    // Re-sum in interval order so the result does not depend on drift in the
    // running totals.
    let mut panels: Vec<Panel> = active.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error_estimate = panels.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        error_estimate,
        evaluations,
    })
}

// ---------------------------------------------------------------------------
// Double exponential

/// Largest transformed abscissa; beyond it the node distance to the endpoint
/// underflows.
const DE_T_MAX: f64 = 6.5;
const DE_MIN_LEVELS: u32 = 3;

/// Contribution `w(t) f(x(t))` of one tanh-sinh node, or zero when the node
/// coincides with an endpoint in floating point.
fn de_term<F: Fn(f64, f64) -> f64>(
    f: &F,
    t: f64,
    a: f64,
    b: f64,
    evals: &mut usize,
    keep_rounded: bool,
) -> Result<f64> {
    let hw = 0.5 * (b - a);
    let u = FRAC_PI_2 * t.sinh();
    // 1 - tanh|u|, computed without cancellation.
    let dist = 2.0 / (1.0 + (2.0 * u.abs()).exp());
    if dist == 0.0 {
        return Ok(0.0);
    }
    let (x, complement) = if u >= 0.0 {
        (b - hw * dist, hw * dist)
    } else {
        let x = a + hw * dist;
        (x, b - x)
    };
    if x <= a || complement <= 0.0 || (!keep_rounded && x >= b) {
        return Ok(0.0);
    }
    let weight = FRAC_PI_2 * t.cosh() * dist * (2.0 - dist);
    if weight == 0.0 {
        return Ok(0.0);
    }
    let v = f(x, complement);
    *evals += 1;
    if !v.is_finite() {
        return Err(Error::NonFinite { x });
    }
    Ok(weight * v)
}

fn double_exponential<F: Fn(f64, f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
    keep_rounded: bool,
) -> Result<QuadResult> {
    let hw = 0.5 * (b - a);
    let mut evaluations = 0usize;

    // Level 0: unit step.
    let mut h = 1.0;
    let mut raw = de_term(f, 0.0, a, b, &mut evaluations, keep_rounded)?;
    let mut j = 1.0;
    while j <= DE_T_MAX {
        raw += de_term(f, j, a, b, &mut evaluations, keep_rounded)?;
        raw += de_term(f, -j, a, b, &mut evaluations, keep_rounded)?;
        j += 1.0;
    }
    let mut estimate = raw * h * hw;
    let mut error = f64::INFINITY;

    for level in 1..=spec.max_refinements {
        h *= 0.5;
        // New nodes are the odd multiples of the halved step.
        let mut fresh = 0.0;
        let mut t = h;
        while t <= DE_T_MAX {
            fresh += de_term(f, t, a, b, &mut evaluations, keep_rounded)?;
            fresh += de_term(f, -t, a, b, &mut evaluations, keep_rounded)?;
            t += 2.0 * h;
        }
        raw += fresh;
        let next = raw * h * hw;
        error = (next - estimate).abs();
        estimate = next;
        if level >= DE_MIN_LEVELS && error <= spec.tolerance(estimate) {
            return Ok(QuadResult {
                value: estimate,
                error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::NoConvergence {
        what: "double exponential quadrature",
        estimate: error,
    })
}
