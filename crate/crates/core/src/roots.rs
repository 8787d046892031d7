//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a verified sign-change bracket `[a, b]`.
///
/// Terminates once the bracket is narrower than `2·eps·|x| + xtol`.
pub(crate) fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    const MAX_ITER: usize = 300;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidBracket(format!(
            "f({a}) = {fa} and f({b}) = {fb} have the same sign"
        )));
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NoConvergence {
        what: "Brent root finder",
        estimate: (c - b).abs(),
    })
}

/// Expand from `start` in steps that double each time, moving in the
/// direction that reduces `|f|` for a monotone `f`, until the sign changes;
/// then refine with Brent.
///
/// `increasing` states whether `f` is increasing in its argument.
pub(crate) fn solve_monotone<F>(
    mut f: F,
    start: f64,
    first_step: f64,
    increasing: bool,
    xtol: f64,
    max_expansions: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f0 = f(start)?;
    if f0 == 0.0 {
        return Ok(start);
    }
    // For an increasing function a positive value means the root is to the left.
    let dir = if (f0 > 0.0) == increasing { -1.0 } else { 1.0 };
    let mut step = first_step;
    let (mut x_prev, mut f_prev) = (start, f0);
    for _ in 0..max_expansions {
        let x = x_prev + dir * step;
        let fx = f(x)?;
        if fx.signum() != f_prev.signum() || fx == 0.0 {
            let (lo, flo, hi, fhi) = if x < x_prev {
                (x, fx, x_prev, f_prev)
            } else {
                (x_prev, f_prev, x, fx)
            };
            return brent(f, lo, hi, flo, fhi, xtol);
        }
        if (fx.abs() > f_prev.abs()) && fx.signum() == f_prev.signum() {
            return Err(Error::MonotonicityViolation(format!(
                "|f| grew from {f_prev:e} to {fx:e} while moving toward the root"
            )));
        }
        x_prev = x;
        f_prev = fx;
        step *= 2.0;
    }
    Err(Error::BracketFailure(format!(
        "no sign change within {max_expansions} expansions from {start}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_cubic() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let r = brent(f, 0.0, 2.0, -2.0, 6.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_bad_bracket() {
        let err = brent(|x: f64| Ok(x * x + 1.0), -1.0, 1.0, 2.0, 2.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket(_)));
    }

    #[test]
    fn monotone_expansion_both_directions() {
        let r = solve_monotone(|x: f64| Ok(x.exp() - 1e6), 0.0, 1.0, true, 1e-14, 60).unwrap();
        assert!((r - 1e6f64.ln()).abs() < 1e-12);
        let r = solve_monotone(|x: f64| Ok(5.0 - x), 100.0, 1.0, false, 1e-14, 60).unwrap();
        assert!((r - 5.0).abs() < 1e-12);
    }

    #[test]
    fn monotone_expansion_gives_up() {
        let err = solve_monotone(|_| Ok(1.0), 0.0, 1.0, true, 1e-12, 5).unwrap_err();
        assert!(matches!(err, Error::BracketFailure(_)));
    }
}
