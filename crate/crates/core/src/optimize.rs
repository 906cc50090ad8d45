//! Scalar bracketing solvers: bisection for roots, golden-section search for minima.

use crate::error::{Error, Result};

/// Result of a golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimizes a unimodal `f` on `[a, b]` until the bracket is narrower than `xtol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64) -> Result<Minimum> {
    if !(a.is_finite() && b.is_finite() && a < b) || !(xtol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "golden section needs a < b and xtol > 0 (a={a}, b={b}, xtol={xtol})"
        )));
    }
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while hi - lo > xtol && iterations < 500 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iterations += 1;
    }
    // the bracket endpoints are candidates too: a monotone f has its infimum there
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(Minimum {
        x: best.0,
        value: best.1,
        iterations,
    })
}

/// Finds a sign change of `f` in `[a, b]` by bisection, to `xtol` or until
/// the midpoint no longer separates the endpoints.
pub fn bisect<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "bisection bracket [{lo}, {hi}] does not straddle a root"
        )));
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
