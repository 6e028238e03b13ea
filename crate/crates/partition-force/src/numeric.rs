//! Small shared numerical kernels: bracketed root refinement and
//! golden-section minimization.

/// Refine a root of `f` inside a sign-changing bracket `[lo, hi]` by bisection.
///
/// Iterates until the bracket width drops below `x_tol` (absolute) or
/// `max_iter` halvings, whichever comes first. Returns the midpoint and the
/// final bracket. Caller guarantees `f(lo)` and `f(hi)` have opposite signs.
pub(crate) fn bisect_root<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> (f64, (f64, f64), usize) {
    let mut f_lo = f(lo);
    let mut iterations = 0;
    for _ in 0..max_iter {
        if (hi - lo).abs() <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket exhausted at f64 resolution
        }
        let f_mid = f(mid);
        iterations += 1;
        if f_mid == 0.0 {
            return (mid, (mid, mid), iterations);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), (lo, hi), iterations)
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Assumes `f` is unimodal on the interval; returns the abscissa of the
/// minimum once the interval shrinks below `x_tol`.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
) -> f64 {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (hi - lo).abs() > x_tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
