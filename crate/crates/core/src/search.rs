//! One-dimensional maximization.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Stops once `converged(lo, hi)` holds for the current bracket, when the
/// bracket can no longer shrink in floating point, or after `max_iter`
/// iterations. Returns the better of the two interior probes.
pub fn golden_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    converged: impl Fn(f64, f64) -> bool,
    max_iter: usize,
) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..max_iter {
        if converged(lo, hi) || !(x1 > lo && x2 < hi && x1 < x2) {
            break;
        }
        if f1 >= f2 {
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
    }

    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
