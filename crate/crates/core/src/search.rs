//! Bisection on monotone predicates over `[0,1]`.

/// `sup{t ∈ [0,1] : holds(t)}` for a predicate true on a lower set.
///
/// Returns 0 for the empty set. The result approaches the boundary from the
/// failing side, so jumps resolve to the upper endpoint.
pub(crate) fn sup_lower_set(holds: impl Fn(f64) -> bool, iterations: u32) -> f64 {
    if holds(1.0) {
        return 1.0;
    }
    if !holds(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `inf{c ∈ [0,1] : holds(c)}` for a predicate true on an upper set.
///
/// Stops once the bracket is narrower than `tol`. Returns 1 for the empty set.
pub(crate) fn inf_upper_set(holds: impl Fn(f64) -> bool, tol: f64) -> f64 {
    if holds(0.0) {
        return 0.0;
    }
    if !holds(1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_of_threshold() {
        let s = sup_lower_set(|t| t <= 0.3, 60);
        assert!((s - 0.3).abs() < 1e-15);
        assert_eq!(sup_lower_set(|_| true, 60), 1.0);
        assert_eq!(sup_lower_set(|_| false, 60), 0.0);
    }

    #[test]
    fn sup_at_jump_takes_upper_side() {
        // true on [0, 0.5): the supremum is 0.5 itself
        let s = sup_lower_set(|t| t < 0.5, 60);
        assert!(s >= 0.5 && s - 0.5 < 1e-15);
    }

    #[test]
    fn inf_of_threshold() {
        let c = inf_upper_set(|c| c >= 0.42, 1e-9);
        assert!(c >= 0.42 && c - 0.42 < 1e-9);
        assert_eq!(inf_upper_set(|_| true, 1e-9), 0.0);
    }
}
