//! Sturm-sequence bisection for symmetric tridiagonal matrices.
//!
//! The LDLT pivot signs at shift `lambda` count the eigenvalues strictly
//! below `lambda`; bisecting that count isolates each eigenvalue. With
//! strictly positive off-diagonals the eigenvalues are simple, so every
//! bracket converges to a distinct root.

/// Number of eigenvalues strictly below `lambda`.
///
/// `diag` holds the main diagonal, `offdiag` the sub/super-diagonal
/// (one entry shorter).
pub fn sturm_count(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    debug_assert_eq!(offdiag.len() + 1, diag.len().max(1));
    let mut count = 0;
    let mut q = 1.0f64;
    // Guard against exact zero pivots when lambda hits an eigenvalue of a
    // leading principal minor.
    let pivmin = f64::MIN_POSITIVE
        .max(offdiag.iter().fold(0.0f64, |m, &e| m.max(e * e)) * f64::EPSILON * f64::EPSILON);
    for i in 0..diag.len() {
        let off = if i == 0 { 0.0 } else { offdiag[i - 1] };
        q = (diag[i] - lambda) - off * off / q;
        if q.abs() < pivmin {
            q = if q < 0.0 { -pivmin } else { pivmin };
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues in ascending order, bisected to machine precision.
pub fn eigenvalues(diag: &[f64], offdiag: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![diag[0]];
    }

    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                break;
            }
            if sturm_count(diag, offdiag, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_by_two_complete_graph_block() {
        // [[0, sqrt(3)], [sqrt(3), 2]] has eigenvalues -1 and 3.
        let evals = eigenvalues(&[0.0, 2.0], &[3.0f64.sqrt()]);
        assert_abs_diff_eq!(evals[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(evals[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn free_chain_matches_cosine_spectrum() {
        // Zero diagonal, unit off-diagonal: eigenvalues 2 cos(k pi / (n+1)).
        let n = 24;
        let diag = vec![0.0; n];
        let off = vec![1.0; n - 1];
        let evals = eigenvalues(&diag, &off);
        for (idx, &ev) in evals.iter().enumerate() {
            let k = n - idx; // ascending order reverses the cosine index
            let exact = 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_abs_diff_eq!(ev, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn count_is_consistent_with_eigenvalues() {
        let diag = [0.0, 0.0, 0.0];
        let off = [2.0, 12.0f64.sqrt()];
        assert_eq!(sturm_count(&diag, &off, -5.0), 0);
        assert_eq!(sturm_count(&diag, &off, -1.0), 1);
        assert_eq!(sturm_count(&diag, &off, 0.5), 2);
        assert_eq!(sturm_count(&diag, &off, 10.0), 3);
        // Exact hit on an eigenvalue counts strictly below.
        assert_eq!(sturm_count(&diag, &off, 0.0), 1);
    }

    #[test]
    fn scaling_the_matrix_scales_the_spectrum() {
        let diag = [0.0, 2.0, 0.5];
        let off = [1.5, 0.25];
        let base = eigenvalues(&diag, &off);
        let c = 3.75;
        let scaled_diag: Vec<f64> = diag.iter().map(|x| c * x).collect();
        let scaled_off: Vec<f64> = off.iter().map(|x| c * x).collect();
        let scaled = eigenvalues(&scaled_diag, &scaled_off);
        for (s, b) in scaled.iter().zip(&base) {
            assert_abs_diff_eq!(*s, c * b, epsilon = 1e-11 * (1.0 + c * b.abs()));
        }
    }

    #[test]
    fn ascending_order() {
        let evals = eigenvalues(&[3.0, -1.0, 0.0, 2.0], &[0.7, 1.3, 0.2]);
        for pair in evals.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }
}
