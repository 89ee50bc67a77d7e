//! The search Hamiltonian restricted to the Krylov subspace, and the exact
//! ground-truth quantities derived from it.
//!
//! The full Hamiltonian is `H(s) = gamma (1-s) L + s (I - |m><m|)` with
//! `L = D I - A`. The Krylov subspace from the marked vertex is invariant
//! under both terms, so restricting to it is exact, not an approximation:
//! in the Krylov basis the matrix is `a I - gamma (1-s) T - s e0 e0^T` with
//! `a = gamma D (1-s) + s` and `T` the Jacobi matrix. The identity shift is
//! kept so absolute eigenvalues match the unreduced operator.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lanczos::{lanczos, KrylovReduction};

/// Largest vertex count accepted for dense full-space diagonalization.
pub const FULL_DIAG_MAX: usize = 512;

/// Reduced search Hamiltonian builder.
#[derive(Debug, Clone)]
pub struct ReducedHamiltonian {
    jacobi: DMatrix<f64>,
    degree: usize,
}

impl ReducedHamiltonian {
    pub fn new(kr: &KrylovReduction, degree: usize) -> ReducedHamiltonian {
        ReducedHamiltonian {
            jacobi: kr.jacobi_matrix(),
            degree,
        }
    }

    pub fn dim(&self) -> usize {
        self.jacobi.nrows()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The `d x d` symmetric matrix at interpolation point `s` and hopping
    /// strength `gamma`.
    pub fn matrix(&self, s: f64, gamma: f64) -> Result<DMatrix<f64>> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "interpolation parameter must satisfy 0 <= s <= 1, got {s}"
            )));
        }
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "hopping strength must be positive, got {gamma}"
            )));
        }
        let d = self.dim();
        let shift = gamma * self.degree as f64 * (1.0 - s) + s;
        let mut h = &self.jacobi * (-(gamma * (1.0 - s)));
        for i in 0..d {
            h[(i, i)] += shift;
        }
        h[(0, 0)] -= s;
        Ok(h)
    }

    /// Exact instantaneous gap `E_1(s) - E_0(s)` from dense diagonalization.
    pub fn exact_gap(&self, s: f64, gamma: f64) -> Result<f64> {
        let levels = self.levels(s, gamma)?;
        if levels.len() < 2 {
            return Err(Error::InvalidParameter(
                "gap needs at least a 2-dimensional reduction".into(),
            ));
        }
        Ok(levels[1] - levels[0])
    }

    /// All reduced eigenvalues, ascending.
    pub fn levels(&self, s: f64, gamma: f64) -> Result<Vec<f64>> {
        let h = self.matrix(s, gamma)?;
        Ok(sorted_eigenvalues(&h))
    }

    /// Minimize the exact gap over `s` in `[0, 1]`: coarse scan on 1001
    /// uniform points, then golden-section refinement of the bracketing
    /// interval down to `|ds| <= 1e-10`.
    pub fn min_gap(&self, gamma: f64) -> Result<(f64, f64)> {
        let gap = |s: f64| self.exact_gap(s, gamma);
        minimize_scalar(gap, 0.0, 1.0, 1001)
    }
}

fn sorted_eigenvalues(h: &DMatrix<f64>) -> Vec<f64> {
    let mut evals: Vec<f64> = h
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    evals.sort_by(f64::total_cmp);
    evals
}

/// Coarse grid scan plus golden-section refinement of a scalar function.
/// Returns `(argmin, min)`; endpoint minima are returned as such.
pub fn minimize_scalar<F>(mut f: F, lo: f64, hi: f64, grid: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(grid >= 3 && hi > lo);
    let step = (hi - lo) / (grid - 1) as f64;
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    let mut values = Vec::with_capacity(grid);
    for k in 0..grid {
        let s = lo + step * k as f64;
        let v = f(s)?;
        values.push(v);
        if v < best {
            best = v;
            best_idx = k;
        }
    }
    let mut a = lo + step * best_idx.saturating_sub(1) as f64;
    let mut b = (lo + step * (best_idx + 1) as f64).min(hi);

    // Golden-section search inside the bracket.
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let s_star = 0.5 * (a + b);
    let g_star = f(s_star)?;
    // A grid endpoint can still be the true minimum.
    if best <= g_star {
        return Ok((lo + step * best_idx as f64, best));
    }
    Ok((s_star, g_star))
}

/// Result of comparing the reduced spectrum against the full one.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCrosscheck {
    /// Two lowest full-space levels reachable from the Krylov subspace.
    pub full_low: [f64; 2],
    /// Two lowest reduced levels.
    pub reduced_low: [f64; 2],
    /// Max absolute difference between the two pairs.
    pub max_abs_diff: f64,
    /// Worst distance from any reduced eigenvalue to the full spectrum.
    pub spectrum_deviation: f64,
}

/// Diagonalize the full `N x N` Hamiltonian and verify that the reduced
/// spectrum embeds in it.
///
/// "Reachable" levels are those whose eigenvectors overlap the Krylov
/// subspace; the dynamics started anywhere in that subspace (in particular
/// at the uniform state) can only populate these. Degenerate full levels are
/// grouped before the overlap test so that an arbitrary eigenvector basis
/// within a degenerate eigenspace cannot hide the overlap.
pub fn full_space_crosscheck(
    g: &Graph,
    marked: usize,
    s: f64,
    gamma: f64,
) -> Result<GapCrosscheck> {
    let n = g.vertex_count();
    if n > FULL_DIAG_MAX {
        return Err(Error::TooLarge {
            n,
            max: FULL_DIAG_MAX,
        });
    }
    let kr = lanczos(g, marked)?;
    let rh = ReducedHamiltonian::new(&kr, g.degree());
    let reduced = rh.levels(s, gamma)?;

    // Full Hamiltonian: gamma (1-s)(D I - A) + s (I - e_m e_m^T).
    let mut h = g.adjacency() * (-(gamma * (1.0 - s)));
    let shift = gamma * g.degree() as f64 * (1.0 - s) + s;
    for i in 0..n {
        h[(i, i)] += shift;
    }
    h[(marked, marked)] -= s;

    let eigen = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));

    // Krylov-subspace weight of each full eigenvector.
    let weight = |col: usize| -> f64 {
        let v = eigen.eigenvectors.column(col);
        kr.basis()
            .iter()
            .map(|phi| {
                let overlap = phi.dot(&DVector::from_column_slice(v.as_slice()));
                overlap * overlap
            })
            .sum()
    };

    // Group degenerate levels and sum their subspace weights.
    let mut reachable: Vec<f64> = Vec::new();
    let group_tol = 1e-8 * (1.0 + eigen.eigenvalues.amax());
    let mut idx = 0;
    while idx < n {
        let value = eigen.eigenvalues[order[idx]];
        let mut total = 0.0;
        let mut members = 0;
        while idx + members < n
            && (eigen.eigenvalues[order[idx + members]] - value).abs() <= group_tol
        {
            total += weight(order[idx + members]);
            members += 1;
        }
        if total > 1e-6 {
            reachable.push(value);
        }
        idx += members;
    }

    if reachable.len() < 2 || reduced.len() < 2 {
        return Err(Error::InvalidParameter(
            "crosscheck needs at least two reachable levels".into(),
        ));
    }

    let full_low = [reachable[0], reachable[1]];
    let reduced_low = [reduced[0], reduced[1]];
    let max_abs_diff = (full_low[0] - reduced_low[0])
        .abs()
        .max((full_low[1] - reduced_low[1]).abs());

    let mut spectrum_deviation = 0.0f64;
    for &r in &reduced {
        let nearest = (0..n)
            .map(|k| (eigen.eigenvalues[k] - r).abs())
            .fold(f64::INFINITY, f64::min);
        spectrum_deviation = spectrum_deviation.max(nearest);
    }

    Ok(GapCrosscheck {
        full_low,
        reduced_low,
        max_abs_diff,
        spectrum_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn reduced(f: Family) -> (Graph, ReducedHamiltonian) {
        let g = Graph::build_family(f).unwrap();
        let kr = lanczos(&g, 0).unwrap();
        let d = g.degree();
        (g, ReducedHamiltonian::new(&kr, d))
    }

    #[test]
    fn complete_graph_matrix_entries() {
        // With gamma = 1/N the 2x2 block is
        // (1/N) [[(1-s)(N-1), -(1-s) sqrt(N-1)], [-(1-s) sqrt(N-1), 1 + s(N-1)]].
        let n = 6usize;
        let (_, rh) = reduced(Family::Complete { n });
        let nf = n as f64;
        for &s in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            let h = rh.matrix(s, 1.0 / nf).unwrap();
            assert_relative_eq!(h[(0, 0)], (1.0 - s) * (nf - 1.0) / nf, epsilon = 1e-14);
            assert_relative_eq!(
                h[(0, 1)],
                -(1.0 - s) * (nf - 1.0).sqrt() / nf,
                epsilon = 1e-14
            );
            assert_relative_eq!(h[(1, 1)], (1.0 + s * (nf - 1.0)) / nf, epsilon = 1e-14);
        }
    }

    #[test]
    fn complete_graph_gap_closed_form() {
        let n = 16usize;
        let (_, rh) = reduced(Family::Complete { n });
        let nf = n as f64;
        for k in 0..=20 {
            let s = k as f64 / 20.0;
            let expected = ((nf - 4.0 * s * (1.0 - s) * (nf - 1.0)) / nf).sqrt();
            assert_abs_diff_eq!(rh.exact_gap(s, 1.0 / nf).unwrap(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn final_hamiltonian_is_marked_projector_complement() {
        for f in [Family::Complete { n: 8 }, Family::Crown { n: 5 }] {
            let (_, rh) = reduced(f);
            let h = rh.matrix(1.0, 0.37).unwrap();
            let d = h.nrows();
            for i in 0..d {
                for j in 0..d {
                    let want = if i == j && i > 0 { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(h[(i, j)], want, epsilon = 1e-14);
                }
            }
            assert_abs_diff_eq!(rh.exact_gap(1.0, 0.37).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn initial_gap_is_top_adjacency_splitting() {
        // At s = 0 with gamma = 1/D the matrix is I - T/D; its two lowest
        // levels come from the two largest adjacency levels.
        let (_, rh) = reduced(Family::Crown { n: 6 });
        let d = rh.degree() as f64;
        let got = rh.exact_gap(0.0, 1.0 / d).unwrap();
        // Oracle: dense eigendecomposition of the reduced matrix.
        let h = rh.matrix(0.0, 1.0 / d).unwrap();
        let evals = sorted_eigenvalues(&h);
        assert_relative_eq!(got, evals[1] - evals[0], epsilon = 1e-13);
        // Crown spectrum is {-(n-1), -1, 1, n-1}: splitting (x_top - x_2nd)/D.
        assert_relative_eq!(got, (5.0 - 1.0) / 5.0, epsilon = 1e-12);
    }

    #[test]
    fn exact_gap_reference_points() {
        let (_, rh) = reduced(Family::Complete { n: 64 });
        assert_abs_diff_eq!(rh.exact_gap(0.5, 1.0 / 64.0).unwrap(), 0.125, epsilon = 1e-12);
        let (_, rh4) = reduced(Family::Complete { n: 4 });
        assert_abs_diff_eq!(rh4.exact_gap(0.0, 0.25).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn min_gap_on_complete_graphs() {
        for n in [4usize, 16, 64] {
            let (_, rh) = reduced(Family::Complete { n });
            let nf = n as f64;
            let (s_star, g_min) = rh.min_gap(1.0 / nf).unwrap();
            assert_abs_diff_eq!(s_star, 0.5, epsilon = 1e-8);
            assert_abs_diff_eq!(g_min, 1.0 / nf.sqrt(), epsilon = 1e-8);
        }
        let (_, rh) = reduced(Family::Complete { n: 16 });
        assert_abs_diff_eq!(rh.min_gap(1.0 / 16.0).unwrap().1, 0.25, epsilon = 1e-8);
    }

    #[test]
    fn monotone_function_minimizes_at_endpoint() {
        let (s, v) = minimize_scalar(|s| Ok(1.0 + s), 0.0, 1.0, 101).unwrap();
        assert_abs_diff_eq!(s, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        let (s, v) = minimize_scalar(|s| Ok(2.0 - s), 0.0, 1.0, 101).unwrap();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn matrix_parameter_guards() {
        let (_, rh) = reduced(Family::Complete { n: 4 });
        assert!(rh.matrix(-0.1, 0.25).is_err());
        assert!(rh.matrix(1.1, 0.25).is_err());
        assert!(rh.matrix(0.5, 0.0).is_err());
    }

    #[test]
    fn crosscheck_complete_graph() {
        let g = Graph::build_family(Family::Complete { n: 8 }).unwrap();
        let cc = full_space_crosscheck(&g, 0, 0.5, 1.0 / 8.0).unwrap();
        assert!(cc.max_abs_diff <= 1e-10, "diff {}", cc.max_abs_diff);
        assert!(cc.spectrum_deviation <= 1e-10);
    }

    #[test]
    fn crosscheck_crown_subset() {
        let g = Graph::build_family(Family::Crown { n: 4 }).unwrap();
        let cc = full_space_crosscheck(&g, 0, 0.3, 0.1).unwrap();
        assert!(cc.spectrum_deviation <= 1e-8);
        assert!(cc.max_abs_diff <= 1e-8);
    }

    #[test]
    fn crosscheck_at_the_endpoint() {
        let g = Graph::build_family(Family::Dihedral { n: 3 }).unwrap();
        let cc = full_space_crosscheck(&g, 0, 1.0, 0.2).unwrap();
        assert_abs_diff_eq!(cc.full_low[0], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cc.full_low[1], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cc.reduced_low[0], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cc.reduced_low[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn crosscheck_size_cap() {
        let g = Graph::build_family(Family::Complete { n: 600 }).unwrap();
        assert!(matches!(
            full_space_crosscheck(&g, 0, 0.5, 0.01).unwrap_err(),
            Error::TooLarge { n: 600, max: 512 }
        ));
    }
}
