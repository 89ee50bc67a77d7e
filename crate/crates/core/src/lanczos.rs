//! Krylov tridiagonalization of the adjacency matrix, started from the
//! marked vertex.
//!
//! The reduction stores the full orthonormal basis so that arbitrary states
//! can be projected exactly into the Krylov subspace. Every new vector is
//! reorthogonalized against the whole basis (two passes); at desk scale the
//! basis is tiny and this removes the classical loss-of-orthogonality
//! failure mode entirely.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{Graph, StateVector};

/// Relative breakdown tolerance: iteration stops once the residual norm
/// drops below `BREAKDOWN_TOL * D`.
pub const BREAKDOWN_TOL: f64 = 1e-12;

/// Jacobi coefficients and orthonormal Krylov basis for `(A, e_marked)`.
#[derive(Debug, Clone)]
pub struct KrylovReduction {
    marked: usize,
    alphas: Vec<f64>,
    betas: Vec<f64>,
    basis: Vec<DVector<f64>>,
    breakdown_residual: f64,
}

impl KrylovReduction {
    /// Krylov dimension `d`.
    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    /// Diagonal entries `alpha_0 .. alpha_{d-1}` of the Jacobi matrix.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Off-diagonal entries `beta_1 .. beta_{d-1}`; all strictly positive.
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Orthonormal basis vectors; `basis()[0]` is the marked basis vector.
    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    /// Residual norm that triggered termination.
    pub fn breakdown_residual(&self) -> f64 {
        self.breakdown_residual
    }

    /// Dense `d x d` Jacobi matrix.
    pub fn jacobi_matrix(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = self.alphas[i];
            if i + 1 < d {
                m[(i, i + 1)] = self.betas[i];
                m[(i + 1, i)] = self.betas[i];
            }
        }
        m
    }

    /// Coordinates of `v` in the Krylov basis together with the norm of the
    /// component orthogonal to the subspace.
    pub fn project_state(&self, v: &StateVector) -> Result<(Vec<Complex64>, f64)> {
        let n = self.basis[0].len();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let coords: Vec<Complex64> = self
            .basis
            .iter()
            .map(|phi| {
                v.coords()
                    .iter()
                    .zip(phi.iter())
                    .map(|(c, p)| c * p)
                    .sum::<Complex64>()
            })
            .collect();
        let mut residual = v.coords().clone();
        for (c, phi) in coords.iter().zip(self.basis.iter()) {
            for (r, p) in residual.iter_mut().zip(phi.iter()) {
                *r -= c * p;
            }
        }
        Ok((coords, residual.norm()))
    }
}

/// Tridiagonalize `A` in the Krylov subspace generated from the marked
/// vertex. Terminates on breakdown (`beta <= 1e-12 * D`), which signals
/// that an invariant subspace has been found.
pub fn lanczos(g: &Graph, marked: usize) -> Result<KrylovReduction> {
    let n = g.vertex_count();
    if marked >= n {
        return Err(Error::VertexOutOfRange {
            index: marked,
            len: n,
        });
    }
    let tol = BREAKDOWN_TOL * g.degree() as f64;
    lanczos_matrix(g.adjacency(), marked, tol)
}

/// Lanczos on an arbitrary symmetric matrix with an absolute breakdown
/// tolerance. Internal: callers go through [`lanczos`].
pub(crate) fn lanczos_matrix(
    a: &DMatrix<f64>,
    marked: usize,
    breakdown_tol: f64,
) -> Result<KrylovReduction> {
    let n = a.nrows();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();

    let mut phi = DVector::zeros(n);
    phi[marked] = 1.0;
    basis.push(phi);

    let breakdown_residual;
    loop {
        let i = basis.len() - 1;
        let mut v = a * &basis[i];
        let alpha = basis[i].dot(&v);
        alphas.push(alpha);

        v -= &basis[i] * alpha;
        if i > 0 {
            v -= &basis[i - 1] * betas[i - 1];
        }
        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            for phi in &basis {
                let overlap = phi.dot(&v);
                v -= phi * overlap;
            }
        }
        let beta = v.norm();
        if beta <= breakdown_tol || basis.len() == n {
            breakdown_residual = beta;
            break;
        }
        betas.push(beta);
        basis.push(v / beta);
    }

    Ok(KrylovReduction {
        marked,
        alphas,
        betas,
        basis,
        breakdown_residual,
    })
}
