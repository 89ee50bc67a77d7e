//! Orthogonal polynomials of the Jacobi coefficients and the spectral
//! measure they induce at the marked vertex.
//!
//! Two polynomial sequences are kept: the orthonormal `P_k` satisfying
//! `beta_{k+1} P_{k+1} = (x - alpha_k) P_k - beta_k P_{k-1}` and the monic
//! rescaling `Q_k = beta_1 ... beta_k P_k`. Point evaluation always runs the
//! recursion directly; the monic coefficient lists grow combinatorially and
//! exist for display and tests only.
//!
//! Eigenvalues are the roots of `Q_d`, equal to the Jacobi-matrix spectrum.
//! They are computed by Sturm bisection ([`crate::tridiag`]) and
//! cross-checked against Newton refinement on `Q_d`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lanczos::KrylovReduction;
use crate::tridiag;

/// Pairwise (cascade) summation; the slices here are tiny, this simply keeps
/// the summation order fixed and documented.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Monic and orthonormal polynomial sequences for a Krylov reduction.
#[derive(Debug, Clone)]
pub struct PolynomialTable {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    monic: Vec<Vec<f64>>,
    scales: Vec<f64>,
}

impl PolynomialTable {
    pub fn new(kr: &KrylovReduction) -> PolynomialTable {
        PolynomialTable::from_coefficients(kr.alphas().to_vec(), kr.betas().to_vec())
    }

    pub(crate) fn from_coefficients(alphas: Vec<f64>, betas: Vec<f64>) -> PolynomialTable {
        let d = alphas.len();
        // Monic recursion: Q_{k+1} = (x - alpha_k) Q_k - beta_k^2 Q_{k-1}.
        let mut monic: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
        monic.push(vec![1.0]);
        for k in 0..d {
            let shifted = shift_up(&monic[k]);
            let mut next = poly_sub(&shifted, &poly_scale(&monic[k], alphas[k]));
            if k > 0 {
                let b2 = betas[k - 1] * betas[k - 1];
                next = poly_sub(&next, &poly_scale(&monic[k - 1], b2));
            }
            monic.push(next);
        }
        let mut scales = Vec::with_capacity(d + 1);
        scales.push(1.0);
        for k in 0..d {
            let prev = scales[k];
            scales.push(prev * betas.get(k).copied().unwrap_or(1.0));
        }
        PolynomialTable {
            alphas,
            betas,
            monic,
            scales,
        }
    }

    /// Krylov dimension `d`; the table holds `Q_0 .. Q_d`.
    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    /// Ascending-power coefficients of `Q_k`.
    pub fn monic_coefficients(&self, k: usize) -> &[f64] {
        &self.monic[k]
    }

    /// `beta_1 * ... * beta_k`, so that `P_k = Q_k / scale(k)`.
    pub fn orthonormal_scale(&self, k: usize) -> f64 {
        self.scales[k]
    }

    /// Evaluate `Q_k` by the three-term recursion (not stored coefficients).
    pub fn eval_monic(&self, k: usize, x: f64) -> f64 {
        self.eval_monic_with_derivative(k, x).0
    }

    /// `(Q_k(x), Q_k'(x))` from the differentiated recursion.
    pub fn eval_monic_with_derivative(&self, k: usize, x: f64) -> (f64, f64) {
        debug_assert!(k <= self.dim());
        let (mut q_prev, mut q) = (0.0f64, 1.0f64);
        let (mut dq_prev, mut dq) = (0.0f64, 0.0f64);
        for j in 0..k {
            let b2 = if j > 0 {
                self.betas[j - 1] * self.betas[j - 1]
            } else {
                0.0
            };
            let q_next = (x - self.alphas[j]) * q - b2 * q_prev;
            let dq_next = q + (x - self.alphas[j]) * dq - b2 * dq_prev;
            q_prev = q;
            q = q_next;
            dq_prev = dq;
            dq = dq_next;
        }
        (q, dq)
    }

    /// Evaluate the orthonormal `P_0 .. P_{d-1}` at `x`.
    pub fn orthonormal_values(&self, x: f64) -> Vec<f64> {
        let d = self.dim();
        let mut values = Vec::with_capacity(d);
        values.push(1.0);
        if d == 1 {
            return values;
        }
        values.push((x - self.alphas[0]) / self.betas[0]);
        for k in 1..d - 1 {
            let next =
                ((x - self.alphas[k]) * values[k] - self.betas[k - 1] * values[k - 1])
                    / self.betas[k];
            values.push(next);
        }
        values
    }
}

fn shift_up(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    out.extend_from_slice(coeffs);
    out
}

fn poly_scale(coeffs: &[f64], factor: f64) -> Vec<f64> {
    coeffs.iter().map(|c| c * factor).collect()
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0))
        .collect()
}

/// Ascending eigenvalues of the Jacobi matrix by Sturm bisection.
///
/// In debug builds the result is cross-checked against Newton refinement of
/// the roots of `Q_d`; the two routes must agree to 1e-9.
pub fn eigenvalues(kr: &KrylovReduction) -> Vec<f64> {
    let roots = tridiag::eigenvalues(kr.alphas(), kr.betas());
    #[cfg(debug_assertions)]
    {
        let table = PolynomialTable::new(kr);
        let refined = refine_roots(&table, &roots);
        for (a, b) in roots.iter().zip(&refined) {
            debug_assert!(
                (a - b).abs() <= 1e-9,
                "bisection/Newton eigenvalue mismatch: {a} vs {b}"
            );
        }
    }
    roots
}

/// Newton refinement of approximate roots of `Q_d`, evaluated through the
/// recursion. Independent of the Sturm route except for its starting points.
pub fn refine_roots(table: &PolynomialTable, approx: &[f64]) -> Vec<f64> {
    let d = table.dim();
    approx
        .iter()
        .map(|&start| {
            let mut x = start;
            for _ in 0..20 {
                let (q, dq) = table.eval_monic_with_derivative(d, x);
                if dq == 0.0 {
                    break;
                }
                let step = q / dq;
                x -= step;
                if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
                    break;
                }
            }
            x
        })
        .collect()
}

/// Spectral data of the Jacobi matrix: ascending eigenvalues, the values of
/// the orthonormal polynomials there, the norms `N_i = sum_l P_l(x_i)^2`,
/// and the spectral weights `mu_i = 1/N_i`.
#[derive(Debug, Clone)]
pub struct SpectralTable {
    roots: Vec<f64>,
    pvalues: Vec<Vec<f64>>,
    norms: Vec<f64>,
    weights: Vec<f64>,
}

impl SpectralTable {
    pub fn new(kr: &KrylovReduction) -> SpectralTable {
        let table = PolynomialTable::new(kr);
        let roots = eigenvalues(kr);
        SpectralTable::from_roots(&table, roots)
    }

    fn from_roots(table: &PolynomialTable, roots: Vec<f64>) -> SpectralTable {
        let pvalues: Vec<Vec<f64>> = roots
            .iter()
            .map(|&x| table.orthonormal_values(x))
            .collect();
        let norms: Vec<f64> = pvalues
            .iter()
            .map(|row| {
                let squares: Vec<f64> = row.iter().map(|p| p * p).collect();
                pairwise_sum(&squares)
            })
            .collect();
        let weights: Vec<f64> = norms.iter().map(|n| 1.0 / n).collect();
        SpectralTable {
            roots,
            pvalues,
            norms,
            weights,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_raw_parts(
        roots: Vec<f64>,
        pvalues: Vec<Vec<f64>>,
        norms: Vec<f64>,
        weights: Vec<f64>,
    ) -> SpectralTable {
        SpectralTable {
            roots,
            pvalues,
            norms,
            weights,
        }
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// Ascending eigenvalues `x_0 < x_1 < ...`.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// `P_l(x_i)` for the `i`-th level.
    pub fn pvalues(&self, i: usize) -> &[f64] {
        &self.pvalues[i]
    }

    /// `N_i = sum_l P_l(x_i)^2`.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// Spectral weights `mu_i = 1/N_i`; they sum to one.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Normalized eigenvector of level `i`: components `P_l(x_i)/sqrt(N_i)`.
    pub fn eigenvector(&self, i: usize) -> Result<DVector<f64>> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.dim(),
            });
        }
        let scale = 1.0 / self.norms[i].sqrt();
        Ok(DVector::from_iterator(
            self.pvalues[i].len(),
            self.pvalues[i].iter().map(|p| p * scale),
        ))
    }

    /// Moments of the spectral measure: `sum_i mu_i x_i^m` for `m <= mmax`.
    /// These equal the closed-walk counts `(A^m)_{marked,marked}` for all
    /// `m <= 2d-1`.
    pub fn spectral_moments(&self, mmax: usize) -> Vec<f64> {
        (0..=mmax)
            .map(|m| {
                let terms: Vec<f64> = self
                    .roots
                    .iter()
                    .zip(&self.weights)
                    .map(|(&x, &w)| w * x.powi(m as i32))
                    .collect();
                pairwise_sum(&terms)
            })
            .collect()
    }
}
