//! Schrödinger propagation of the scheduled evolution in the reduced space.
//!
//! The schedule is a monotone `(s, t)` table; a monotone cubic interpolant
//! turns it into a smooth `s(t)`, and classic fourth-order Runge-Kutta
//! integrates `i d/dt psi = H(s(t)) psi` between schedule samples. The step
//! never exceeds the schedule spacing nor `0.01 / ||H||`, and the state is
//! never renormalized: the norm drift is the integration diagnostic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduced::ReducedHamiltonian;
use crate::schedule::ScheduleResult;

/// Default cap on `||H|| * dt` per step.
pub const DEFAULT_STEP_FACTOR: f64 = 0.01;

/// One recorded point of the fidelity trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionSample {
    pub t: f64,
    pub fidelity: f64,
    pub norm: f64,
}

/// Outcome of a propagation run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    final_fidelity: f64,
    trace: Vec<EvolutionSample>,
    norm_drift: f64,
}

impl EvolutionResult {
    /// `|<m|psi(T)>|^2`.
    pub fn final_fidelity(&self) -> f64 {
        self.final_fidelity
    }

    /// Fidelity and norm at every schedule sample time.
    pub fn trace(&self) -> &[EvolutionSample] {
        &self.trace
    }

    /// Maximum `| ||psi|| - 1 |` seen at any integration step.
    pub fn norm_drift(&self) -> f64 {
        self.norm_drift
    }
}

/// Propagate the reduced state along a schedule.
///
/// `initial` holds the Krylov coordinates of the start state (normally the
/// projected uniform state) and must be normalized.
pub fn evolve(
    rh: &ReducedHamiltonian,
    gamma: f64,
    schedule: &ScheduleResult,
    initial: &[Complex64],
) -> Result<EvolutionResult> {
    evolve_with_step(rh, gamma, schedule, initial, DEFAULT_STEP_FACTOR)
}

/// [`evolve`] with an explicit step cap factor (used by convergence checks).
pub fn evolve_with_step(
    rh: &ReducedHamiltonian,
    gamma: f64,
    schedule: &ScheduleResult,
    initial: &[Complex64],
    step_factor: f64,
) -> Result<EvolutionResult> {
    let d = rh.dim();
    if initial.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: initial.len(),
        });
    }
    if gamma <= 0.0 {
        return Err(Error::DomainError(format!(
            "hopping strength must be positive, got gamma = {gamma}"
        )));
    }
    let norm0: f64 = initial.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm0 - 1.0).abs() > 1e-8 {
        return Err(Error::DomainError(format!(
            "initial state must be normalized, got norm {norm0}"
        )));
    }
    if schedule.samples().len() < 2 {
        return Err(Error::InvalidParameter(
            "schedule must contain at least two samples".into(),
        ));
    }

    let interp = MonotoneCubic::new(
        schedule.samples().iter().map(|p| p.t).collect(),
        schedule.samples().iter().map(|p| p.s).collect(),
    );
    let hamiltonian = |t: f64| -> DMatrix<f64> {
        let s = interp.eval(t).clamp(0.0, 1.0);
        rh.matrix(s, gamma)
            .expect("s clamped to [0,1] and gamma validated")
    };

    propagate(&hamiltonian, schedule, initial, step_factor)
}

fn propagate(
    hamiltonian: &dyn Fn(f64) -> DMatrix<f64>,
    schedule: &ScheduleResult,
    initial: &[Complex64],
    step_factor: f64,
) -> Result<EvolutionResult> {
    let mut psi: Vec<Complex64> = initial.to_vec();
    let mut norm_drift = 0.0f64;
    let mut trace = Vec::with_capacity(schedule.samples().len());
    let record = |t: f64, psi: &[Complex64], trace: &mut Vec<EvolutionSample>| {
        let norm = state_norm(psi);
        trace.push(EvolutionSample {
            t,
            fidelity: psi[0].norm_sqr(),
            norm,
        });
    };
    record(schedule.samples()[0].t, &psi, &mut trace);

    for window in schedule.samples().windows(2) {
        let (t0, t1) = (window[0].t, window[1].t);
        let span = t1 - t0;
        if span <= 0.0 {
            return Err(Error::InvalidParameter(
                "schedule times must be strictly increasing".into(),
            ));
        }
        let h_norm = inf_norm(&hamiltonian(t0)).max(1e-12);
        let h_max = (step_factor / h_norm).min(span);
        let substeps = (span / h_max).ceil() as usize;
        let h = span / substeps as f64;
        for k in 0..substeps {
            let t = t0 + h * k as f64;
            rk4_step(hamiltonian, t, h, &mut psi);
            let norm = state_norm(&psi);
            norm_drift = norm_drift.max((norm - 1.0).abs());
            if norm_drift > 1e-4 {
                return Err(Error::NormDriftExceeded { drift: norm_drift });
            }
        }
        record(t1, &psi, &mut trace);
    }

    Ok(EvolutionResult {
        final_fidelity: psi[0].norm_sqr(),
        trace,
        norm_drift,
    })
}

/// One classic Runge-Kutta step of `d psi / dt = -i H(t) psi`.
fn rk4_step(hamiltonian: &dyn Fn(f64) -> DMatrix<f64>, t: f64, h: f64, psi: &mut [Complex64]) {
    let rhs = |t: f64, state: &[Complex64]| -> Vec<Complex64> {
        let matrix = hamiltonian(t);
        apply_minus_i_h(&matrix, state)
    };
    let k1 = rhs(t, psi);
    let k2 = rhs(t + 0.5 * h, &combine(psi, &k1, 0.5 * h));
    let k3 = rhs(t + 0.5 * h, &combine(psi, &k2, 0.5 * h));
    let k4 = rhs(t + h, &combine(psi, &k3, h));
    for i in 0..psi.len() {
        psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
    }
}

fn combine(base: &[Complex64], dir: &[Complex64], scale: f64) -> Vec<Complex64> {
    base.iter()
        .zip(dir)
        .map(|(b, d)| b + d * scale)
        .collect()
}

/// `-i H psi` for a real symmetric `H` and complex state.
fn apply_minus_i_h(h: &DMatrix<f64>, psi: &[Complex64]) -> Vec<Complex64> {
    let d = psi.len();
    (0..d)
        .map(|i| {
            let mut acc = Complex64::default();
            for j in 0..d {
                acc += psi[j] * h[(i, j)];
            }
            Complex64::new(acc.im, -acc.re)
        })
        .collect()
}

fn state_norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn inf_norm(h: &DMatrix<f64>) -> f64 {
    (0..h.nrows())
        .map(|i| (0..h.ncols()).map(|j| h[(i, j)].abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> MonotoneCubic {
        let n = xs.len();
        assert!(n >= 2, "interpolation needs at least two points");
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            if secants[i - 1] * secants[i] <= 0.0 {
                slopes[i] = 0.0;
            } else {
                slopes[i] = 0.5 * (secants[i - 1] + secants[i]);
            }
        }
        // Limit slopes so the interpolant stays monotone on each interval.
        for i in 0..n - 1 {
            if secants[i] == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let a = slopes[i] / secants[i];
            let b = slopes[i + 1] / secants[i];
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                slopes[i] = tau * a * secants[i];
                slopes[i + 1] = tau * b * secants[i];
            }
        }
        MonotoneCubic { xs, ys, slopes }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let idx = match self
            .xs
            .binary_search_by(|probe| probe.total_cmp(&x))
        {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let h = self.xs[idx + 1] - self.xs[idx];
        let u = (x - self.xs[idx]) / h;
        let (y0, y1) = (self.ys[idx], self.ys[idx + 1]);
        let (m0, m1) = (self.slopes[idx] * h, self.slopes[idx + 1] * h);
        let u2 = u * u;
        let u3 = u2 * u;
        y0 * (2.0 * u3 - 3.0 * u2 + 1.0)
            + m0 * (u3 - 2.0 * u2 + u)
            + y1 * (-2.0 * u3 + 3.0 * u2)
            + m1 * (u3 - u2)
    }
}
