//! Local adiabatic schedule: integrate `dt/ds = 1 / (eps g^2(s))`.
//!
//! The integrand blows up like `1/g^2` near the gap minimum, so each grid
//! interval is integrated with adaptive Simpson quadrature to a relative
//! tolerance instead of a fixed rule.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default relative quadrature tolerance.
pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-8;

/// One sampled point of the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleSample {
    pub s: f64,
    pub t: f64,
    pub gap: f64,
}

/// Sampled schedule `t(s)` with its total running time.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleResult {
    epsilon: f64,
    samples: Vec<ScheduleSample>,
}

impl ScheduleResult {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn samples(&self) -> &[ScheduleSample] {
        &self.samples
    }

    /// Elapsed time at `s = 1`.
    pub fn total_time(&self) -> f64 {
        self.samples.last().map(|p| p.t).unwrap_or(0.0)
    }

    pub fn s_min(&self) -> f64 {
        self.samples.first().map(|p| p.s).unwrap_or(0.0)
    }
}

/// Integrate the local adiabatic condition over `[s_min, 1]`, sampling the
/// result on `grid` uniform points. The gap function must be strictly
/// positive everywhere it is evaluated; a vanishing gap (the perturbative
/// model's `g_min(s) ~ s` at `s_min = 0` is the canonical case) is an error,
/// not something to integrate through.
pub fn local_schedule<F>(gapfn: F, epsilon: f64, s_min: f64, grid: usize) -> Result<ScheduleResult>
where
    F: Fn(f64) -> f64,
{
    local_schedule_with_tol(gapfn, epsilon, s_min, grid, DEFAULT_QUADRATURE_TOL)
}

/// [`local_schedule`] with an explicit quadrature tolerance.
pub fn local_schedule_with_tol<F>(
    gapfn: F,
    epsilon: f64,
    s_min: f64,
    grid: usize,
    rel_tol: f64,
) -> Result<ScheduleResult>
where
    F: Fn(f64) -> f64,
{
    if epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(Error::DomainError(format!(
            "adiabaticity parameter must satisfy 0 < eps < 1, got {epsilon}"
        )));
    }
    if !(0.0..1.0).contains(&s_min) {
        return Err(Error::DomainError(format!(
            "schedule start must satisfy 0 <= s_min < 1, got {s_min}"
        )));
    }
    if grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "schedule grid needs at least 2 points, got {grid}"
        )));
    }

    let integrand = |s: f64| -> Result<f64> {
        let g = gapfn(s);
        if g <= 0.0 || !g.is_finite() {
            return Err(Error::NonPositiveGap { s });
        }
        Ok(1.0 / (epsilon * g * g))
    };

    let step = (1.0 - s_min) / (grid - 1) as f64;
    let mut samples = Vec::with_capacity(grid);
    let mut t = 0.0;
    for k in 0..grid {
        let s = if k == grid - 1 {
            1.0
        } else {
            s_min + step * k as f64
        };
        if k > 0 {
            let prev: ScheduleSample = samples[k - 1];
            t += adaptive_simpson(&integrand, prev.s, s, rel_tol)?;
        }
        let g = gapfn(s);
        if g <= 0.0 || !g.is_finite() {
            return Err(Error::NonPositiveGap { s });
        }
        samples.push(ScheduleSample { s, t, gap: g });
    }
    Ok(ScheduleResult { epsilon, samples })
}

/// Adaptive Simpson quadrature to a relative tolerance.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fm = f(0.5 * (a + b))?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let abs_tol = (rel_tol * whole.abs()).max(f64::MIN_POSITIVE);
    simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    abs_tol: f64,
    depth: usize,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = f(0.5 * (a + m))?;
    let rm = f(0.5 * (m + b))?;
    let left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * abs_tol {
        // Richardson extrapolation of the composite estimate.
        return Ok(left + right + delta / 15.0);
    }
    let half = 0.5 * abs_tol;
    Ok(
        simpson_recurse(f, a, m, fa, lm, fm, left, half, depth - 1)?
            + simpson_recurse(f, m, b, fm, rm, fb, right, half, depth - 1)?,
    )
}
