//! Closed forms for adiabatic search on the complete graph, used as oracles
//! by the verification suites.
//!
//! With `gamma = 1/N` the reduced problem is two-dimensional and everything
//! is elementary: the gap is `sqrt((N - 4 s (1-s)(N-1)) / N)`, minimal at
//! `s = 1/2` with value `1/sqrt(N)`, and integrating the local adiabatic
//! condition `ds/dt = eps g^2(s)` gives an arctangent running time.

/// Closed-form record for a complete graph of `n` vertices at adiabaticity
/// parameter `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompleteGraphForms {
    n: usize,
    epsilon: f64,
}

impl CompleteGraphForms {
    pub fn new(n: usize, epsilon: f64) -> CompleteGraphForms {
        assert!(n >= 2, "complete graph closed forms need N >= 2");
        CompleteGraphForms { n, epsilon }
    }

    /// Instantaneous gap `sqrt((N - 4 s (1-s)(N-1)) / N)`.
    pub fn gap(&self, s: f64) -> f64 {
        let n = self.n as f64;
        ((n - 4.0 * s * (1.0 - s) * (n - 1.0)) / n).sqrt()
    }

    /// Minimal gap `1/sqrt(N)`.
    pub fn g_min(&self) -> f64 {
        1.0 / (self.n as f64).sqrt()
    }

    /// Location of the minimal gap.
    pub fn s_star(&self) -> f64 {
        0.5
    }

    /// Local-adiabatic elapsed time
    /// `t(s) = (N / (2 eps sqrt(N-1))) [arctan(sqrt(N-1)(2s-1)) + arctan(sqrt(N-1))]`.
    pub fn schedule_time(&self, s: f64) -> f64 {
        let n = self.n as f64;
        let root = (n - 1.0).sqrt();
        n / (2.0 * self.epsilon * root) * ((root * (2.0 * s - 1.0)).atan() + root.atan())
    }

    /// Total running time `t(1)`.
    pub fn total_time(&self) -> f64 {
        self.schedule_time(1.0)
    }

    /// Large-`N` asymptotic `pi sqrt(N) / (2 eps)`.
    pub fn total_time_asymptotic(&self) -> f64 {
        std::f64::consts::PI / (2.0 * self.epsilon) * (self.n as f64).sqrt()
    }
}
