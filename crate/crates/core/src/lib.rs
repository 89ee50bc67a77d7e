//! Estimate the adiabatic search time for a marked vertex on a regular
//! connected graph, and verify the estimate against exact spectral data.
//!
//! The pipeline projects the search Hamiltonian onto the Krylov subspace
//! generated from the marked vertex, reads off the Jacobi (tridiagonal)
//! coefficients, builds the associated orthogonal polynomials and spectral
//! measure, and feeds those into a second-order perturbative model of the
//! spectral gap. Independent of that model, an exact verifier diagonalizes
//! the reduced (or full) Hamiltonian directly, integrates the local
//! adiabatic schedule, and propagates the Schrödinger equation.
//!
//! Modules:
//! - [`graph`]: graph families, edge-list I/O, validation, uniform state.
//! - [`lanczos`]: Krylov tridiagonalization from the marked vertex.
//! - [`tridiag`]: Sturm-sequence bisection for symmetric tridiagonal matrices.
//! - [`poly`]: monic/orthonormal polynomial tables, spectra, spectral measure.
//! - [`gap`]: perturbative gap model (A/B terms, critical hopping, search time).
//! - [`reduced`]: reduced search Hamiltonian, exact gaps, full-space crosscheck.
//! - [`closed_form`]: complete-graph closed forms used as oracles.
//! - [`schedule`]: local adiabatic schedule from a gap function.
//! - [`evolve`]: Runge-Kutta propagation of the scheduled evolution.
//! - [`jsonfmt`]: JSON rendering with round-trip-exact floats.

pub mod closed_form;
pub mod error;
pub mod evolve;
pub mod gap;
pub mod graph;
pub mod jsonfmt;
pub mod lanczos;
pub mod poly;
pub mod reduced;
pub mod schedule;
pub mod tridiag;

pub use error::{Error, Result};
pub use evolve::EvolutionResult;
pub use gap::{GapModel, GapTerms, LevelChoice};
pub use graph::{Family, Graph, StateVector};
pub use lanczos::KrylovReduction;
pub use poly::{PolynomialTable, SpectralTable};
pub use reduced::ReducedHamiltonian;
pub use schedule::ScheduleResult;
