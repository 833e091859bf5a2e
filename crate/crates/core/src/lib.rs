//! Quantum correlations across the critical point of the spin-1/2 XX chain
//! with three-spin interaction.
//!
//! The crate evaluates thermodynamic-limit two-site correlators of the chain,
//! assembles the X-form reduced density matrix of two sites at separation `m`,
//! and measures its local quantum Fisher information (LQFI) and one-way quantum
//! deficit (OWQD). Every closed-form route is paired with an independent
//! brute-force route: spectral sums vs. symmetric logarithmic derivative,
//! closed-form deficit vs. numerical minimization over projective
//! measurements, Toeplitz correlators vs. finite-ring free fermions, and
//! free-fermion ground energies vs. exact diagonalization.
//!
//! The coupling ratio `alpha = J'/J` controls the transition at `alpha = 1`,
//! where both measures develop a kink.

pub mod cli;
pub mod correlations;
pub mod error;
pub mod finite_chain;
pub mod measures;
pub mod numerics;
pub mod oracle;
pub mod scan;
pub mod state;

pub use correlations::{correlation_triple, g_function, CorrelationTriple, ModelParams};
pub use error::{Error, Result};
pub use measures::{lqfi, lqfi_closed, owqd_closed, owqd_numeric, BlochDirection, MeasurementBasis};
pub use state::{build_x_state, TwoQubitState};
