//! Discord-type correlation measures of two-qubit states.
//!
//! LQFI is available three ways: the spectral pair sum ([`qfi_local`]), the
//! symmetric logarithmic derivative ([`qfi_sld_oracle`]), and the closed form
//! for XX-chain X states ([`lqfi_closed`]). OWQD is minimized numerically over
//! projective measurements ([`owqd_numeric`]) and has a closed form for
//! Pauli-diagonal states ([`owqd_closed`]).

mod lqfi;
mod owqd;

pub use lqfi::{
    lqfi, lqfi_closed, lqfi_sphere_search, qfi_local, qfi_sld_oracle, t_matrix, BlochDirection, TMatrix,
};
pub use owqd::{measured_state, owqd_closed, owqd_numeric, MeasurementBasis, OwqdResult};
