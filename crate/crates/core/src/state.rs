//! Two-qubit density matrices for a pair of sites.
//!
//! Basis order is `|00>, |01>, |10>, |11>` with qubit A the left site `l` and
//! qubit B the right site `l + m`; `|0>` is spin up (`sigma^z = +1`).

use num_complex::Complex64;

use crate::correlations::CorrelationTriple;
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix, HermitianMatrix};

pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-12;
const ENTROPY_ZERO: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => ComplexMatrix::identity(2),
            Pauli::X => ComplexMatrix::from_rows([[o, one], [one, o]]),
            Pauli::Y => ComplexMatrix::from_rows([[o, -i], [i, o]]),
            Pauli::Z => ComplexMatrix::from_rows([[one, o], [o, -one]]),
        }
    }

    /// `P_a (x) P_b`
    pub fn pair(a: Pauli, b: Pauli) -> ComplexMatrix {
        a.matrix().kron(&b.matrix())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    matrix: HermitianMatrix,
    provenance: Option<CorrelationTriple>,
}

impl TwoQubitState {
    /// Validates unit trace and positivity of a 4x4 Hermitian matrix.
    pub fn from_matrix(matrix: HermitianMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::validation(format!(
                "two-qubit state must be 4x4, got {0}x{0}",
                matrix.dim()
            )));
        }
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation(format!("state trace is {tr}, expected 1")));
        }
        let lowest = hermitian_eig(&matrix)?.values[0];
        if lowest < -POSITIVITY_TOL {
            return Err(Error::Unphysical { eigenvalue: lowest });
        }
        Ok(Self {
            matrix,
            provenance: None,
        })
    }

    /// For matrices that are density matrices by construction.
    pub(crate) fn from_trusted(matrix: HermitianMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 4);
        Self {
            matrix,
            provenance: None,
        }
    }

    pub fn maximally_mixed() -> Self {
        Self::from_trusted(HermitianMatrix::symmetrized(ComplexMatrix::diagonal(&[0.25; 4])))
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm == 0.0 {
            return Err(Error::validation("pure state vector is zero"));
        }
        let m = ComplexMatrix::from_fn(4, |i, j| psi[i] * psi[j].conj() / norm);
        Ok(Self::from_trusted(HermitianMatrix::symmetrized(m)))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Option<&CorrelationTriple> {
        self.provenance.as_ref()
    }

    /// `Tr(rho (P_a (x) P_b))`
    pub fn expectation(&self, a: Pauli, b: Pauli) -> f64 {
        (self.matrix.matrix() * &Pauli::pair(a, b)).trace().re
    }
}

/// Eigenvalues `p_i` (clamped at zero, ascending) with eigenvectors `psi_i`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub probabilities: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// `<psi_i| op |psi_j>` for every pair.
    pub fn matrix_elements(&self, op: &ComplexMatrix) -> ComplexMatrix {
        let u = &self.vectors;
        &(&u.adjoint() * op) * u
    }
}

/// Builds `rho = (I + t1 XX + t2 YY + t3 ZZ) / 4`.
///
/// Its diagonal is `(u, w, w, u)` with `u = (1 + t3)/4`, `w = (1 - t3)/4`, and
/// the central block couples `|01>, |10>` with `y = (t1 + t2)/4`.
pub fn build_x_state(t: CorrelationTriple) -> Result<TwoQubitState> {
    let u = (1.0 + t.t3) / 4.0;
    let w = (1.0 - t.t3) / 4.0;
    let y = (t.t1 + t.t2) / 4.0;
    let corner = (t.t1 - t.t2) / 4.0;
    let m = ComplexMatrix::from_real_rows([
        [u, 0.0, 0.0, corner],
        [0.0, w, y, 0.0],
        [0.0, y, w, 0.0],
        [corner, 0.0, 0.0, u],
    ]);
    let mut state = TwoQubitState::from_matrix(HermitianMatrix::new(m)?)?;
    state.provenance = Some(t);
    Ok(state)
}

/// Closed-form eigenvalues of the X state of a triple:
/// `(1 + t3 +- (t1 - t2))/4` and `(1 - t3 +- (t1 + t2))/4`.
pub fn x_state_eigenvalues(t: &CorrelationTriple) -> [f64; 4] {
    [
        (1.0 + t.t3 + (t.t1 - t.t2)) / 4.0,
        (1.0 + t.t3 - (t.t1 - t.t2)) / 4.0,
        (1.0 - t.t3 + (t.t1 + t.t2)) / 4.0,
        (1.0 - t.t3 - (t.t1 + t.t2)) / 4.0,
    ]
}

pub fn spectrum(s: &TwoQubitState) -> SpectralDecomposition {
    let es = hermitian_eig(s.matrix()).expect("4x4 Jacobi always converges");
    SpectralDecomposition {
        probabilities: es.values.iter().map(|&p| p.max(0.0)).collect(),
        vectors: es.vectors,
    }
}

/// Shannon entropy in bits with `0 log 0 = 0`. Magnitudes below 1e-14 count as
/// zero and the rest are clamped to `[0, 1]`.
pub fn entropy_bits(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .map(|&p| if p.abs() < ENTROPY_ZERO { 0.0 } else { p.clamp(0.0, 1.0) })
        .filter(|&p| p > 0.0)
        .map(|p| p * p.log2())
        .sum::<f64>()
}

/// `S(rho) = -Tr rho log2 rho`
pub fn von_neumann_entropy(s: &TwoQubitState) -> f64 {
    entropy_bits(&spectrum(s).probabilities)
}
