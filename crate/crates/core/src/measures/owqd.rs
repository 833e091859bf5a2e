use std::f64::consts::PI;

use num_complex::Complex64;

use crate::correlations::CorrelationTriple;
use crate::error::{Error, Result};
use crate::numerics::{minimize_2d, ComplexMatrix, HermitianMatrix};
use crate::state::{entropy_bits, von_neumann_entropy, x_state_eigenvalues, TwoQubitState};

/// Angles of the rotation `V` whose columns define the projective measurement
/// `Π_k = V|k><k|V^†` on qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2 pi]",
            });
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `[[cos(θ/2), -e^{-iφ} sin(θ/2)], [e^{iφ} sin(θ/2), cos(θ/2)]]`
    pub fn rotation(&self) -> ComplexMatrix {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        ComplexMatrix::from_rows([[Complex64::new(c, 0.0), -e.conj() * s], [e * s, Complex64::new(c, 0.0)]])
    }

    /// `V|k>` for `k = 0, 1`.
    fn outcome_vectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), e * s],
            [-e.conj() * s, Complex64::new(c, 0.0)],
        ]
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.outcome_vectors()
            .map(|v| ComplexMatrix::from_fn(2, |i, j| v[i] * v[j].conj()))
    }
}

/// `sum_k (I ⊗ Π_k) ρ (I ⊗ Π_k)`, the non-selective measurement of qubit B.
pub fn measured_state(s: &TwoQubitState, b: &MeasurementBasis) -> TwoQubitState {
    let rho = s.matrix().matrix();
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4);
    for pk in b.projectors() {
        let lifted = id.kron(&pk);
        out = &out + &(&(&lifted * rho) * &lifted);
    }
    TwoQubitState::from_trusted(HermitianMatrix::symmetrized(out))
}

/// Entropy of the measured state from its two conditional blocks
/// `<v_k|_B ρ |v_k>_B`, whose spectra together form the spectrum of the
/// measured state.
pub(crate) fn measured_entropy(rho: &ComplexMatrix, b: &MeasurementBasis) -> f64 {
    let mut probs = [0.0; 4];
    for (k, v) in b.outcome_vectors().iter().enumerate() {
        let block = |a: usize, a2: usize| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for bb in 0..2 {
                for bb2 in 0..2 {
                    acc += v[bb].conj() * rho[(2 * a + bb, 2 * a2 + bb2)] * v[bb2];
                }
            }
            acc
        };
        let p = block(0, 0).re;
        let r = block(1, 1).re;
        let q = block(0, 1);
        let mean = 0.5 * (p + r);
        let radius = (0.25 * (p - r) * (p - r) + q.norm_sqr()).sqrt();
        probs[2 * k] = mean + radius;
        probs[2 * k + 1] = mean - radius;
    }
    entropy_bits(&probs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OwqdResult {
    /// Deficit in bits.
    pub value: f64,
    /// Measurement attaining the minimum.
    pub basis: MeasurementBasis,
}

/// One-way quantum deficit by direct minimization of the post-measurement
/// entropy over all projective measurements on qubit B.
pub fn owqd_numeric(s: &TwoQubitState) -> OwqdResult {
    let rho = s.matrix().matrix();
    let before = von_neumann_entropy(s);
    let best = minimize_2d(|theta, phi| {
        let b = MeasurementBasis { theta, phi };
        measured_entropy(rho, &b)
    });
    OwqdResult {
        value: (best.value - before).max(0.0),
        basis: MeasurementBasis {
            theta: best.theta,
            phi: best.phi,
        },
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// One-way quantum deficit of a Pauli-diagonal state in closed form.
///
/// Measuring B along `n` leaves A with Bloch vector `(t1 n1, t2 n2, t3 n3)`,
/// so the best measurement is along the axis of the largest `|t_q|`. With
/// `a` that largest magnitude,
///
/// ```text
/// Δ = 1/4 [(1+t3+t1-t2) log(..) + (1+t3-t1+t2) log(..)
///          + (1-t3+t1+t2) log(..) + (1-t3-t1-t2) log(..)]
///     - 1/2 [(1+a) log(1+a) + (1-a) log(1-a)]
/// ```
///
/// which for the XX chain (`t2 = t1`, `|t1| >= |t3|`) is the x-basis deficit.
pub fn owqd_closed(t: &CorrelationTriple) -> f64 {
    let a = t.t1.abs().max(t.t2.abs()).max(t.t3.abs());
    let joint: f64 = x_state_eigenvalues(t).iter().map(|&l| xlog2x(4.0 * l)).sum();
    let conditional = xlog2x(1.0 + a) + xlog2x(1.0 - a);
    (0.25 * joint - 0.5 * conditional).max(0.0)
}
