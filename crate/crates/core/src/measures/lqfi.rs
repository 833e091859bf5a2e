use std::f64::consts::PI;

use num_complex::Complex64;

use crate::correlations::CorrelationTriple;
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, minimize_2d, ComplexMatrix, HermitianMatrix};
use crate::state::{spectrum, Pauli, SpectralDecomposition, TwoQubitState};

/// Pairs with `p_i + p_j` at or below this carry no weight.
const PAIR_WEIGHT_FLOOR: f64 = 1e-14;

/// Unit vector `r` of a local Hamiltonian `sigma . r` on qubit A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection([f64; 3]);

impl BlochDirection {
    pub const X: BlochDirection = BlochDirection([1.0, 0.0, 0.0]);
    pub const Y: BlochDirection = BlochDirection([0.0, 1.0, 0.0]);
    pub const Z: BlochDirection = BlochDirection([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "Bloch direction must have unit length, got |r| = {norm}"
            )));
        }
        Ok(Self([x, y, z]))
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::validation("cannot normalize a zero vector"));
        }
        Ok(Self([x / norm, y / norm, z / norm]))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    /// `(sigma . r) (x) I`
    pub fn local_hamiltonian(&self) -> ComplexMatrix {
        let [x, y, z] = self.0;
        let c = |v: f64| Complex64::new(v, 0.0);
        let h = &(&Pauli::X.matrix().scale(c(x)) + &Pauli::Y.matrix().scale(c(y)))
            + &Pauli::Z.matrix().scale(c(z));
        h.kron(&Pauli::I.matrix())
    }
}

/// Symmetric 3x3 matrix whose largest eigenvalue fixes the LQFI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TMatrix(pub [[f64; 3]; 3]);

impl TMatrix {
    pub fn eigenvalues(&self) -> [f64; 3] {
        let m = ComplexMatrix::from_real_rows(self.0);
        let es = hermitian_eig(&HermitianMatrix::symmetrized(m)).expect("3x3 Jacobi converges");
        [es.values[0], es.values[1], es.values[2]]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues()[2]
    }

    /// `r^T T r`
    pub fn quadratic_form(&self, r: &BlochDirection) -> f64 {
        let v = r.components();
        (0..3)
            .map(|l| (0..3).map(|k| v[l] * self.0[l][k] * v[k]).sum::<f64>())
            .sum()
    }
}

fn pair_weight(pi: f64, pj: f64) -> f64 {
    let s = pi + pj;
    if s > PAIR_WEIGHT_FLOOR {
        2.0 * pi * pj / s
    } else {
        0.0
    }
}

pub(crate) fn qfi_with_spectrum(rho: &ComplexMatrix, d: &SpectralDecomposition, r: &BlochDirection) -> f64 {
    let h = r.local_hamiltonian();
    let variance_term = (rho * &(&h * &h)).trace().re;
    let elems = d.matrix_elements(&h);
    let p = &d.probabilities;
    let mut coherent = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            coherent += pair_weight(p[i], p[j]) * elems[(i, j)].norm_sqr();
        }
    }
    (variance_term - coherent).clamp(0.0, 1.0)
}

/// Quantum Fisher information of `s` under the local phase shift generated by
/// `(sigma . r) (x) I`, in the normalization where a pure state gives the
/// variance of the generator.
///
/// The coherence sum runs over all ordered eigenvector pairs with nonzero
/// weight, diagonal pairs included.
pub fn qfi_local(s: &TwoQubitState, r: &BlochDirection) -> f64 {
    qfi_with_spectrum(s.matrix().matrix(), &spectrum(s), r)
}

/// The same Fisher information through the symmetric logarithmic derivative:
/// `dρ = -i[H, ρ]`, `L_ij = 2 dρ_ij / (p_i + p_j)` in the eigenbasis, and
/// `Tr(ρ L^2) / 4`.
pub fn qfi_sld_oracle(s: &TwoQubitState, r: &BlochDirection) -> f64 {
    let rho = s.matrix().matrix();
    let h = r.local_hamiltonian();
    let minus_i = Complex64::new(0.0, -1.0);
    let drho = (&(&h * rho) - &(rho * &h)).scale(minus_i);

    let d = spectrum(s);
    let u = &d.vectors;
    let drho_eig = &(&u.adjoint() * &drho) * u;
    let p = &d.probabilities;
    let sld = ComplexMatrix::from_fn(4, |i, j| {
        let s = p[i] + p[j];
        if s > PAIR_WEIGHT_FLOOR {
            drho_eig[(i, j)] * (2.0 / s)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let rho_eig = ComplexMatrix::diagonal(p);
    let tr = (&rho_eig * &(&sld * &sld)).trace().re;
    0.25 * tr
}

/// `T_lk = sum_ij 2 p_i p_j / (p_i + p_j) <i|σ_l⊗I|j><j|σ_k⊗I|i>`, real part.
pub fn t_matrix(d: &SpectralDecomposition) -> TMatrix {
    let elems: Vec<ComplexMatrix> = Pauli::XYZ
        .iter()
        .map(|&q| d.matrix_elements(&Pauli::pair(q, Pauli::I)))
        .collect();
    let p = &d.probabilities;
    let mut t = [[0.0; 3]; 3];
    for l in 0..3 {
        for k in l..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    let w = pair_weight(p[i], p[j]);
                    if w != 0.0 {
                        acc += elems[l][(i, j)] * elems[k][(j, i)] * w;
                    }
                }
            }
            t[l][k] = acc.re;
            t[k][l] = acc.re;
        }
    }
    TMatrix(t)
}

/// Local quantum Fisher information `1 - λ_max(T)`, clamped to `[0, 1]`.
pub fn lqfi(s: &TwoQubitState) -> f64 {
    (1.0 - t_matrix(&spectrum(s)).max_eigenvalue()).clamp(0.0, 1.0)
}

/// Closed form for X states with `t2 = t1`: `T = diag(e_xy, e_xy, e_z)` with
///
/// ```text
/// e_xy = (t3 + 1)(2 t1^2 + t3 - 1) / (t1^2 - 1)
/// e_z  = (2 t1^2 + t3 - 1) / (t3 - 1)
/// ```
///
/// Returns `None` when a denominator is within 1e-9 of zero; callers then
/// fall back to [`lqfi`].
pub fn lqfi_closed(t: &CorrelationTriple) -> Option<f64> {
    let t1 = t.t1;
    let t3 = t.t3;
    if !(t1.abs() < 1.0 - 1e-9 && t3 < 1.0 - 1e-9) {
        return None;
    }
    let shared = 2.0 * t1 * t1 + t3 - 1.0;
    let e_xy = (t3 + 1.0) * shared / (t1 * t1 - 1.0);
    let e_z = shared / (t3 - 1.0);
    Some((1.0 - e_xy.max(e_z)).clamp(0.0, 1.0))
}

/// Brute-force LQFI: [`minimize_2d`] of [`qfi_local`] over the Bloch sphere.
/// Returns the minimum and the direction attaining it.
pub fn lqfi_sphere_search(s: &TwoQubitState) -> (f64, BlochDirection) {
    let d = spectrum(s);
    let rho = s.matrix().matrix();
    let best = minimize_2d(|theta, phi| qfi_with_spectrum(rho, &d, &BlochDirection::from_angles(theta, phi)));
    debug_assert!(best.theta >= 0.0 && best.theta <= PI);
    (best.value, BlochDirection::from_angles(best.theta, best.phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::build_x_state;
    use std::f64::consts::PI;

    fn plateau(m: u32) -> TwoQubitState {
        build_x_state(crate::correlations::correlation_triple(m, 0.5).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn maximally_mixed_has_no_information() {
        let s = TwoQubitState::maximally_mixed();
        for r in [BlochDirection::X, BlochDirection::Z, BlochDirection::from_angles(0.3, 2.0)] {
            assert!(qfi_local(&s, &r).abs() < 1e-14);
            assert!(qfi_sld_oracle(&s, &r).abs() < 1e-14);
        }
        let t = t_matrix(&spectrum(&s));
        for l in 0..3 {
            for k in 0..3 {
                let expected = if l == k { 1.0 } else { 0.0 };
                assert!((t.0[l][k] - expected).abs() < 1e-14);
            }
        }
        assert!(lqfi(&s).abs() < 1e-14);
    }

    #[test]
    fn product_state_variances() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let s = TwoQubitState::pure([one, zero, zero, zero]).unwrap();
        assert!(qfi_local(&s, &BlochDirection::Z).abs() < 1e-14);
        assert!((qfi_local(&s, &BlochDirection::X) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pure_state_sld_is_variance() {
        let s = TwoQubitState::pure([c(0.3, 0.1), c(-0.2, 0.5), c(0.0, 0.7), c(0.4, 0.0)]).unwrap();
        let r = BlochDirection::normalized(0.2, -0.5, 0.7).unwrap();
        let h = r.local_hamiltonian();
        let rho = s.matrix().matrix();
        let mean = (rho * &h).trace().re;
        let second = (rho * &(&h * &h)).trace().re;
        let variance = second - mean * mean;
        assert!((qfi_sld_oracle(&s, &r) - variance).abs() < 1e-9);
        assert!((qfi_local(&s, &r) - variance).abs() < 1e-9);
    }

    #[test]
    fn plateau_qfi_along_z() {
        let s = plateau(1);
        let t1 = 2.0 / PI;
        let e_z = (1.0 - t1 * t1) / (1.0 + t1 * t1);
        let q = qfi_local(&s, &BlochDirection::Z);
        assert!((q - (1.0 - e_z)).abs() < 1e-12);
        assert!((q - 0.57680).abs() < 1e-5);
        assert!((qfi_sld_oracle(&s, &BlochDirection::Z) - q).abs() < 1e-10);
        assert!((qfi_sld_oracle(&s, &BlochDirection::X) - qfi_local(&s, &BlochDirection::X)).abs() < 1e-8);
    }

    #[test]
    fn plateau_t_matrix_is_closed_form_diagonal() {
        let s = plateau(1);
        let t = t_matrix(&spectrum(&s));
        let t1 = 2.0 / PI;
        let t3 = -t1 * t1;
        let e_xy = (t3 + 1.0) * (2.0 * t1 * t1 + t3 - 1.0) / (t1 * t1 - 1.0);
        let e_z = (2.0 * t1 * t1 + t3 - 1.0) / (t3 - 1.0);
        let expected = [[e_xy, 0.0, 0.0], [0.0, e_xy, 0.0], [0.0, 0.0, e_z]];
        for l in 0..3 {
            for k in 0..3 {
                assert!((t.0[l][k] - expected[l][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bell_state_lqfi_is_one() {
        let s = build_x_state(CorrelationTriple::isotropic(1, 1.0, -1.0)).unwrap();
        let t = t_matrix(&spectrum(&s));
        assert!(t.max_eigenvalue().abs() < 1e-12);
        assert!((lqfi(&s) - 1.0).abs() < 1e-12);
        // coarse sphere grid oracle
        let mut worst = f64::INFINITY;
        for i in 0..100 {
            for j in 0..100 {
                let r = BlochDirection::from_angles(PI * i as f64 / 99.0, 2.0 * PI * j as f64 / 100.0);
                worst = worst.min(qfi_local(&s, &r));
            }
        }
        assert!((worst - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plateau_lqfi_values() {
        assert!((lqfi(&plateau(1)) - 4.0 / (PI * PI)).abs() < 1e-12);
        assert!((lqfi(&plateau(2)) - 0.196_538_246).abs() < 1e-9);
        let (brute, _) = lqfi_sphere_search(&plateau(1));
        assert!((brute - 4.0 / (PI * PI)).abs() < 1e-9);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(lqfi_closed(&CorrelationTriple::isotropic(1, 0.0, 0.0)), Some(0.0));
        let t = crate::correlations::correlation_triple(1, 2.0).unwrap();
        let q = lqfi_closed(&t).unwrap();
        assert!((q - 1.0 / (PI * PI)).abs() < 1e-14);
        assert!((q - lqfi(&build_x_state(t).unwrap())).abs() < 1e-12);
        assert_eq!(lqfi_closed(&CorrelationTriple::isotropic(1, 1.0, -1.0)), None);
    }

    #[test]
    fn direction_validation() {
        assert!(BlochDirection::new(1.0, 1.0, 0.0).is_err());
        assert!(BlochDirection::normalized(0.0, 0.0, 0.0).is_err());
        let r = BlochDirection::normalized(3.0, 0.0, 4.0).unwrap();
        assert!((r.components()[2] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn quadratic_form_identity() {
        let s = plateau(3);
        let t = t_matrix(&spectrum(&s));
        for &(th, ph) in &[(0.1, 0.2), (1.3, 4.0), (2.9, 5.5)] {
            let r = BlochDirection::from_angles(th, ph);
            assert!((1.0 - t.quadratic_form(&r) - qfi_local(&s, &r)).abs() < 1e-12);
        }
    }
}
