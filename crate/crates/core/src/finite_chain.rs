//! Finite periodic rings as an independent check on the infinite-chain
//! formulas.
//!
//! Two routes: the free-fermion ground state (fill every mode with negative
//! energy) and exact diagonalization of the spin Hamiltonian
//!
//! ```text
//! H = sum_l -(S^x_l S^x_{l+1} + S^y_l S^y_{l+1})
//!           - alpha (S^x_{l-1} S^z_l S^y_{l+1} - S^y_{l-1} S^z_l S^x_{l+1})
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix, HermitianMatrix};
use crate::state::Pauli;

pub const MIN_SEA_SITES: usize = 8;
pub const MAX_SITES: usize = 65536;
pub const MIN_ED_SITES: usize = 4;
pub const MAX_ED_SITES: usize = 10;

/// Modes closer than this to zero energy are left empty and flagged.
const ZERO_MODE_TOL: f64 = 1e-12;

/// Single-particle energy `ε(k) = -[cos k - (alpha/2) sin 2k]` in units of `J`.
pub fn dispersion(k: f64, alpha: f64) -> f64 {
    -(k.cos() - 0.5 * alpha * (2.0 * k).sin())
}

/// Momentum quantization of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// `k = 2 pi n / N`
    Integer,
    /// `k = 2 pi (n + 1/2) / N`
    HalfInteger,
}

impl Sector {
    /// Momenta of the sector mapped into `(-pi, pi]`, in order of `n`.
    pub fn momenta(self, n_sites: usize) -> impl Iterator<Item = f64> {
        let offset = match self {
            Sector::Integer => 0.0,
            Sector::HalfInteger => 0.5,
        };
        (0..n_sites).map(move |n| {
            let k = 2.0 * PI * (n as f64 + offset) / n_sites as f64;
            if k > PI {
                k - 2.0 * PI
            } else {
                k
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermiSea {
    pub n_sites: usize,
    pub sector: Sector,
    pub alpha: f64,
    /// Occupied momenta, each with strictly negative energy.
    pub filled: Vec<f64>,
    /// Set when some mode had `|ε(k)| < 1e-12`; its occupation is ambiguous.
    pub boundary_mode: bool,
}

impl FermiSea {
    pub fn filling(&self) -> f64 {
        self.filled.len() as f64 / self.n_sites as f64
    }

    pub fn energy(&self) -> f64 {
        self.filled.iter().map(|&k| dispersion(k, self.alpha)).sum()
    }
}

fn check_even(n_sites: usize, lo: usize, hi: usize) -> Result<()> {
    if !n_sites.is_multiple_of(2) || !(lo..=hi).contains(&n_sites) {
        return Err(Error::validation(format!(
            "ring size must be even and in {lo}..={hi}, got {n_sites}"
        )));
    }
    Ok(())
}

fn fill(n_sites: usize, alpha: f64, sector: Sector) -> FermiSea {
    let mut filled = Vec::with_capacity(n_sites / 2 + 1);
    let mut boundary_mode = false;
    for k in sector.momenta(n_sites) {
        let e = dispersion(k, alpha);
        if e.abs() < ZERO_MODE_TOL {
            boundary_mode = true;
        } else if e < 0.0 {
            filled.push(k);
        }
    }
    FermiSea {
        n_sites,
        sector,
        alpha,
        filled,
        boundary_mode,
    }
}

/// Ground-state sea of an `N`-site ring in one quantization sector.
pub fn build_sea(n_sites: usize, alpha: f64, sector: Sector) -> Result<FermiSea> {
    check_even(n_sites, MIN_SEA_SITES, MAX_SITES)?;
    Ok(fill(n_sites, alpha, sector))
}

/// Finite-ring contraction `(2/N) sum_{k filled} cos(k m) - δ_{m0}` on the
/// half-integer grid, which carries no zero modes at `alpha < 1` when `N` is a
/// multiple of 4.
pub fn finite_g(n_sites: usize, alpha: f64, m: i64) -> Result<f64> {
    let sea = build_sea(n_sites, alpha, Sector::HalfInteger)?;
    if m.unsigned_abs() as usize > n_sites / 2 {
        return Err(Error::validation(format!(
            "separation {m} exceeds half the ring size {n_sites}"
        )));
    }
    let mf = m as f64;
    let sum: f64 = sea.filled.iter().map(|&k| (k * mf).cos()).sum();
    let diag = if m == 0 { 1.0 } else { 0.0 };
    Ok(2.0 * sum / n_sites as f64 - diag)
}

/// Free-fermion ground energy: the lower of the two sectors' filled seas.
pub fn ff_ground_energy(n_sites: usize, alpha: f64) -> Result<f64> {
    check_even(n_sites, 2, MAX_SITES)?;
    let a = fill(n_sites, alpha, Sector::Integer).energy();
    let b = fill(n_sites, alpha, Sector::HalfInteger).energy();
    Ok(a.min(b))
}

/// `(site, operator)` factors of each Hamiltonian term with its coefficient.
fn hamiltonian_terms(n_sites: usize, alpha: f64) -> Vec<(f64, [(usize, Pauli); 3])> {
    let mut terms = Vec::with_capacity(4 * n_sites);
    let n = n_sites;
    for l in 0..n {
        let next = (l + 1) % n;
        let prev = (l + n - 1) % n;
        // S = sigma / 2
        terms.push((-0.25, [(l, Pauli::X), (next, Pauli::X), (l, Pauli::I)]));
        terms.push((-0.25, [(l, Pauli::Y), (next, Pauli::Y), (l, Pauli::I)]));
        terms.push((-alpha / 8.0, [(prev, Pauli::X), (l, Pauli::Z), (next, Pauli::Y)]));
        terms.push((alpha / 8.0, [(prev, Pauli::Y), (l, Pauli::Z), (next, Pauli::X)]));
    }
    terms
}

/// Acts with single-site Paulis on a basis state (bit set = spin down).
fn apply(ops: &[(usize, Pauli)], state: usize) -> (usize, Complex64) {
    let mut s = state;
    let mut amp = Complex64::new(1.0, 0.0);
    // rightmost factor acts first
    for &(site, op) in ops.iter().rev() {
        let bit = (s >> site) & 1;
        match op {
            Pauli::I => {}
            Pauli::X => s ^= 1 << site,
            Pauli::Y => {
                amp *= if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                };
                s ^= 1 << site;
            }
            Pauli::Z => {
                if bit == 1 {
                    amp = -amp;
                }
            }
        }
    }
    (s, amp)
}

/// Nonzero matrix elements of the ring Hamiltonian, grouped by column as
/// `(row, value)` pairs.
fn hamiltonian_columns(n_sites: usize, alpha: f64) -> Vec<Vec<(usize, Complex64)>> {
    let terms = hamiltonian_terms(n_sites, alpha);
    (0..1usize << n_sites)
        .map(|col| {
            let mut column: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (coef, ops) in &terms {
                let (row, amp) = apply(ops, col);
                *column.entry(row).or_insert(Complex64::new(0.0, 0.0)) += amp * *coef;
            }
            // pieces of XX + YY that flip S^z cancel exactly
            column.into_iter().filter(|(_, v)| v.norm_sqr() > 0.0).collect()
        })
        .collect()
}

/// Dense `2^N x 2^N` Hamiltonian of the ring.
pub fn ed_hamiltonian(n_sites: usize, alpha: f64) -> Result<HermitianMatrix> {
    if !(MIN_ED_SITES..=MAX_ED_SITES).contains(&n_sites) {
        return Err(Error::validation(format!(
            "exact diagonalization supports {MIN_ED_SITES}..={MAX_ED_SITES} sites, got {n_sites}"
        )));
    }
    let dim = 1usize << n_sites;
    let mut m = ComplexMatrix::zeros(dim);
    for (c, column) in hamiltonian_columns(n_sites, alpha).into_iter().enumerate() {
        for (r, v) in column {
            m[(r, c)] = v;
        }
    }
    HermitianMatrix::new(m)
}

/// Lowest eigenvalue of the ring Hamiltonian by exact diagonalization.
///
/// The Hamiltonian conserves total `S^z`, so each magnetization block is
/// diagonalized separately; the largest block at `N = 10` is 252 x 252.
pub fn ed_ground_energy(n_sites: usize, alpha: f64) -> Result<f64> {
    if !(MIN_ED_SITES..=MAX_ED_SITES).contains(&n_sites) {
        return Err(Error::validation(format!(
            "exact diagonalization supports {MIN_ED_SITES}..={MAX_ED_SITES} sites, got {n_sites}"
        )));
    }
    let columns = hamiltonian_columns(n_sites, alpha);
    let mut best = f64::INFINITY;
    for down in 0..=n_sites {
        let states: Vec<usize> = (0..1usize << n_sites)
            .filter(|s| s.count_ones() as usize == down)
            .collect();
        let index: BTreeMap<usize, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut block = ComplexMatrix::zeros(states.len());
        for (i, &col) in states.iter().enumerate() {
            for (r, v) in &columns[col] {
                let row = *index.get(r).ok_or_else(|| {
                    Error::validation("Hamiltonian couples different magnetization sectors")
                })?;
                block[(row, i)] = *v;
            }
        }
        let lowest = hermitian_eig(&HermitianMatrix::new(block)?)?.values[0];
        best = best.min(lowest);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(0.0, 3.7), -1.0);
        assert!(dispersion(FRAC_PI_2, 2.0).abs() < 1e-15);
        assert!((dispersion(PI / 4.0, 2.0) - (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn small_sea_by_hand() {
        let sea = build_sea(8, 0.0, Sector::HalfInteger).unwrap();
        let mut k = sea.filled.clone();
        k.sort_by(f64::total_cmp);
        let expected = [-3.0 * FRAC_PI_8, -FRAC_PI_8, FRAC_PI_8, 3.0 * FRAC_PI_8];
        assert_eq!(k.len(), 4);
        for (a, b) in k.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(!sea.boundary_mode);
        assert!(sea.filled.iter().all(|&k| dispersion(k, 0.0) < 0.0));
    }

    #[test]
    fn integer_sector_flags_zero_modes() {
        let sea = build_sea(8, 0.0, Sector::Integer).unwrap();
        assert!(sea.boundary_mode);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(build_sea(9, 0.5, Sector::Integer).is_err());
        assert!(build_sea(6, 0.5, Sector::Integer).is_err());
        assert!(build_sea(MAX_SITES + 2, 0.5, Sector::Integer).is_err());
        assert!(ff_ground_energy(7, 0.5).is_err());
        assert!(ed_ground_energy(3, 0.5).is_err());
        assert!(ed_ground_energy(11, 0.5).is_err());
        assert!(finite_g(64, 0.5, 33).is_err());
    }

    #[test]
    fn half_filling_large_ring() {
        for &a in &[0.0, 0.5, 0.99, 1.5, 2.0, 5.0] {
            let sea = build_sea(4096, a, Sector::HalfInteger).unwrap();
            assert!((sea.filling() - 0.5).abs() <= 1.0 / 4096.0, "alpha = {a}");
        }
    }

    #[test]
    fn split_sea_above_transition() {
        let sea = build_sea(4096, 2.0, Sector::HalfInteger).unwrap();
        let edge = 0.5f64.asin();
        for &k in &sea.filled {
            let left = k > -FRAC_PI_2 && k < edge;
            let right = k > FRAC_PI_2 && k < PI - edge;
            assert!(left || right, "k = {k}");
        }
    }

    #[test]
    fn finite_g_examples() {
        assert!(finite_g(4096, 0.5, 2).unwrap().abs() < 1e-3);
        assert!((finite_g(4096, 0.5, 1).unwrap() - 2.0 / PI).abs() < 2e-3);
        assert!((finite_g(4096, 2.0, 1).unwrap() - 1.0 / PI).abs() < 2e-3);
        assert!(finite_g(4096, 0.7, 0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn finite_g_is_even() {
        for &a in &[0.3, 1.7] {
            for m in 1..6 {
                assert_eq!(finite_g(512, a, m).unwrap(), finite_g(512, a, -m).unwrap());
            }
        }
    }

    #[test]
    fn ff_energy_examples() {
        let e = ff_ground_energy(8, 0.0).unwrap();
        let hand = -(2.0 * FRAC_PI_8.cos() + 2.0 * (3.0 * FRAC_PI_8).cos());
        assert!((e - hand).abs() < 1e-12);
        assert!((e + 2.61313).abs() < 1e-5);
        assert!(ff_ground_energy(8, 5.0).unwrap() < e);

        let n = 4096;
        let density = ff_ground_energy(n, 0.0).unwrap() / n as f64;
        assert!((density + 1.0 / PI).abs() < 1e-5);
    }

    #[test]
    fn ed_small_rings() {
        for &(n, a) in &[(4, 0.0), (8, 0.0), (8, 2.0)] {
            let ed = ed_ground_energy(n, a).unwrap();
            let ff = ff_ground_energy(n, a).unwrap();
            assert!((ed - ff).abs() < 1e-9, "N = {n}, alpha = {a}: {ed} vs {ff}");
        }
    }

    #[test]
    fn block_diagonalization_matches_full_matrix() {
        for &a in &[0.0, 1.3] {
            let full = hermitian_eig(&ed_hamiltonian(6, a).unwrap()).unwrap().values[0];
            assert!((full - ed_ground_energy(6, a).unwrap()).abs() < 1e-10);
        }
    }
}
