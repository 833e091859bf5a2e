//! Cross-check suites behind `xxqpt oracle`. Each compares a production
//! routine against an independent route and reports the worst deviation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correlations::{g_function, CorrelationTriple};
use crate::error::{Error, Result};
use crate::finite_chain::{ed_ground_energy, ff_ground_energy, finite_g};
use crate::measures::{owqd_closed, owqd_numeric, qfi_local, qfi_sld_oracle, BlochDirection};
use crate::state::{build_x_state, x_state_eigenvalues, TwoQubitState};

pub const SEED: u64 = 0x5eed_2024;
pub const G_SEPARATIONS: [i64; 4] = [1, 2, 3, 4];
pub const G_ALPHAS: [f64; 4] = [0.2, 0.7, 1.5, 3.0];
pub const ENERGY_ALPHAS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];
pub const QFI_DIRECTIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    G,
    Qfi,
    Owqd,
    Energy,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::G => "g",
            Check::Qfi => "qfi",
            Check::Owqd => "owqd",
            Check::Energy => "energy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub check: Check,
    pub comparisons: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Random Pauli-diagonal triple `(t1, t2, t3)` inside the tetrahedron of
/// physical states.
pub fn random_triple<R: Rng>(rng: &mut R, isotropic: bool) -> CorrelationTriple {
    loop {
        let t1 = rng.gen_range(-1.0..1.0);
        let t2 = if isotropic { t1 } else { rng.gen_range(-1.0..1.0) };
        let t3 = rng.gen_range(-1.0..1.0);
        let t = CorrelationTriple { m: 1, t1, t2, t3 };
        if x_state_eigenvalues(&t).iter().all(|&p| p >= 0.0) {
            return t;
        }
    }
}

pub fn random_direction<R: Rng>(rng: &mut R) -> BlochDirection {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n2 = v.iter().map(|x| x * x).sum::<f64>();
        if n2 > 1e-4 && n2 <= 1.0 {
            return BlochDirection::normalized(v[0], v[1], v[2]).expect("nonzero vector");
        }
    }
}

/// `finite_g(n)` against the thermodynamic-limit `g_function`. The tolerance
/// is 2e-3 at 4096 sites and scales as `1/n`.
pub fn check_g(n_sites: usize) -> Result<OracleReport> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for &alpha in &G_ALPHAS {
        for &m in &G_SEPARATIONS {
            let dev = (finite_g(n_sites, alpha, m)? - g_function(m, alpha)).abs();
            worst = worst.max(dev);
            count += 1;
        }
    }
    Ok(OracleReport {
        check: Check::G,
        comparisons: count,
        max_deviation: worst,
        tolerance: 2e-3 * (4096.0 / n_sites as f64).max(1.0),
    })
}

/// Spectral QFI against the SLD construction on `n_states` random states,
/// 100 random directions each.
pub fn check_qfi(n_states: usize) -> Result<OracleReport> {
    require_positive(n_states)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..n_states {
        let s = build_x_state(random_triple(&mut rng, false))?;
        for _ in 0..QFI_DIRECTIONS {
            let r = random_direction(&mut rng);
            worst = worst.max((qfi_local(&s, &r) - qfi_sld_oracle(&s, &r)).abs());
        }
    }
    Ok(OracleReport {
        check: Check::Qfi,
        comparisons: n_states * QFI_DIRECTIONS,
        max_deviation: worst,
        tolerance: 1e-8,
    })
}

/// Closed-form deficit against numerical minimization on `n_states` random
/// Pauli-diagonal states.
pub fn check_owqd(n_states: usize) -> Result<OracleReport> {
    require_positive(n_states)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..n_states {
        let t = random_triple(&mut rng, false);
        let s: TwoQubitState = build_x_state(t)?;
        worst = worst.max((owqd_closed(&t) - owqd_numeric(&s).value).abs());
    }
    Ok(OracleReport {
        check: Check::Owqd,
        comparisons: n_states,
        max_deviation: worst,
        tolerance: 1e-6,
    })
}

/// Exact diagonalization against the free-fermion ground energy for an
/// `n_sites` chain.
pub fn check_energy(n_sites: usize) -> Result<OracleReport> {
    let mut worst = 0.0f64;
    for &alpha in &ENERGY_ALPHAS {
        let dev = (ed_ground_energy(n_sites, alpha)? - ff_ground_energy(n_sites, alpha)?).abs();
        worst = worst.max(dev);
    }
    Ok(OracleReport {
        check: Check::Energy,
        comparisons: ENERGY_ALPHAS.len(),
        max_deviation: worst,
        tolerance: 1e-9,
    })
}

pub fn run_check(check: Check, n: usize) -> Result<OracleReport> {
    match check {
        Check::G => check_g(n),
        Check::Qfi => check_qfi(n),
        Check::Owqd => check_owqd(n),
        Check::Energy => check_energy(n),
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::validation("sample count must be positive"));
    }
    Ok(())
}
