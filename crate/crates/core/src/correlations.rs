//! Ground-state two-point correlators of the infinite XX chain with
//! three-spin interaction (anisotropy fixed to zero, `J = 1`).
//!
//! The free-fermion contraction `G_m` is piecewise in the coupling ratio:
//! below `alpha = 1` the Fermi sea is `(-pi/2, pi/2)` for every `alpha`, above it
//! the sea splits into two arcs whose edges move with `arcsin(1/alpha)`.
//! Transverse correlators are Toeplitz determinants of `G`, the longitudinal
//! one is `-G_m^2 / 4`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::determinant;

/// Largest separation for which the Toeplitz determinant is evaluated.
pub const MAX_SEPARATION: u32 = 16;

/// Coupling ratio `alpha = J'/J` of the chain. `J` is 1 and the anisotropy 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
}

impl ModelParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                range: "[0, inf)",
            });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Always zero: only the isotropic-in-plane, `Delta = 0` chain is solved.
    pub fn delta(&self) -> f64 {
        0.0
    }

    pub fn triple(&self, m: u32) -> Result<CorrelationTriple> {
        correlation_triple(m, self.alpha)
    }
}

/// `t_q = 4 <S^q_l S^q_{l+m}>` for `q = x, y, z` at separation `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple {
    pub m: u32,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl CorrelationTriple {
    /// Triple with `t2 = t1`, the symmetry of the XX chain.
    pub fn isotropic(m: u32, t1: f64, t3: f64) -> Self {
        Self { m, t1, t2: t1, t3 }
    }
}

/// Free-fermion contraction `G_{l,l+m}` of the infinite chain.
///
/// `G_0 = 0` (half filling) and `G_{-m} = G_m`.
pub fn g_function(m: i64, alpha: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let k = m.unsigned_abs();
    if k.is_multiple_of(2) {
        return 0.0;
    }
    let mf = k as f64;
    // at alpha = 1 the edge asin(1/alpha) is pi/2 and the branches coincide;
    // sin(k pi / 2) = +-1 is taken exactly there
    if alpha <= 1.0 {
        let sign = if k % 4 == 1 { 1.0 } else { -1.0 };
        sign * 2.0 / (mf * PI)
    } else {
        2.0 / (mf * PI) * (mf * (1.0 / alpha).asin()).sin()
    }
}

fn check_separation(m: u32) -> Result<()> {
    if !(1..=MAX_SEPARATION).contains(&m) {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            range: "1..=16",
        });
    }
    Ok(())
}

/// `<S^x_l S^x_{l+m}>` as a quarter of the `m x m` Toeplitz determinant with
/// entries `G_{j - i + 1}`.
pub fn sx_correlation(m: u32, alpha: f64) -> Result<f64> {
    check_separation(m)?;
    let n = m as usize;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| g_function(j as i64 - i as i64 + 1, alpha)).collect())
        .collect();
    Ok(0.25 * determinant(&rows)?)
}

/// `<S^z_l S^z_{l+m}> = -G_m^2 / 4`, always in `[-1/4, 0]`.
pub fn sz_correlation(m: u32, alpha: f64) -> f64 {
    let g = g_function(m as i64, alpha);
    -0.25 * g * g
}

pub fn correlation_triple(m: u32, alpha: f64) -> Result<CorrelationTriple> {
    ModelParams::new(alpha)?;
    let t1 = 4.0 * sx_correlation(m, alpha)?;
    let t3 = 4.0 * sz_correlation(m, alpha);
    Ok(CorrelationTriple::isotropic(m, t1, t3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn g_examples() {
        assert!((g_function(1, 0.5) - 2.0 / PI).abs() < 1e-15);
        assert!(g_function(2, 0.3).abs() < 1e-15);
        assert_eq!(g_function(2, 2.0), 0.0);
        assert!((g_function(1, 2.0) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(g_function(0, 0.4), 0.0);
        assert_eq!(g_function(0, 4.0), 0.0);
    }

    #[test]
    fn g_is_even() {
        for m in 1..10 {
            for &a in &[0.0, 0.5, 1.0, 1.7, 9.0] {
                assert_eq!(g_function(m, a), g_function(-m, a));
            }
        }
    }

    #[test]
    fn branch_continuity() {
        for m in 1..=8 {
            let lo = g_function(m, 1.0 - 1e-9);
            let hi = g_function(m, 1.0 + 1e-9);
            assert!((lo - hi).abs() < 1e-6, "m = {m}");
            assert_eq!(g_function(m, 1.0), g_function(m, 0.999));
        }
    }

    #[test]
    fn sx_examples() {
        assert!((sx_correlation(1, 0.5).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((sx_correlation(1, 1.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((sx_correlation(2, 0.5).unwrap() - 1.0 / (PI * PI)).abs() < 1e-15);
        assert!((sx_correlation(1, 2.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        // 3x3 determinant G1^2 (G1 - G3) = 32 / (3 pi^3) below the transition
        assert!((sx_correlation(3, 0.2).unwrap() - 8.0 / (3.0 * PI.powi(3))).abs() < 1e-15);
    }

    #[test]
    fn sx_rejects_bad_separation() {
        assert!(matches!(sx_correlation(0, 0.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(sx_correlation(17, 0.5), Err(Error::OutOfRange { .. })));
        assert!(sx_correlation(16, 0.5).is_ok());
    }

    #[test]
    fn sz_examples() {
        assert!((sz_correlation(1, 0.7) + 1.0 / (PI * PI)).abs() < 1e-15);
        assert_eq!(sz_correlation(2, 0.7), 0.0);
        assert_eq!(sz_correlation(2, 3.0), 0.0);
        assert!(sz_correlation(1, 1000.0).abs() < 1e-6);
    }

    #[test]
    fn triple_examples() {
        let t = correlation_triple(1, 0.5).unwrap();
        assert!((t.t1 - 2.0 / PI).abs() < 1e-15);
        assert_eq!(t.t1, t.t2);
        assert!((t.t3 + 4.0 / (PI * PI)).abs() < 1e-15);

        let t = correlation_triple(2, 0.5).unwrap();
        assert!((t.t1 - 4.0 / (PI * PI)).abs() < 1e-15);
        assert_eq!(t.t3, 0.0);

        assert_eq!(correlation_triple(1, 1.0).unwrap(), correlation_triple(1, 0.5).unwrap());
    }

    #[test]
    fn m1_decay_above_transition() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let a = 1.0 + i as f64 * 0.5;
            let t1 = correlation_triple(1, a).unwrap().t1;
            assert!((t1 - 2.0 / (PI * a)).abs() < 1e-14);
            assert!(t1 < prev);
            prev = t1;
        }
        assert!(correlation_triple(1, 100.0).unwrap().t1 < 0.0064);
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::new(-0.1).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
        let p = ModelParams::new(0.3).unwrap();
        assert_eq!(p.delta(), 0.0);
        assert_eq!(p.triple(1).unwrap(), correlation_triple(1, 0.3).unwrap());
    }

    proptest! {
        #[test]
        fn flat_below_transition(a in 0.0f64..1.0, b in 0.0f64..1.0, m in 1u32..=8) {
            prop_assert_eq!(correlation_triple(m, a).unwrap(), correlation_triple(m, b).unwrap());
        }

        #[test]
        fn triple_is_physical(a in 0.0f64..200.0, m in 1u32..=16) {
            let t = correlation_triple(m, a).unwrap();
            prop_assert!(t.t1.abs() < 1.0);
            prop_assert!((-1.0..=0.0).contains(&t.t3));
            prop_assert!(1.0 - t.t3 >= 2.0 * t.t1.abs());
        }
    }
}
