use std::f64::consts::PI;

/// Coarse grid resolution along theta (endpoints 0 and pi included).
pub const THETA_POINTS: usize = 64;
/// Coarse grid resolution along phi (0 included, 2 pi excluded).
pub const PHI_POINTS: usize = 128;

const PARAM_TOL: f64 = 1e-8;
const GOLDEN_WIDTH_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum2d {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)` over the interior points it evaluated.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a).abs() <= width_tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimizes `f(theta, phi)` over `theta in [0, pi]`, `phi in [0, 2 pi]`.
///
/// A `THETA_POINTS x PHI_POINTS` grid scan picks the starting point (first
/// minimum in lexicographic `(theta, phi)` order), then coordinate-wise
/// golden-section sweeps refine it until a sweep moves the point by less than
/// 1e-8. Refinement only accepts strict improvements, so the result never
/// exceeds the best grid sample and ties keep the grid point.
pub fn minimize_2d(f: impl Fn(f64, f64) -> f64) -> Minimum2d {
    let d_theta = PI / (THETA_POINTS - 1) as f64;
    let d_phi = 2.0 * PI / PHI_POINTS as f64;

    let mut best = Minimum2d {
        value: f64::INFINITY,
        theta: 0.0,
        phi: 0.0,
    };
    for i in 0..THETA_POINTS {
        let theta = i as f64 * d_theta;
        for j in 0..PHI_POINTS {
            let phi = j as f64 * d_phi;
            let v = f(theta, phi);
            if v < best.value {
                best = Minimum2d { value: v, theta, phi };
            }
        }
    }
    if !best.value.is_finite() {
        return best;
    }

    let improves = |candidate: f64, current: f64| {
        candidate < current - 4.0 * f64::EPSILON * current.abs().max(f64::MIN_POSITIVE)
    };

    for _ in 0..MAX_SWEEPS {
        let start = best;

        let lo = (best.theta - d_theta).max(0.0);
        let hi = (best.theta + d_theta).min(PI);
        let phi = best.phi;
        let (theta, v) = golden_section(|t| f(t, phi), lo, hi, GOLDEN_WIDTH_TOL);
        if improves(v, best.value) {
            best = Minimum2d { value: v, theta, phi };
        }

        let lo = (best.phi - d_phi).max(0.0);
        let hi = (best.phi + d_phi).min(2.0 * PI);
        let theta = best.theta;
        let (phi, v) = golden_section(|p| f(theta, p), lo, hi, GOLDEN_WIDTH_TOL);
        if improves(v, best.value) {
            best = Minimum2d { value: v, theta, phi };
        }

        let moved = (best.theta - start.theta).abs() + (best.phi - start.phi).abs();
        if moved < PARAM_TOL {
            break;
        }
    }
    best
}
