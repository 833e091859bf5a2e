use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Largest dimension handled by [`hermitian_eig`].
pub const MAX_EIG_DIM: usize = 256;

/// Dimensions up to this use cyclic Jacobi; larger ones Householder + QL.
const JACOBI_MAX_DIM: usize = 16;

/// Eigenvalues within this distance are treated as one degenerate cluster.
const DEGENERACY_TOL: f64 = 1e-9;

const MAX_JACOBI_SWEEPS: usize = 100;
const MAX_QL_ITERATIONS: usize = 64;

/// Ascending eigenvalues and the matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// `sum_i values[i] |v_i><v_i|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * v[(c, k)].conj() * self.values[k])
                .sum()
        })
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Deterministic for identical input. Eigenvectors inside a degenerate cluster
/// are re-orthonormalized; which orthonormal basis of the cluster comes out is
/// otherwise unspecified.
pub fn hermitian_eig(m: &HermitianMatrix) -> Result<EigenSystem> {
    let n = m.dim();
    if n > MAX_EIG_DIM {
        return Err(Error::validation(format!(
            "eigensolver dimension {n} exceeds {MAX_EIG_DIM}"
        )));
    }
    if n == 0 {
        return Ok(EigenSystem {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0),
        });
    }
    let (values, vectors) = if n <= JACOBI_MAX_DIM {
        jacobi(m.matrix())?
    } else {
        householder_ql(m.matrix())?
    };
    Ok(finish(values, vectors))
}

/// Solver used for dimensions above the Jacobi cutoff, exposed so the two
/// paths can be compared on the same input.
#[cfg(test)]
pub(crate) fn eig_householder_ql(m: &HermitianMatrix) -> Result<EigenSystem> {
    let (values, vectors) = householder_ql(m.matrix())?;
    Ok(finish(values, vectors))
}

#[cfg(test)]
pub(crate) fn eig_jacobi(m: &HermitianMatrix) -> Result<EigenSystem> {
    let (values, vectors) = jacobi(m.matrix())?;
    Ok(finish(values, vectors))
}

fn finish(values: Vec<f64>, vectors: ComplexMatrix) -> EigenSystem {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps the solver's order among exactly equal values
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let sorted_values: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut cols: Vec<Vec<Complex64>> = order.iter().map(|&k| vectors.column(k)).collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sorted_values[end] - sorted_values[end - 1] < DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt(&mut cols[start..end]);
        } else {
            normalize(&mut cols[start]);
        }
        start = end;
    }

    EigenSystem {
        values: sorted_values,
        vectors: ComplexMatrix::from_fn(n, |r, c| cols[c][r]),
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|z| *z /= norm);
    }
}

// modified Gram-Schmidt, run twice for stability
fn gram_schmidt(cols: &mut [Vec<Complex64>]) {
    for _ in 0..2 {
        for i in 0..cols.len() {
            for j in 0..i {
                let (done, rest) = cols.split_at_mut(i);
                let proj: Complex64 = done[j]
                    .iter()
                    .zip(rest[0].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (x, y) in rest[0].iter_mut().zip(done[j].iter()) {
                    *x -= proj * y;
                }
            }
            normalize(&mut cols[i]);
        }
    }
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Cyclic complex Jacobi. Each rotation is `D P D^H` with `D` a phase that
/// makes the pivot real and `P` the real Jacobi rotation.
fn jacobi(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let target = scale * 1e-32;

    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm_sqr(&a) <= target {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s*phase], [-s*conj(phase), c]]
                let upp = Complex64::new(c, 0.0);
                let upq = phase * s;
                let uqp = -phase.conj() * s;
                let uqq = Complex64::new(c, 0.0);

                // A <- A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                // A <- U^H A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_JACOBI_SWEEPS,
    })
}

/// Householder reduction to a Hermitian tridiagonal matrix, a diagonal phase
/// transform to make it real symmetric, then implicit QL with eigenvector
/// accumulation.
fn householder_ql(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let mut a = m.clone();
    let mut q = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let len = n - lo;
        let mut v: Vec<Complex64> = (lo..n).map(|r| a[(r, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // A <- H A with H = I - 2 v v^H acting on rows lo..n
        for c in 0..n {
            let mut w = zero;
            for i in 0..len {
                w += v[i].conj() * a[(lo + i, c)];
            }
            if w != zero {
                for i in 0..len {
                    a[(lo + i, c)] -= v[i] * w * 2.0;
                }
            }
        }
        // A <- A H, Q <- Q H on columns lo..n
        for target in [&mut a, &mut q] {
            for r in 0..n {
                let mut u = zero;
                for i in 0..len {
                    u += target[(r, lo + i)] * v[i];
                }
                if u != zero {
                    for i in 0..len {
                        target[(r, lo + i)] -= u * v[i].conj() * 2.0;
                    }
                }
            }
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let off = a[(i + 1, i)];
        let mag = off.norm();
        e[i] = mag;
        phases[i + 1] = if mag > 0.0 { phases[i] * off / mag } else { phases[i] };
    }
    for r in 0..n {
        for c in 0..n {
            q[(r, c)] *= phases[c];
        }
    }

    tql(&mut d, &mut e, &mut q)?;
    Ok((d, q))
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e[i]` coupling `i` and `i + 1`. Rotations accumulate into the
/// columns of `z`.
fn tql(d: &mut [f64], e: &mut [f64], z: &mut ComplexMatrix) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zf = z[(k, i + 1)];
                    let zi = z[(k, i)];
                    z[(k, i + 1)] = zi * s + zf * c;
                    z[(k, i)] = zi * c - zf * s;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
        let raw = ComplexMatrix::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        HermitianMatrix::symmetrized(raw)
    }

    fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        gram_schmidt(&mut cols);
        ComplexMatrix::from_fn(n, |r, k| cols[k][r])
    }

    fn check_system(m: &HermitianMatrix, es: &EigenSystem, tol: f64) {
        let n = m.dim();
        assert!(es.values.windows(2).all(|w| w[0] <= w[1]), "not ascending");
        let recon = es.reconstruct();
        assert!(recon.max_abs_diff(m.matrix()) < tol, "reconstruction {}", recon.max_abs_diff(m.matrix()));
        let gram = &es.vectors.adjoint() * &es.vectors;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < tol);
        let tr: f64 = es.values.iter().sum();
        assert!((tr - m.trace()).abs() < tol);
    }

    #[test]
    fn identity_and_pauli_x() {
        let id = HermitianMatrix::new(ComplexMatrix::identity(2)).unwrap();
        assert_eq!(hermitian_eig(&id).unwrap().values, vec![1.0, 1.0]);

        let x = HermitianMatrix::new(ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])).unwrap();
        let es = hermitian_eig(&x).unwrap();
        assert!((es.values[0] + 1.0).abs() < 1e-15 && (es.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_input_gives_permuted_basis() {
        let m = HermitianMatrix::new(ComplexMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        let es = hermitian_eig(&m).unwrap();
        assert_eq!(es.values, vec![1.0, 2.0, 3.0]);
        for (col, basis) in [(0, 1), (1, 2), (2, 0)] {
            assert!((es.vectors[(basis, col)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn random_hermitian_both_solvers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[2usize, 3, 4, 8, 12, 17, 40, 100] {
            let m = random_hermitian(n, &mut rng);
            let a = eig_jacobi(&m).unwrap();
            let b = eig_householder_ql(&m).unwrap();
            check_system(&m, &a, 1e-10);
            check_system(&m, &b, 1e-10);
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn full_size_tridiagonal_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_hermitian(MAX_EIG_DIM, &mut rng);
        let es = hermitian_eig(&m).unwrap();
        check_system(&m, &es, 1e-10);
    }

    #[test]
    fn recovers_spectrum_of_rotated_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &n in &[4usize, 8, 30] {
            let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            // force a degenerate pair
            d[1] = d[0];
            let u = random_unitary(n, &mut rng);
            let m = &(&u * &ComplexMatrix::diagonal(&d)) * &u.adjoint();
            let m = HermitianMatrix::symmetrized(m);
            let es = hermitian_eig(&m).unwrap();
            d.sort_by(f64::total_cmp);
            for (x, y) in es.values.iter().zip(&d) {
                assert!((x - y).abs() < 1e-9);
            }
            check_system(&m, &es, 1e-10);
        }
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_hermitian(20, &mut rng);
        let a = hermitian_eig(&m).unwrap();
        let b = hermitian_eig(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn rejects_oversized() {
        let m = HermitianMatrix::new(ComplexMatrix::identity(MAX_EIG_DIM + 1)).unwrap();
        assert!(hermitian_eig(&m).is_err());
    }
}
