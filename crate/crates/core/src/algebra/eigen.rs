//! Cyclic complex Jacobi eigensolver for 4x4 Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary, then applies the classical real Jacobi rotation. The
//! accumulated unitary holds the eigenvectors as columns.

use num_complex::Complex64;

use super::{hermiticity_defect, mat4_dagger, mat4_identity, mat4_mul, Matrix4};
use crate::{Error, Result, Tolerances};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a 4x4 Hermitian matrix, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian4Spectrum {
    pub eigenvalues: [f64; 4],
}

impl Hermitian4Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[3]
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Eigenvalues (ascending) with the matching eigenvectors stored as columns.
#[derive(Debug, Clone, Copy)]
pub struct Hermitian4Eigen {
    pub spectrum: Hermitian4Spectrum,
    pub vectors: Matrix4,
}

impl Hermitian4Eigen {
    pub fn vector(&self, k: usize) -> [Complex64; 4] {
        [self.vectors[0][k], self.vectors[1][k], self.vectors[2][k], self.vectors[3][k]]
    }
}

pub fn hermitian4_eigenvalues(m: &Matrix4) -> Result<Hermitian4Spectrum> {
    hermitian4_eigen(m, Tolerances::default().eigen_hermiticity).map(|e| e.spectrum)
}

pub fn hermitian4_eigen(m: &Matrix4, hermiticity_tol: f64) -> Result<Hermitian4Eigen> {
    let defect = hermiticity_defect(m);
    if !defect.is_finite() || defect > hermiticity_tol {
        return Err(Error::NotHermitian { defect, tolerance: hermiticity_tol });
    }

    let mut a = *m;
    for i in 0..4 {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
        for j in i + 1..4 {
            let mean = (a[i][j] + a[j][i].conj()) * 0.5;
            a[i][j] = mean;
            a[j][i] = mean.conj();
        }
    }
    let norm = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut v = mat4_identity();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off.sqrt() <= f64::EPSILON * norm * 0.25 {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let mag = a[p][q].norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = a[p][q] / mag;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let mut g = mat4_identity();
                let conj_phase = phase.conj();
                g[p][p] = Complex64::new(c, 0.0);
                g[p][q] = Complex64::new(s, 0.0);
                g[q][p] = conj_phase * (-s);
                g[q][q] = conj_phase * c;

                a = mat4_mul(&mat4_dagger(&g), &mat4_mul(&a, &g));
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
                v = mat4_mul(&v, &g);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let mut eigenvalues = [0.0; 4];
    let mut vectors = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (k, &idx) in order.iter().enumerate() {
        eigenvalues[k] = a[idx][idx].re;
        for row in 0..4 {
            vectors[row][k] = v[row][idx];
        }
    }
    Ok(Hermitian4Eigen { spectrum: Hermitian4Spectrum { eigenvalues }, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng) -> Matrix4 {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            m[i][i] = c(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..4 {
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                m[i][j] = z;
                m[j][i] = z.conj();
            }
        }
        m
    }

    /// Gram-Schmidt on a random complex matrix.
    fn random_unitary(rng: &mut ChaCha8Rng) -> Matrix4 {
        let mut cols: Vec<[Complex64; 4]> = Vec::new();
        while cols.len() < 4 {
            let mut v = [c(0.0, 0.0); 4];
            for x in v.iter_mut() {
                *x = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            for u in &cols {
                let proj: Complex64 = (0..4).map(|k| u[k].conj() * v[k]).sum();
                for k in 0..4 {
                    v[k] -= proj * u[k];
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n > 1e-6 {
                cols.push(v.map(|z| z / n));
            }
        }
        let mut u = [[c(0.0, 0.0); 4]; 4];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                u[i][j] = col[i];
            }
        }
        u
    }

    fn frobenius(m: &Matrix4) -> f64 {
        m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn diagonal_case() {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        m[3][3] = c(2.0, 0.0);
        let s = hermitian4_eigenvalues(&m).unwrap();
        assert_eq!(s.eigenvalues, [0.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn maximally_entangled_projector() {
        // Choi matrix of the identity channel: |00⟩+|11⟩ outer product.
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for &i in &[0, 3] {
            for &j in &[0, 3] {
                m[i][j] = c(1.0, 0.0);
            }
        }
        let s = hermitian4_eigenvalues(&m).unwrap();
        for (got, want) in s.eigenvalues.iter().zip([0.0, 0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        m[0][1] = c(1.0, 0.0);
        assert!(matches!(hermitian4_eigenvalues(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix() {
        let m = [[c(0.0, 0.0); 4]; 4];
        assert_eq!(hermitian4_eigenvalues(&m).unwrap().eigenvalues, [0.0; 4]);
    }

    #[test]
    fn residuals_and_trace_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let m = random_hermitian(&mut rng);
            let eig = hermitian4_eigen(&m, 1e-10).unwrap();
            let trace: f64 = (0..4).map(|i| m[i][i].re).sum();
            assert!((eig.spectrum.sum() - trace).abs() < 1e-10);
            let scale = frobenius(&m);
            for k in 0..4 {
                let vk = eig.vector(k);
                let lambda = eig.spectrum.eigenvalues[k];
                let resid = (0..4)
                    .map(|i| {
                        let mv: Complex64 = (0..4).map(|j| m[i][j] * vk[j]).sum();
                        (mv - vk[i] * lambda).norm_sqr()
                    })
                    .sum::<f64>()
                    .sqrt();
                assert!(resid <= 1e-9 * scale, "residual {resid}");
            }
            assert!(eig.spectrum.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn spectrum_invariant_under_unitary_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = random_hermitian(&mut rng);
            let u = random_unitary(&mut rng);
            let conj = mat4_mul(&u, &mat4_mul(&m, &mat4_dagger(&u)));
            let a = hermitian4_eigenvalues(&m).unwrap();
            let b = hermitian4_eigenvalues(&conj).unwrap();
            for (x, y) in a.eigenvalues.iter().zip(b.eigenvalues) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_unitary(&mut rng);
        let mut d = [[c(0.0, 0.0); 4]; 4];
        for (i, val) in [1.0, 1.0, 1.0, -0.5].iter().enumerate() {
            d[i][i] = c(*val, 0.0);
        }
        let m = mat4_mul(&u, &mat4_mul(&d, &mat4_dagger(&u)));
        let s = hermitian4_eigenvalues(&m).unwrap();
        for (got, want) in s.eigenvalues.iter().zip([-0.5, 1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
