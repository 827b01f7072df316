//! Dense complex linear algebra at qubit scale.
//!
//! Operators are stored as plain `[[Complex64; N]; N]` arrays. Hermitian
//! 2x2 operators map one-to-one onto real affine coordinates
//! `(tr X, tr(σ1 X), tr(σ2 X), tr(σ3 X))`, and every phase-covariant channel
//! acts on those coordinates as a 4x4 real matrix.

mod bloch;
mod eigen;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result, Tolerances};

pub use bloch::{AffineSuperoperator, BlochAffineVector};
pub use eigen::{hermitian4_eigen, hermitian4_eigenvalues, Hermitian4Eigen, Hermitian4Spectrum};

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn mat2_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_dagger(a: &Matrix2) -> Matrix2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// `exp(-i σ3 φ)`, the phase rotation the channels are covariant under.
pub fn z_rotation(phi: f64) -> Matrix2 {
    [[Complex64::from_polar(1.0, -phi), ZERO], [ZERO, Complex64::from_polar(1.0, phi)]]
}

/// Raising operator `σ+ = |0⟩⟨1|`, with `|0⟩` the `+1` eigenvector of σ3.
pub fn sigma_plus() -> Matrix2 {
    [[ZERO, ONE], [ZERO, ZERO]]
}

/// Lowering operator `σ- = |1⟩⟨0|`.
pub fn sigma_minus() -> Matrix2 {
    [[ZERO, ZERO], [ONE, ZERO]]
}

pub fn mat4_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat4_dagger(a: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn mat4_identity() -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = ONE;
    }
    out
}

/// Largest `|m[j][k] - conj(m[k][j])|`.
pub fn hermiticity_defect<const N: usize>(m: &[[Complex64; N]; N]) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..N {
        for k in j..N {
            let d = (m[j][k] - m[k][j].conj()).norm();
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

/// A 2x2 Hermitian operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianOperator2 {
    entries: Matrix2,
}

impl HermitianOperator2 {
    /// Validates Hermiticity with the default tolerance.
    pub fn new(entries: Matrix2) -> Result<Self> {
        Self::with_tolerance(entries, Tolerances::default().hermiticity)
    }

    pub fn with_tolerance(entries: Matrix2, tolerance: f64) -> Result<Self> {
        let defect = hermiticity_defect(&entries);
        if !defect.is_finite() || defect > tolerance {
            return Err(Error::NotHermitian { defect, tolerance });
        }
        Ok(Self::hermitize(entries))
    }

    /// Projects onto the Hermitian part; used where Hermiticity holds up to roundoff.
    pub(crate) fn hermitize(m: Matrix2) -> Self {
        let off = (m[0][1] + m[1][0].conj()) * 0.5;
        Self {
            entries: [[Complex64::new(m[0][0].re, 0.0), off], [off.conj(), Complex64::new(m[1][1].re, 0.0)]],
        }
    }

    /// Builds `[[a, c], [conj(c), b]]`.
    pub fn from_parts(a: f64, b: f64, c: Complex64) -> Self {
        Self { entries: [[Complex64::new(a, 0.0), c], [c.conj(), Complex64::new(b, 0.0)]] }
    }

    pub fn identity() -> Self {
        Self::from_parts(1.0, 1.0, ZERO)
    }

    pub fn zero() -> Self {
        Self::from_parts(0.0, 0.0, ZERO)
    }

    pub fn sigma1() -> Self {
        Self::from_parts(0.0, 0.0, ONE)
    }

    pub fn sigma2() -> Self {
        Self::from_parts(0.0, 0.0, -I)
    }

    pub fn sigma3() -> Self {
        Self::from_parts(1.0, -1.0, ZERO)
    }

    /// `|0⟩⟨0|`.
    pub fn ket0() -> Self {
        Self::from_parts(1.0, 0.0, ZERO)
    }

    /// `|1⟩⟨1|`.
    pub fn ket1() -> Self {
        Self::from_parts(0.0, 1.0, ZERO)
    }

    pub fn entries(&self) -> &Matrix2 {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0].re + self.entries[1][1].re
    }

    pub fn to_bloch(&self) -> BlochAffineVector {
        let m = &self.entries;
        BlochAffineVector {
            trace_part: m[0][0].re + m[1][1].re,
            b1: 2.0 * m[0][1].re,
            b2: -2.0 * m[0][1].im,
            b3: m[0][0].re - m[1][1].re,
        }
    }

    pub fn from_bloch(v: &BlochAffineVector) -> Self {
        Self::from_parts(
            0.5 * (v.trace_part + v.b3),
            0.5 * (v.trace_part - v.b3),
            Complex64::new(0.5 * v.b1, -0.5 * v.b2),
        )
    }

    /// `U X U†` for a unitary `U`.
    pub fn conjugate_by(&self, unitary: &Matrix2) -> Self {
        let m = mat2_mul(&mat2_mul(unitary, &self.entries), &mat2_dagger(unitary));
        Self::hermitize(m)
    }

    /// Max-abs entry distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let b = self.entries[1][1].re;
        let mean = 0.5 * (a + b);
        let radius = (0.25 * (a - b) * (a - b) + self.entries[0][1].norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol
    }
}

impl Add for HermitianOperator2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut entries = self.entries;
        for i in 0..2 {
            for j in 0..2 {
                entries[i][j] += rhs.entries[i][j];
            }
        }
        Self { entries }
    }
}

impl Sub for HermitianOperator2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for HermitianOperator2 {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for HermitianOperator2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        let mut entries = self.entries;
        for row in entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= rhs;
            }
        }
        Self { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_bloch_basis_cases() {
        assert_eq!(HermitianOperator2::identity().to_bloch(), BlochAffineVector::new(2.0, 0.0, 0.0, 0.0));
        assert_eq!(HermitianOperator2::ket0().to_bloch(), BlochAffineVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(HermitianOperator2::sigma1().to_bloch(), BlochAffineVector::new(0.0, 2.0, 0.0, 0.0));
        assert_eq!(HermitianOperator2::sigma2().to_bloch(), BlochAffineVector::new(0.0, 0.0, 2.0, 0.0));
        assert_eq!(HermitianOperator2::sigma3().to_bloch(), BlochAffineVector::new(0.0, 0.0, 0.0, 2.0));
    }

    #[test]
    fn from_bloch_basis_cases() {
        let id = HermitianOperator2::from_bloch(&BlochAffineVector::new(2.0, 0.0, 0.0, 0.0));
        assert_eq!(id, HermitianOperator2::identity());
        let p0 = HermitianOperator2::from_bloch(&BlochAffineVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(p0, HermitianOperator2::ket0());
        let s2 = HermitianOperator2::from_bloch(&BlochAffineVector::new(0.0, 0.0, 2.0, 0.0));
        assert_eq!(s2, HermitianOperator2::sigma2());
    }

    #[test]
    fn pauli_matrices_have_expected_entries() {
        let s2 = HermitianOperator2::sigma2();
        assert_eq!(s2.entries()[0][1], Complex64::new(0.0, -1.0));
        assert_eq!(s2.entries()[1][0], Complex64::new(0.0, 1.0));
        // σ1 σ2 = i σ3
        let prod = mat2_mul(HermitianOperator2::sigma1().entries(), s2.entries());
        assert_eq!(prod[0][0], I);
        assert_eq!(prod[1][1], -I);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = [[ONE, ONE], [ZERO, ONE]];
        assert!(matches!(HermitianOperator2::new(m), Err(Error::NotHermitian { .. })));
        let nan = [[Complex64::new(f64::NAN, 0.0), ZERO], [ZERO, ONE]];
        assert!(HermitianOperator2::new(nan).is_err());
    }

    #[test]
    fn accepts_hermitian_within_tolerance() {
        let m = [[ONE, Complex64::new(0.3, 0.2)], [Complex64::new(0.3, -0.2 + 1e-14), ONE]];
        assert!(HermitianOperator2::new(m).is_ok());
    }

    #[test]
    fn z_rotation_is_unitary() {
        let u = z_rotation(0.731);
        let p = mat2_mul(&u, &mat2_dagger(&u));
        assert!((p[0][0] - ONE).norm() < 1e-15 && p[0][1].norm() < 1e-15);
    }

    #[test]
    fn ladder_operators() {
        // σ- σ+ = |1⟩⟨1|
        let p = mat2_mul(&sigma_minus(), &sigma_plus());
        assert_eq!(p, *HermitianOperator2::ket1().entries());
    }
}
