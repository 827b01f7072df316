//! Static phase-covariant qubit channels.
//!
//! ```text
//! Λ[X] = ½ [ (𝕀 + λ* σ3) tr X + λ1 σ1 tr(σ1 X) + λ1 σ2 tr(σ2 X) + λ3 σ3 tr(σ3 X) ]
//! ```
//!
//! Channels are plain value records. Nothing is validated at construction so
//! that non-physical parameter regions can be probed by the CP checks.

use num_complex::Complex64;

use crate::algebra::{hermitian4_eigen, z_rotation, AffineSuperoperator, Hermitian4Spectrum, Matrix4};
use crate::{Error, HermitianOperator2, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCovariantChannel {
    pub lambda1: f64,
    pub lambda3: f64,
    pub lambda_star: f64,
}

/// Outcome of the closed-form complete positivity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpReport {
    pub completely_positive: bool,
    /// `1 - |λ3| - |λ*|`; nonnegative on CP channels.
    pub population_slack: f64,
    /// `(1 + λ3)² - 4λ1² - λ*²`; nonnegative on CP channels.
    pub coherence_slack: f64,
}

/// The state left invariant by a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointState {
    pub state: HermitianOperator2,
}

impl FixedPointState {
    /// Bloch z-component `λ* / (1 - λ3)`.
    pub fn polarization(&self) -> f64 {
        self.state.to_bloch().b3
    }
}

/// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Λ[|i⟩⟨j|]`, unnormalized (trace 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiMatrix {
    pub entries: Matrix4,
}

impl ChoiMatrix {
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].re).sum()
    }

    pub fn spectrum(&self) -> Result<Hermitian4Spectrum> {
        hermitian4_eigen(&self.entries, Tolerances::default().eigen_hermiticity).map(|e| e.spectrum)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        // Choi matrices built here are Hermitian by construction.
        self.spectrum().map(|s| s.min()).unwrap_or(f64::NAN)
    }
}

impl PhaseCovariantChannel {
    pub const IDENTITY: Self = Self { lambda1: 1.0, lambda3: 1.0, lambda_star: 0.0 };

    /// Replaces every input by `𝕀/2`.
    pub const COMPLETELY_DEPOLARIZING: Self = Self { lambda1: 0.0, lambda3: 0.0, lambda_star: 0.0 };

    pub fn new(lambda1: f64, lambda3: f64, lambda_star: f64) -> Self {
        Self { lambda1, lambda3, lambda_star }
    }

    /// Amplitude damping towards `|0⟩` with decay probability `p`.
    pub fn amplitude_damping(p: f64) -> Self {
        Self::new((1.0 - p).sqrt(), 1.0 - p, p)
    }

    pub fn is_finite(&self) -> bool {
        self.lambda1.is_finite() && self.lambda3.is_finite() && self.lambda_star.is_finite()
    }

    pub fn superoperator(&self) -> AffineSuperoperator {
        AffineSuperoperator::new([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, self.lambda1, 0.0, 0.0],
            [0.0, 0.0, self.lambda1, 0.0],
            [self.lambda_star, 0.0, 0.0, self.lambda3],
        ])
    }

    pub fn apply(&self, x: &HermitianOperator2) -> HermitianOperator2 {
        let tr = x.trace();
        let e = x.entries();
        // tr(σ1 X) = 2 Re X01, tr(σ2 X) = -2 Im X01, tr(σ3 X) = X00 - X11
        let b3 = e[0][0].re - e[1][1].re;
        let z = 0.5 * (self.lambda_star * tr + self.lambda3 * b3);
        HermitianOperator2::from_parts(0.5 * tr + z, 0.5 * tr - z, e[0][1] * self.lambda1)
    }

    pub fn choi(&self) -> ChoiMatrix {
        let (l1, l3, ls) = (self.lambda1, self.lambda3, self.lambda_star);
        let zero = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        let mut entries = [[zero; 4]; 4];
        entries[0][0] = r(0.5 * (1.0 + ls + l3));
        entries[1][1] = r(0.5 * (1.0 - ls - l3));
        entries[2][2] = r(0.5 * (1.0 + ls - l3));
        entries[3][3] = r(0.5 * (1.0 - ls + l3));
        entries[0][3] = r(l1);
        entries[3][0] = r(l1);
        ChoiMatrix { entries }
    }

    /// Closed conditions `|λ3| + |λ*| <= 1` and `4λ1² + λ*² <= (1 + λ3)²`,
    /// each relaxed by `tol`.
    pub fn cp_report(&self, tol: f64) -> CpReport {
        let (l1, l3, ls) = (self.lambda1, self.lambda3, self.lambda_star);
        let population_slack = 1.0 - l3.abs() - ls.abs();
        let coherence_slack = (1.0 + l3).powi(2) - 4.0 * l1 * l1 - ls * ls;
        CpReport {
            completely_positive: population_slack >= -tol && coherence_slack >= -tol,
            population_slack,
            coherence_slack,
        }
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.cp_report(tol).completely_positive
    }

    pub fn fixed_point(&self) -> Result<FixedPointState> {
        let tol = Tolerances::default();
        let gap = 1.0 - self.lambda3;
        if gap.abs() <= tol.degenerate_fixed_point {
            return Err(Error::DegenerateFixedPoint);
        }
        let z = self.lambda_star / gap;
        if !z.is_finite() || z.abs() > 1.0 + tol.cp {
            return Err(Error::FixedPointNotAState(z));
        }
        Ok(FixedPointState { state: HermitianOperator2::from_parts(0.5 * (1.0 + z), 0.5 * (1.0 - z), Complex64::new(0.0, 0.0)) })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.lambda1 * other.lambda1,
            self.lambda3 * other.lambda3,
            self.lambda_star + self.lambda3 * other.lambda_star,
        )
    }

    pub fn commutes_with(&self, other: &Self, tol: f64) -> bool {
        let ab = self.compose(other);
        let ba = other.compose(self);
        ab.max_abs_diff(&ba) <= tol
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.lambda_star.abs() <= tol
    }

    /// `‖Λ[U X U†] - U Λ[X] U†‖` with `U = exp(-i σ3 φ)`, max-abs entry norm.
    pub fn covariance_defect(&self, phi: f64, x: &HermitianOperator2) -> f64 {
        let u = z_rotation(phi);
        let lhs = self.apply(&x.conjugate_by(&u));
        let rhs = self.apply(x).conjugate_by(&u);
        lhs.max_abs_diff(&rhs)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.lambda1 - other.lambda1)
            .abs()
            .max((self.lambda3 - other.lambda3).abs())
            .max((self.lambda_star - other.lambda_star).abs())
    }
}

/// Componentwise convex combination; the channel form is linear in its parameters.
pub fn convex_mix(channels: &[PhaseCovariantChannel], weights: &[f64]) -> Result<PhaseCovariantChannel> {
    validate_weights(weights, channels.len())?;
    let mut mixed = PhaseCovariantChannel::new(0.0, 0.0, 0.0);
    for (ch, &w) in channels.iter().zip(weights) {
        mixed.lambda1 += w * ch.lambda1;
        mixed.lambda3 += w * ch.lambda3;
        mixed.lambda_star += w * ch.lambda_star;
    }
    Ok(mixed)
}

pub(crate) fn validate_weights(weights: &[f64], expected_len: usize) -> Result<()> {
    if weights.len() != expected_len {
        return Err(Error::LengthMismatch { expected: expected_len, actual: weights.len() });
    }
    if weights.is_empty() {
        return Err(Error::InvalidWeights("no weights given".into()));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::InvalidWeights(format!("weight {w} is negative or not finite")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > Tolerances::default().weight_sum {
        return Err(Error::InvalidWeights(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}
