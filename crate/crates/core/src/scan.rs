//! Seeded randomized verification batches.
//!
//! Every batch draws from a [`ChaCha8Rng`] seeded with the given value and
//! runs sequentially, so a seed fixes the output exactly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::numerics::interior;
use crate::dynamics::{eigenvalues_from_rates, rates_from_eigenvalues, RateTrajectory, TimeGrid};
use crate::mixtures::{verify_prop2, SemigroupMixtureSpec};
use crate::{HermitianOperator2, PhaseCovariantChannel, Result, Tolerances};

/// Round-trip error accepted by the `roundtrip` batch.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-6;
/// Covariance defect accepted by the `covariance` batch.
pub const COVARIANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Random semigroup mixtures have nonnegative rates.
    Prop2,
    /// The closed-form CP test agrees with the Choi spectrum.
    CpChoi,
    /// Rates to eigenvalues and back.
    Roundtrip,
    /// Channels commute with rotations about z.
    Covariance,
}

impl ScanKind {
    pub const ALL: [Self; 4] = [Self::Prop2, Self::CpChoi, Self::Roundtrip, Self::Covariance];

    pub fn name(self) -> &'static str {
        match self {
            Self::Prop2 => "prop2",
            Self::CpChoi => "cp-choi",
            Self::Roundtrip => "roundtrip",
            Self::Covariance => "covariance",
        }
    }

    fn statistic(self) -> &'static str {
        match self {
            Self::Prop2 => "min_rate",
            Self::CpChoi => "min_abs_choi_eigenvalue",
            Self::Roundtrip => "max_error",
            Self::Covariance => "max_defect",
        }
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scan kind `{s}` (expected prop2, cp-choi, roundtrip or covariance)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSummary {
    pub kind: ScanKind,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    /// Worst case of the batch statistic: smallest rate for `prop2`, the
    /// Choi eigenvalue closest to zero for `cp-choi`, largest error or
    /// defect otherwise.
    pub worst: f64,
}

impl ScanSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.count
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scan={} seed={} passed={}/{} {}={:.6e}",
            self.kind,
            self.seed,
            self.passed,
            self.count,
            self.kind.statistic(),
            self.worst
        )
    }
}

/// Uniform point on the probability simplex.
pub fn random_simplex<R: Rng>(rng: &mut R) -> [f64; 3] {
    let (a, b) = (rng.gen::<f64>(), rng.gen::<f64>());
    let (lo, hi) = (a.min(b), a.max(b));
    [lo, hi - lo, 1.0 - hi]
}

/// Weights from the simplex, rates uniform in `[0, 5]`.
pub fn random_semigroup_spec<R: Rng>(rng: &mut R) -> SemigroupMixtureSpec {
    let rates = [rng.gen_range(0.0..=5.0), rng.gen_range(0.0..=5.0), rng.gen_range(0.0..=5.0)];
    SemigroupMixtureSpec::new(random_simplex(rng), rates).expect("simplex weights and nonnegative rates")
}

/// Each rate is `Σ_k c_k e^{-a_k t}` with one to three terms,
/// `c_k >= 0`, `Σ c_k <= 5` and `a_k ∈ [1, 3]`.
pub fn random_smooth_rates<R: Rng>(rng: &mut R, grid: &TimeGrid) -> RateTrajectory {
    let mut one = || {
        let terms = rng.gen_range(1..=3);
        let raw: Vec<f64> = (0..terms).map(|_| rng.gen::<f64>()).collect();
        let total = rng.gen_range(0.0..=5.0);
        let sum: f64 = raw.iter().sum::<f64>().max(f64::MIN_POSITIVE);
        let decay: Vec<(f64, f64)> = raw.iter().map(|r| (total * r / sum, rng.gen_range(1.0..=3.0))).collect();
        grid.map(|t| decay.iter().map(|(c, a)| c * (-a * t).exp()).sum())
    };
    let (gp, gm, g3) = (one(), one(), one());
    RateTrajectory::new(grid.clone(), gp, gm, g3).expect("samples match the grid")
}

/// Hermitian operator with entries uniform in `[-1, 1]`.
pub fn random_hermitian<R: Rng>(rng: &mut R) -> HermitianOperator2 {
    HermitianOperator2::from_parts(
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)),
    )
}

/// Eigenvalue triple uniform in `[-1.5, 1.5]³`.
pub fn random_triple<R: Rng>(rng: &mut R) -> PhaseCovariantChannel {
    PhaseCovariantChannel::new(rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5))
}

/// Largest interior deviation between the rates and those recovered from
/// their eigenvalue trajectory.
pub fn roundtrip_error(rates: &RateTrajectory, singularity: f64) -> Result<f64> {
    let traj = eigenvalues_from_rates(rates)?;
    let rec = rates_from_eigenvalues(&traj, singularity);
    let mut worst = 0.0_f64;
    for i in interior(rates.len()) {
        match rec.rates.at_index(i) {
            Some(r) => worst = worst.max(r.max_abs_diff(&rates.rates(i))),
            None => return Ok(f64::INFINITY),
        }
    }
    Ok(worst)
}

pub fn run_scan(kind: ScanKind, count: usize, seed: u64, grid: &TimeGrid, tol: &Tolerances) -> Result<ScanSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut worst = match kind {
        ScanKind::Prop2 | ScanKind::CpChoi => f64::INFINITY,
        ScanKind::Roundtrip | ScanKind::Covariance => 0.0,
    };
    for _ in 0..count {
        match kind {
            ScanKind::Prop2 => {
                let spec = random_semigroup_spec(&mut rng);
                let report = verify_prop2(&spec, grid, tol.divisibility, tol.identity)?;
                worst = worst.min(report.min_rate);
                passed += usize::from(report.cp_divisible);
            }
            ScanKind::CpChoi => {
                let ch = random_triple(&mut rng);
                let min_eig = ch.choi().min_eigenvalue();
                worst = worst.min(min_eig.abs());
                passed += usize::from(ch.is_completely_positive(0.0) == (min_eig >= -tol.cp));
            }
            ScanKind::Roundtrip => {
                let err = roundtrip_error(&random_smooth_rates(&mut rng, grid), tol.singularity)?;
                worst = worst.max(err);
                passed += usize::from(err <= ROUNDTRIP_TOLERANCE);
            }
            ScanKind::Covariance => {
                let ch = random_triple(&mut rng);
                let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                let d = ch.covariance_defect(phi, &random_hermitian(&mut rng));
                worst = worst.max(d);
                passed += usize::from(d <= COVARIANCE_TOLERANCE);
            }
        }
    }
    Ok(ScanSummary { kind, seed, count, passed, worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip_through_names() {
        for k in ScanKind::ALL {
            assert_eq!(k.name().parse::<ScanKind>().unwrap(), k);
        }
        assert!("prop3".parse::<ScanKind>().is_err());
    }

    #[test]
    fn same_seed_same_summary() {
        let g = TimeGrid::new(5.0, 201).unwrap();
        let tol = Tolerances::default();
        for k in ScanKind::ALL {
            let a = run_scan(k, 20, 7, &g, &tol).unwrap();
            let b = run_scan(k, 20, 7, &g, &tol).unwrap();
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn small_batches_pass() {
        let g = TimeGrid::default();
        let tol = Tolerances::default();
        for k in ScanKind::ALL {
            let s = run_scan(k, 30, 3, &g, &tol).unwrap();
            assert!(s.all_passed(), "{s}");
        }
    }

    #[test]
    fn smooth_rates_stay_bounded() {
        let g = TimeGrid::new(10.0, 101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let r = random_smooth_rates(&mut rng, &g);
            assert!(r.samples().all(|(_, x)| x.min() >= 0.0 && x.gamma_plus.max(x.gamma_minus).max(x.gamma3) <= 5.0));
        }
    }
}
