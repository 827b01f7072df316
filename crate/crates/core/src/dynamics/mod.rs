//! Time-dependent phase-covariant dynamical maps.
//!
//! A map is sampled on a uniform [`TimeGrid`] either through its eigenvalues
//! ([`EigenvalueTrajectory`]) or through the decoherence rates of its
//! time-local generator ([`RateTrajectory`]). The two are converted into one
//! another by quadrature and finite differences.

mod convert;
pub mod csv_io;
mod divisibility;
mod generator;
pub mod numerics;

use crate::{Error, PhaseCovariantChannel, Result};

pub use convert::{eigenvalues_from_rates, rates_from_eigenvalues, semigroup_channel, semigroup_trajectory, RateReconstruction};
pub use divisibility::{
    cp_divisibility_via_choi, is_commutative_family, is_cp_divisible, CommutativityReport, DivisibilityMethod,
    DivisibilityReport,
};
pub use generator::generator_action;

/// Uniform samples `t_i = i * t_max / (n_points - 1)` on `[0, t_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    points: Vec<f64>,
}

impl TimeGrid {
    pub const DEFAULT_T_MAX: f64 = 10.0;
    pub const DEFAULT_POINTS: usize = 2001;

    pub fn new(t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidGrid(format!("t_max must be positive and finite, got {t_max}")));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 points, got {n_points}")));
        }
        let last = (n_points - 1) as f64;
        let points = (0..n_points).map(|i| t_max * i as f64 / last).collect();
        Ok(Self { t_max, points })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.t_max / (self.points.len() - 1) as f64
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// Index of the grid point at `t`, allowing roundoff of `1e-9 h`.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let h = self.step();
        let pos = (t / h).round();
        if !(pos >= 0.0 && pos < self.len() as f64) {
            return None;
        }
        let i = pos as usize;
        ((self.points[i] - t).abs() <= 1e-9 * h).then_some(i)
    }

    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.points.iter().copied().map(f).collect()
    }
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_T_MAX, Self::DEFAULT_POINTS).expect("default grid is valid")
    }
}

/// Decoherence rates `(γ+, γ-, γ3)` at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceRates {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub gamma3: f64,
}

impl DecoherenceRates {
    pub const ZERO: Self = Self { gamma_plus: 0.0, gamma_minus: 0.0, gamma3: 0.0 };

    pub fn new(gamma_plus: f64, gamma_minus: f64, gamma3: f64) -> Self {
        Self { gamma_plus, gamma_minus, gamma3 }
    }

    pub fn min(&self) -> f64 {
        self.gamma_plus.min(self.gamma_minus).min(self.gamma3)
    }

    pub fn is_finite(&self) -> bool {
        self.gamma_plus.is_finite() && self.gamma_minus.is_finite() && self.gamma3.is_finite()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.gamma_plus - other.gamma_plus)
            .abs()
            .max((self.gamma_minus - other.gamma_minus).abs())
            .max((self.gamma3 - other.gamma3).abs())
    }
}

/// `λ1(t), λ3(t), λ*(t)` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueTrajectory {
    pub grid: TimeGrid,
    pub lambda1: Vec<f64>,
    pub lambda3: Vec<f64>,
    pub lambda_star: Vec<f64>,
}

impl EigenvalueTrajectory {
    pub fn new(grid: TimeGrid, lambda1: Vec<f64>, lambda3: Vec<f64>, lambda_star: Vec<f64>) -> Result<Self> {
        for seq in [&lambda1, &lambda3, &lambda_star] {
            if seq.len() != grid.len() {
                return Err(Error::LengthMismatch { expected: grid.len(), actual: seq.len() });
            }
        }
        if !lambda1.iter().chain(&lambda3).chain(&lambda_star).all(|x| x.is_finite()) {
            return Err(Error::NonFinite("eigenvalue trajectory"));
        }
        Ok(Self { grid, lambda1, lambda3, lambda_star })
    }

    pub fn from_fn<F: FnMut(f64) -> PhaseCovariantChannel>(grid: &TimeGrid, mut f: F) -> Result<Self> {
        let channels: Vec<_> = grid.points().iter().map(|&t| f(t)).collect();
        Self::new(
            grid.clone(),
            channels.iter().map(|c| c.lambda1).collect(),
            channels.iter().map(|c| c.lambda3).collect(),
            channels.iter().map(|c| c.lambda_star).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn channel_at(&self, i: usize) -> PhaseCovariantChannel {
        PhaseCovariantChannel::new(self.lambda1[i], self.lambda3[i], self.lambda_star[i])
    }

    pub fn channels(&self) -> impl Iterator<Item = PhaseCovariantChannel> + '_ {
        (0..self.len()).map(|i| self.channel_at(i))
    }

    /// Checks `Λ(0) = id` and complete positivity at every grid point.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.channel_at(0).max_abs_diff(&PhaseCovariantChannel::IDENTITY) > tol {
            return Err(Error::InvalidRates(format!("trajectory does not start at the identity: {:?}", self.channel_at(0))));
        }
        if let Some(i) = (0..self.len()).find(|&i| !self.channel_at(i).is_completely_positive(tol)) {
            return Err(Error::InvalidRates(format!("channel at t = {} is not completely positive", self.grid.point(i))));
        }
        Ok(())
    }

    /// Propagator `V(t, s)` with `V(t, s) ∘ Λ(s) = Λ(t)`; both times must be grid points.
    pub fn propagator(&self, t: f64, s: f64, singularity: f64) -> Result<PhaseCovariantChannel> {
        if t < s {
            return Err(Error::TimeOrder { t, s });
        }
        let ti = self.grid.index_of(t).ok_or(Error::OffGrid(t))?;
        let si = self.grid.index_of(s).ok_or(Error::OffGrid(s))?;
        self.propagator_at(ti, si, singularity)
    }

    pub fn propagator_at(&self, ti: usize, si: usize, singularity: f64) -> Result<PhaseCovariantChannel> {
        propagator_between(&self.channel_at(ti), &self.channel_at(si), singularity)
            .ok_or_else(|| Error::NonInvertible(self.grid.point(si)))
    }
}

/// `V` with `V ∘ earlier = later`, or `None` when `earlier` is not invertible.
pub fn propagator_between(
    later: &PhaseCovariantChannel,
    earlier: &PhaseCovariantChannel,
    singularity: f64,
) -> Option<PhaseCovariantChannel> {
    if earlier.lambda1.abs() < singularity || earlier.lambda3.abs() < singularity {
        return None;
    }
    let ratio3 = later.lambda3 / earlier.lambda3;
    Some(PhaseCovariantChannel::new(
        later.lambda1 / earlier.lambda1,
        ratio3,
        later.lambda_star - earlier.lambda_star * ratio3,
    ))
}

/// Rates sampled on a subset of grid points.
///
/// Reconstructed rates omit points near singularities of the map; those
/// indices are absent from `indices` rather than stored as non-finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTrajectory {
    pub grid: TimeGrid,
    indices: Vec<usize>,
    pub gamma_plus: Vec<f64>,
    pub gamma_minus: Vec<f64>,
    pub gamma3: Vec<f64>,
}

impl RateTrajectory {
    /// Rates at every grid point.
    pub fn new(grid: TimeGrid, gamma_plus: Vec<f64>, gamma_minus: Vec<f64>, gamma3: Vec<f64>) -> Result<Self> {
        let indices = (0..grid.len()).collect();
        Self::with_indices(grid, indices, gamma_plus, gamma_minus, gamma3)
    }

    pub fn with_indices(
        grid: TimeGrid,
        indices: Vec<usize>,
        gamma_plus: Vec<f64>,
        gamma_minus: Vec<f64>,
        gamma3: Vec<f64>,
    ) -> Result<Self> {
        for seq in [&gamma_plus, &gamma_minus, &gamma3] {
            if seq.len() != indices.len() {
                return Err(Error::LengthMismatch { expected: indices.len(), actual: seq.len() });
            }
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.last().is_some_and(|&i| i >= grid.len()) {
            return Err(Error::InvalidGrid("rate indices must be increasing grid indices".into()));
        }
        if !gamma_plus.iter().chain(&gamma_minus).chain(&gamma3).all(|x| x.is_finite()) {
            return Err(Error::NonFinite("rate trajectory"));
        }
        Ok(Self { grid, indices, gamma_plus, gamma_minus, gamma3 })
    }

    pub fn from_fn<F: FnMut(f64) -> DecoherenceRates>(grid: &TimeGrid, mut f: F) -> Result<Self> {
        let rates: Vec<_> = grid.points().iter().map(|&t| f(t)).collect();
        Self::new(
            grid.clone(),
            rates.iter().map(|r| r.gamma_plus).collect(),
            rates.iter().map(|r| r.gamma_minus).collect(),
            rates.iter().map(|r| r.gamma3).collect(),
        )
    }

    pub fn constant(grid: &TimeGrid, rates: DecoherenceRates) -> Result<Self> {
        Self::from_fn(grid, |_| rates)
    }

    /// Number of stored samples.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.indices.len() == self.grid.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn time(&self, k: usize) -> f64 {
        self.grid.point(self.indices[k])
    }

    pub fn rates(&self, k: usize) -> DecoherenceRates {
        DecoherenceRates::new(self.gamma_plus[k], self.gamma_minus[k], self.gamma3[k])
    }

    /// `(t, rates)` pairs in time order.
    pub fn samples(&self) -> impl Iterator<Item = (f64, DecoherenceRates)> + '_ {
        (0..self.len()).map(|k| (self.time(k), self.rates(k)))
    }

    /// Rates at grid index `i`, if stored.
    pub fn at_index(&self, i: usize) -> Option<DecoherenceRates> {
        self.indices.binary_search(&i).ok().map(|k| self.rates(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_invariants() {
        let g = TimeGrid::default();
        assert_eq!(g.len(), 2001);
        assert_eq!(g.point(0), 0.0);
        assert_eq!(g.point(2000), 10.0);
        assert!((g.step() - 0.005).abs() < 1e-15);
        assert!(g.points().windows(2).all(|w| w[1] > w[0]));
        assert!(g.points().windows(2).all(|w| ((w[1] - w[0]) - g.step()).abs() < 1e-12));
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(TimeGrid::new(0.0, 11).is_err());
        assert!(TimeGrid::new(-1.0, 11).is_err());
        assert!(TimeGrid::new(f64::NAN, 11).is_err());
        assert!(TimeGrid::new(1.0, 2).is_err());
    }

    #[test]
    fn index_lookup() {
        let g = TimeGrid::new(1.0, 11).unwrap();
        assert_eq!(g.index_of(0.3), Some(3));
        assert_eq!(g.index_of(0.0), Some(0));
        assert_eq!(g.index_of(1.0), Some(10));
        assert_eq!(g.index_of(0.35), None);
        assert_eq!(g.index_of(1.1), None);
        assert_eq!(g.index_of(-0.1), None);
    }

    #[test]
    fn trajectory_length_checks() {
        let g = TimeGrid::new(1.0, 5).unwrap();
        assert!(matches!(
            EigenvalueTrajectory::new(g.clone(), vec![1.0; 4], vec![1.0; 5], vec![0.0; 5]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            EigenvalueTrajectory::new(g.clone(), vec![f64::NAN; 5], vec![1.0; 5], vec![0.0; 5]),
            Err(Error::NonFinite(_))
        ));
        assert!(RateTrajectory::new(g.clone(), vec![0.0; 5], vec![0.0; 5], vec![f64::INFINITY; 5]).is_err());
        assert!(RateTrajectory::with_indices(g, vec![2, 1], vec![0.0; 2], vec![0.0; 2], vec![0.0; 2]).is_err());
    }

    #[test]
    fn validation_flags_bad_start_and_non_cp() {
        let g = TimeGrid::new(1.0, 5).unwrap();
        let bad_start = EigenvalueTrajectory::new(g.clone(), vec![0.9; 5], vec![1.0; 5], vec![0.0; 5]).unwrap();
        assert!(bad_start.validate(1e-9).is_err());
        let non_cp = EigenvalueTrajectory::from_fn(&g, |t| PhaseCovariantChannel::new(1.0, 1.0 - t, 0.0)).unwrap();
        assert!(non_cp.validate(1e-9).is_err());
        let ok = EigenvalueTrajectory::from_fn(&g, |t| PhaseCovariantChannel::new((-t).exp(), (-t).exp(), 0.0)).unwrap();
        assert!(ok.validate(1e-9).is_ok());
    }

    #[test]
    fn propagator_trivial_cases() {
        let g = TimeGrid::new(2.0, 21).unwrap();
        let traj = EigenvalueTrajectory::from_fn(&g, |t| PhaseCovariantChannel::amplitude_damping(1.0 - (-t).exp())).unwrap();
        let v = traj.propagator(1.4, 0.0, 1e-8).unwrap();
        assert!(v.max_abs_diff(&traj.channel_at(14)) < 1e-15);
        let v = traj.propagator(0.8, 0.8, 1e-8).unwrap();
        assert!(v.max_abs_diff(&PhaseCovariantChannel::IDENTITY) < 1e-15);
        assert!(matches!(traj.propagator(0.5, 0.8, 1e-8), Err(Error::TimeOrder { .. })));
        assert!(matches!(traj.propagator(0.55, 0.0, 1e-8), Err(Error::OffGrid(_))));
    }

    #[test]
    fn propagator_rejects_non_invertible_start() {
        let g = TimeGrid::new(2.0, 21).unwrap();
        let traj = EigenvalueTrajectory::from_fn(&g, |t| PhaseCovariantChannel::new((1.0 - t).max(0.0), 1.0, 0.0)).unwrap();
        assert!(matches!(traj.propagator(2.0, 1.0, 1e-8), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn rate_lookup_by_index() {
        let g = TimeGrid::new(1.0, 5).unwrap();
        let r = RateTrajectory::with_indices(g, vec![0, 3], vec![1.0, 2.0], vec![0.0; 2], vec![0.0; 2]).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.at_index(3).unwrap().gamma_plus, 2.0);
        assert!(r.at_index(1).is_none());
        assert_eq!(r.time(1), 0.75);
    }
}
