//! Mixtures `x1 Λ+(t) + x2 Λ-(t) + x3 Λ3(t)` of maps parametrized by
//! functions `η_k(t)`:
//!
//! - `Λ+`: `(λ1, λ3, λ*) = (η1, η1², 1 - η1²)`
//! - `Λ-`: `(λ1, λ3, λ*) = (η2, η2², -(1 - η2²))`
//! - `Λ3`: `(λ1, λ3, λ*) = (η3, 1, 0)`
//!
//! Each component is a channel while `|η_k| <= 1`; `η_k = e^{-w_k t}` gives back
//! the elementary semigroups.

use crate::channel::validate_weights;
use crate::dynamics::numerics::derivative;
use crate::dynamics::{DecoherenceRates, EigenvalueTrajectory, RateReconstruction, RateTrajectory, TimeGrid};
use crate::{Error, PhaseCovariantChannel, Result};

/// Closed-form tag attached to a sampled η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaForm {
    /// `e^{-w t}`
    Exponential { w: f64 },
    /// `e^{-w t} cos(ω t)`
    DampedCosine { w: f64, omega: f64 },
}

impl EtaForm {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Self::Exponential { w } => (-w * t).exp(),
            Self::DampedCosine { w, omega } => (-w * t).exp() * (omega * t).cos(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Self::Exponential { w } => -w * (-w * t).exp(),
            Self::DampedCosine { w, omega } => -(-w * t).exp() * (w * (omega * t).cos() + omega * (omega * t).sin()),
        }
    }
}

/// An η function sampled on a grid, optionally tagged with its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaFunction {
    samples: Vec<f64>,
    form: Option<EtaForm>,
}

impl EtaFunction {
    pub fn from_form(form: EtaForm, grid: &TimeGrid) -> Self {
        Self { samples: grid.map(|t| form.value(t)), form: Some(form) }
    }

    pub fn exponential(w: f64, grid: &TimeGrid) -> Self {
        Self::from_form(EtaForm::Exponential { w }, grid)
    }

    pub fn damped_cosine(w: f64, omega: f64, grid: &TimeGrid) -> Self {
        Self::from_form(EtaForm::DampedCosine { w, omega }, grid)
    }

    pub fn from_samples(samples: Vec<f64>) -> Self {
        Self { samples, form: None }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn form(&self) -> Option<EtaForm> {
        self.form
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `η̇` from the closed form when tagged, otherwise by finite differences.
    pub fn derivative(&self, grid: &TimeGrid) -> Vec<f64> {
        match self.form {
            Some(form) => grid.map(|t| form.derivative(t)),
            None => derivative(&self.samples, grid.step()),
        }
    }

    /// `η(0) = 1` and `|η| <= 1` on the grid, both within `tol`.
    pub fn validate(&self, grid: &TimeGrid, tol: f64) -> Result<()> {
        if self.samples.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), actual: self.samples.len() });
        }
        if !self.samples.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("eta samples"));
        }
        if (self.samples[0] - 1.0).abs() > tol {
            return Err(Error::InvalidEta(format!("eta(0) = {}, expected 1", self.samples[0])));
        }
        if let Some(i) = self.samples.iter().position(|x| x.abs() > 1.0 + tol) {
            return Err(Error::InvalidEta(format!("|eta| = {} exceeds 1 at t = {}", self.samples[i].abs(), grid.point(i))));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaComponent {
    Plus,
    Minus,
    Dephasing,
}

impl EtaComponent {
    pub fn channel(self, eta: f64) -> PhaseCovariantChannel {
        let sq = eta * eta;
        match self {
            Self::Plus => PhaseCovariantChannel::new(eta, sq, 1.0 - sq),
            Self::Minus => PhaseCovariantChannel::new(eta, sq, -(1.0 - sq)),
            Self::Dephasing => PhaseCovariantChannel::new(eta, 1.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaFamilyMixtureSpec {
    pub weights: [f64; 3],
    pub grid: TimeGrid,
    pub eta: [EtaFunction; 3],
}

impl EtaFamilyMixtureSpec {
    pub const ETA_TOLERANCE: f64 = 1e-12;

    pub fn new(weights: [f64; 3], grid: TimeGrid, eta: [EtaFunction; 3]) -> Result<Self> {
        validate_weights(&weights, 3)?;
        for e in &eta {
            e.validate(&grid, Self::ETA_TOLERANCE)?;
        }
        Ok(Self { weights, grid, eta })
    }

    /// Weights `(⅓, ⅓, ⅓)` with `η1 = e^{-t} cos t` and `η2 = η3 = e^{-t}`:
    /// the cosine makes `Λ+` non-invertible while the mixture stays invertible.
    pub fn cosine_example(grid: &TimeGrid) -> Self {
        let third = 1.0 / 3.0;
        Self::new(
            [third, third, 1.0 - 2.0 * third],
            grid.clone(),
            [
                EtaFunction::damped_cosine(1.0, 1.0, grid),
                EtaFunction::exponential(1.0, grid),
                EtaFunction::exponential(1.0, grid),
            ],
        )
        .expect("cosine example is valid")
    }
}

pub fn eta_mixture_eigenvalues(spec: &EtaFamilyMixtureSpec) -> EigenvalueTrajectory {
    let [x1, x2, x3] = spec.weights;
    let (e1, e2, e3) = (spec.eta[0].samples(), spec.eta[1].samples(), spec.eta[2].samples());
    let n = spec.grid.len();
    let lambda1 = (0..n).map(|i| x1 * e1[i] + x2 * e2[i] + x3 * e3[i]).collect();
    let lambda3 = (0..n).map(|i| x1 * e1[i] * e1[i] + x2 * e2[i] * e2[i] + x3).collect();
    let lambda_star = (0..n).map(|i| x1 * (1.0 - e1[i] * e1[i]) - x2 * (1.0 - e2[i] * e2[i])).collect();
    EigenvalueTrajectory::new(spec.grid.clone(), lambda1, lambda3, lambda_star).expect("validated samples are finite")
}

/// Trajectory of one mixture component taken on its own.
pub fn component_trajectory(component: EtaComponent, eta: &EtaFunction, grid: &TimeGrid) -> Result<EigenvalueTrajectory> {
    if eta.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), actual: eta.len() });
    }
    let channels: Vec<_> = eta.samples().iter().map(|&e| component.channel(e)).collect();
    EigenvalueTrajectory::new(
        grid.clone(),
        channels.iter().map(|c| c.lambda1).collect(),
        channels.iter().map(|c| c.lambda3).collect(),
        channels.iter().map(|c| c.lambda_star).collect(),
    )
}

/// Rates of the mixture when all three components share one η:
/// `γ± = -2 x1,2 η̇ η / D`, `γ3 = -(η̇/η) 2 x3 / D` with `D = x3 + (1 - x3) η²`.
///
/// Points with `|η| < singularity` (and their ±2 neighbours) are excluded.
/// `eta_dot` falls back to the tagged closed form or finite differences.
pub fn equal_eta_rates(
    weights: [f64; 3],
    eta: &EtaFunction,
    eta_dot: Option<&[f64]>,
    grid: &TimeGrid,
    singularity: f64,
) -> Result<RateReconstruction> {
    validate_weights(&weights, 3)?;
    if eta.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), actual: eta.len() });
    }
    let computed;
    let eta_dot = match eta_dot {
        Some(d) if d.len() == grid.len() => d,
        Some(d) => return Err(Error::LengthMismatch { expected: grid.len(), actual: d.len() }),
        None => {
            computed = eta.derivative(grid);
            &computed
        }
    };
    let [x1, x2, x3] = weights;
    let n = grid.len();
    let e = eta.samples();
    let singular: Vec<bool> = e.iter().map(|v| v.abs() < singularity).collect();
    let mut excluded_mask = vec![false; n];
    for i in (0..n).filter(|&i| singular[i]) {
        for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
            excluded_mask[j] = true;
        }
    }
    let (mut idx, mut gp, mut gm, mut g3) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        if excluded_mask[i] {
            continue;
        }
        let d = x3 + (1.0 - x3) * e[i] * e[i];
        let r = DecoherenceRates::new(
            -2.0 * x1 * eta_dot[i] * e[i] / d,
            -2.0 * x2 * eta_dot[i] * e[i] / d,
            -(eta_dot[i] / e[i]) * 2.0 * x3 / d,
        );
        if r.is_finite() {
            idx.push(i);
            gp.push(r.gamma_plus);
            gm.push(r.gamma_minus);
            g3.push(r.gamma3);
        } else {
            excluded_mask[i] = true;
        }
    }
    Ok(RateReconstruction {
        rates: RateTrajectory::with_indices(grid.clone(), idx, gp, gm, g3)?,
        singular_times: (0..n).filter(|&i| singular[i]).map(|i| grid.point(i)).collect(),
        excluded: (0..n).filter(|&i| excluded_mask[i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::numerics::interior;
    use crate::dynamics::rates_from_eigenvalues;
    use crate::mixtures::{semigroup_mixture_eigenvalues, SemigroupMixtureSpec};
    use std::f64::consts::PI;

    #[test]
    fn closed_form_derivatives() {
        let f = EtaForm::DampedCosine { w: 0.7, omega: 1.9 };
        let h = 1e-6;
        for t in [0.0, 0.4, 2.2] {
            let fd = (f.value(t + h) - f.value(t - h)) / (2.0 * h);
            assert!((fd - f.derivative(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn exponential_etas_reproduce_semigroup_mixture() {
        let g = TimeGrid::default();
        let w = [0.4, 1.7, 2.3];
        let x = [0.2, 0.45, 0.35];
        let spec = EtaFamilyMixtureSpec::new(x, g.clone(), w.map(|wk| EtaFunction::exponential(wk, &g))).unwrap();
        let a = eta_mixture_eigenvalues(&spec);
        let b = semigroup_mixture_eigenvalues(&SemigroupMixtureSpec::new(x, w).unwrap(), &g);
        for (ca, cb) in a.channels().zip(b.channels()) {
            assert!(ca.max_abs_diff(&cb) < 1e-14);
        }
    }

    #[test]
    fn cosine_example_closed_forms() {
        let g = TimeGrid::default();
        let traj = eta_mixture_eigenvalues(&EtaFamilyMixtureSpec::cosine_example(&g));
        for (i, &t) in g.points().iter().enumerate() {
            let e = (-t).exp();
            assert!((traj.lambda1[i] - e / 3.0 * (2.0 + t.cos())).abs() < 1e-15);
            assert!((traj.lambda3[i] - (1.0 + e * e * (1.0 + t.cos().powi(2))) / 3.0).abs() < 1e-15);
            assert!((traj.lambda_star[i] - e * e / 3.0 * t.sin().powi(2)).abs() < 1e-15);
        }
    }

    #[test]
    fn cosine_example_at_quarter_period() {
        // evaluated from the closed forms: (2/3)e^{-π/2}, (1 + e^{-π})/3, e^{-π}/3
        let g = TimeGrid::new(PI / 2.0, 3).unwrap();
        let traj = eta_mixture_eigenvalues(&EtaFamilyMixtureSpec::cosine_example(&g));
        let c = traj.channel_at(2);
        assert!((c.lambda1 - 0.138_586_384_2).abs() < 1e-6);
        assert!((c.lambda3 - 0.347_737_972_8).abs() < 1e-6);
        assert!((c.lambda_star - 0.014_404_639_4).abs() < 1e-6);
    }

    #[test]
    fn invalid_etas_rejected() {
        let g = TimeGrid::new(1.0, 5).unwrap();
        let bad_start = EtaFunction::from_samples(vec![0.9, 0.8, 0.7, 0.6, 0.5]);
        assert!(matches!(bad_start.validate(&g, 1e-12), Err(Error::InvalidEta(_))));
        let too_big = EtaFunction::from_samples(vec![1.0, 1.1, 0.7, 0.6, 0.5]);
        assert!(too_big.validate(&g, 1e-12).is_err());
        let short = EtaFunction::from_samples(vec![1.0, 0.9]);
        assert!(matches!(short.validate(&g, 1e-12), Err(Error::LengthMismatch { .. })));
        let growing = EtaFunction::exponential(-0.5, &g);
        assert!(EtaFamilyMixtureSpec::new([1.0, 0.0, 0.0], g.clone(), [growing.clone(), growing.clone(), growing]).is_err());
    }

    #[test]
    fn components_are_channels() {
        for eta in [-1.0, -0.3, 0.0, 0.5, 1.0] {
            for c in [EtaComponent::Plus, EtaComponent::Minus, EtaComponent::Dephasing] {
                assert!(c.channel(eta).is_completely_positive(1e-12));
            }
        }
    }

    #[test]
    fn equal_eta_pure_dephasing() {
        let g = TimeGrid::default();
        let eta = EtaFunction::exponential(1.0, &g);
        let rec = equal_eta_rates([0.0, 0.0, 1.0], &eta, None, &g, 1e-8).unwrap();
        assert!(rec.singular_times.is_empty());
        assert!(rec.rates.samples().all(|(_, r)| r.max_abs_diff(&DecoherenceRates::new(0.0, 0.0, 2.0)) < 1e-12));
    }

    #[test]
    fn equal_eta_decreasing_gives_nonnegative_rates() {
        let g = TimeGrid::default();
        let eta = EtaFunction::from_samples(g.map(|t| 1.0 / (1.0 + t * t)));
        let rec = equal_eta_rates([0.2, 0.5, 0.3], &eta, None, &g, 1e-8).unwrap();
        assert!(rec.rates.samples().all(|(_, r)| r.min() >= -1e-12));
    }

    #[test]
    fn equal_eta_matches_finite_difference_rates() {
        let g = TimeGrid::default();
        let x = [0.25, 0.35, 0.4];
        let eta = EtaFunction::from_form(EtaForm::Exponential { w: 0.6 }, &g);
        let spec = EtaFamilyMixtureSpec::new(x, g.clone(), [eta.clone(), eta.clone(), eta.clone()]).unwrap();
        let traj = eta_mixture_eigenvalues(&spec);
        let fd = rates_from_eigenvalues(&traj, 1e-8);
        let closed = equal_eta_rates(x, &eta, None, &g, 1e-8).unwrap();
        for i in interior(g.len()) {
            let a = fd.rates.at_index(i).unwrap();
            let b = closed.rates.at_index(i).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-6, "t={}", g.point(i));
        }
    }

    #[test]
    fn equal_eta_zero_crossing_reported() {
        let g = TimeGrid::new(PI, 201).unwrap();
        // hits cos(t) = 0 exactly up to roundoff at t = π/2 (index 100)
        let eta = EtaFunction::damped_cosine(0.0, 1.0, &g);
        let rec = equal_eta_rates([0.0, 0.0, 1.0], &eta, None, &g, 1e-8).unwrap();
        assert_eq!(rec.singular_times.len(), 1);
        assert!((rec.singular_times[0] - PI / 2.0).abs() < 1e-12);
        assert_eq!(rec.excluded, vec![98, 99, 100, 101, 102]);
    }
}
