//! Can an η-family mixture `x1 Λ+ + x2 Λ- + x3 Λ3` reproduce a target
//! Markovian semigroup with rates `(γ+, γ-, γ3)`?
//!
//! Matching `λ3` and `λ*` forces, with `Γ = γ+ + γ-`,
//!
//! ```text
//! η1² = 1 - γ+ (1 - e^{-Γt}) / (x1 Γ)
//! η2² = 1 - γ- (1 - e^{-Γt}) / (x2 Γ)
//! η3  = (e^{-(Γ + γ3)t/2} - x1 η1 - x2 η2) / x3
//! ```
//!
//! Real solutions for all `t` need `x1 >= γ+/Γ` and `x2 >= γ-/Γ`, hence
//! `x3 = 0`, `x1 γ- = x2 γ+`, and then `γ3 = 0`. The verdict is computed
//! from these conditions and, independently, by evaluating the formulas on
//! the grid.

use std::fmt;

use super::eta::{eta_mixture_eigenvalues, EtaFamilyMixtureSpec, EtaFunction};
use crate::channel::validate_weights;
use crate::dynamics::{semigroup_channel, DecoherenceRates, TimeGrid};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecoveryFailure {
    /// `x1 + x2 >= 1` is required, which leaves no room for `x3 > 0`.
    WeightInequality,
    /// A component with zero weight would have to carry a nonzero rate.
    MissingComponent { plus: bool },
    /// `x1 γ- != x2 γ+`.
    RateBalance { defect: f64 },
    /// Balanced weights already fix `λ1`, leaving no room for `γ3 > 0`.
    Dephasing,
    /// A radicand for `η1²` or `η2²` turned negative.
    EtaNotReal { t: f64 },
    Eta3ExceedsOne { t: f64, eta3: f64 },
    Lambda1Mismatch { t: f64, defect: f64 },
}

impl fmt::Display for RecoveryFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::WeightInequality => f.write_str("x1+x2 ≥ 1 forces x3 = 0"),
            Self::MissingComponent { plus: true } => f.write_str("x1 = 0 requires gamma_plus = 0"),
            Self::MissingComponent { plus: false } => f.write_str("x2 = 0 requires gamma_minus = 0"),
            Self::RateBalance { defect } => write!(f, "x1*gamma_minus != x2*gamma_plus (defect {defect:.3e})"),
            Self::Dephasing => f.write_str("x3 = 0 requires gamma3 = 0"),
            Self::EtaNotReal { t } => write!(f, "eta not real at t = {t}"),
            Self::Eta3ExceedsOne { t, eta3 } => write!(f, "|eta3| = {} exceeds 1 at t = {t}", eta3.abs()),
            Self::Lambda1Mismatch { t, defect } => write!(f, "lambda1 mismatch {defect:.3e} at t = {t}"),
        }
    }
}

/// `η1, η2, η3` on the grid. Components with zero weight are unconstrained;
/// they are filled with `e^{-Γt/2}` (`η1`, `η2`) or the target `λ1` (`η3`).
#[derive(Debug, Clone, PartialEq)]
pub struct EtaSolutions {
    pub grid: TimeGrid,
    pub eta: [Vec<f64>; 3],
}

impl EtaSolutions {
    pub fn to_spec(&self, weights: [f64; 3]) -> Result<EtaFamilyMixtureSpec> {
        EtaFamilyMixtureSpec::new(weights, self.grid.clone(), self.eta.clone().map(EtaFunction::from_samples))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryVerdict {
    /// Both the analytic conditions and the grid scan succeed.
    pub feasible: bool,
    pub analytic_feasible: bool,
    pub grid_feasible: bool,
    pub failure_reason: Option<RecoveryFailure>,
    pub grid_failure: Option<RecoveryFailure>,
    /// Present when the grid scan succeeds.
    pub eta_solutions: Option<EtaSolutions>,
    /// Largest eigenvalue gap between the recovered mixture and the target.
    pub max_eigenvalue_defect: Option<f64>,
}

impl RecoveryVerdict {
    pub fn verdicts_agree(&self) -> bool {
        self.analytic_feasible == self.grid_feasible
    }
}

fn analytic_failure(x: [f64; 3], target: &DecoherenceRates, tol: &Tolerances) -> Option<RecoveryFailure> {
    let [x1, x2, x3] = x;
    if x3 > 0.0 {
        return Some(RecoveryFailure::WeightInequality);
    }
    if x1 == 0.0 && target.gamma_plus > 0.0 {
        return Some(RecoveryFailure::MissingComponent { plus: true });
    }
    if x2 == 0.0 && target.gamma_minus > 0.0 {
        return Some(RecoveryFailure::MissingComponent { plus: false });
    }
    let defect = (x1 * target.gamma_minus - x2 * target.gamma_plus).abs();
    if defect > tol.rate_balance {
        return Some(RecoveryFailure::RateBalance { defect });
    }
    if target.gamma3 > tol.rate_balance {
        return Some(RecoveryFailure::Dephasing);
    }
    None
}

/// `η_k²` written as `(1 - r) + r e^{-Γt}` with `1 - r` formed from the
/// balance `b = x1 γ- - x2 γ+`, so balanced inputs give `e^{-Γt}` without
/// cancellation. Returns the radicand and its roundoff bound.
fn radicand(weight: f64, rate: f64, gap: f64, gamma: f64, decay: f64) -> (f64, f64) {
    let r = rate / (weight * gamma);
    let value = gap / (weight * gamma) + r * decay;
    (value, 8.0 * f64::EPSILON * (1.0 + r))
}

/// Largest change of `sqrt(value)` under a perturbation of size `delta`.
fn sqrt_sensitivity(value: f64, delta: f64) -> f64 {
    let v = value.max(0.0);
    delta / ((v + delta).sqrt() + v.sqrt())
}

fn grid_scan(x: [f64; 3], target: &DecoherenceRates, grid: &TimeGrid, tol: &Tolerances) -> std::result::Result<EtaSolutions, RecoveryFailure> {
    let [x1, x2, x3] = x;
    let DecoherenceRates { gamma_plus: gp, gamma_minus: gm, gamma3: g3 } = *target;
    if x1 == 0.0 && gp > 0.0 {
        return Err(RecoveryFailure::MissingComponent { plus: true });
    }
    if x2 == 0.0 && gm > 0.0 {
        return Err(RecoveryFailure::MissingComponent { plus: false });
    }
    let gamma = gp + gm;
    let balance = x1 * gm - x2 * gp;
    let mut eta = [Vec::with_capacity(grid.len()), Vec::with_capacity(grid.len()), Vec::with_capacity(grid.len())];
    for &t in grid.points() {
        let decay = (-gamma * t).exp();
        let lambda1 = (-(gamma + g3) * t / 2.0).exp();
        let mut slack = tol.recovery_match;
        let mut solve = |weight: f64, rate: f64, gap: f64| -> std::result::Result<f64, RecoveryFailure> {
            if weight == 0.0 {
                return Ok(decay.sqrt());
            }
            let (value, delta) = radicand(weight, rate, gap, gamma, decay);
            if value < -tol.eta_bound {
                return Err(RecoveryFailure::EtaNotReal { t });
            }
            slack += weight * sqrt_sensitivity(value, delta);
            Ok(value.max(0.0).sqrt())
        };
        let e1 = solve(x1, gp, balance - x3 * gp)?;
        let e2 = solve(x2, gm, -balance - x3 * gm)?;
        let partial = x1 * e1 + x2 * e2;
        let e3 = if x3 > 0.0 {
            let e3 = (lambda1 - partial) / x3;
            if e3.abs() > 1.0 + tol.eta_bound {
                return Err(RecoveryFailure::Eta3ExceedsOne { t, eta3: e3 });
            }
            e3
        } else {
            let defect = (partial - lambda1).abs();
            if defect > slack {
                return Err(RecoveryFailure::Lambda1Mismatch { t, defect });
            }
            lambda1
        };
        eta[0].push(e1);
        eta[1].push(e2);
        eta[2].push(e3);
    }
    Ok(EtaSolutions { grid: grid.clone(), eta })
}

/// Decides whether the target semigroup is a mixture of the three η-families
/// with the given weights.
///
/// Requires nonnegative target rates with `γ+ + γ- > 0`.
pub fn semigroup_recovery(weights: [f64; 3], target: DecoherenceRates, grid: &TimeGrid, tol: &Tolerances) -> Result<RecoveryVerdict> {
    validate_weights(&weights, 3)?;
    if !target.is_finite() || target.min() < 0.0 {
        return Err(Error::InvalidRates(format!("target rates must be finite and nonnegative, got {target:?}")));
    }
    if target.gamma_plus + target.gamma_minus <= 0.0 {
        return Err(Error::InvalidRates("target needs gamma_plus + gamma_minus > 0".into()));
    }
    let failure_reason = analytic_failure(weights, &target, tol);
    let scan = grid_scan(weights, &target, grid, tol);
    let (eta_solutions, grid_failure) = match scan {
        Ok(s) => (Some(s), None),
        Err(f) => (None, Some(f)),
    };
    let max_eigenvalue_defect = match &eta_solutions {
        Some(s) => {
            let traj = eta_mixture_eigenvalues(&s.to_spec(weights)?);
            let defect = grid
                .points()
                .iter()
                .zip(traj.channels())
                .map(|(&t, c)| c.max_abs_diff(&semigroup_channel(&target, t)))
                .fold(0.0, f64::max);
            Some(defect)
        }
        None => None,
    };
    let analytic_feasible = failure_reason.is_none();
    let grid_feasible = grid_failure.is_none();
    Ok(RecoveryVerdict {
        feasible: analytic_feasible && grid_feasible,
        analytic_feasible,
        grid_feasible,
        failure_reason: failure_reason.or(grid_failure),
        grid_failure,
        eta_solutions,
        max_eigenvalue_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recover(x: [f64; 3], target: (f64, f64, f64)) -> RecoveryVerdict {
        let g = TimeGrid::default();
        semigroup_recovery(x, DecoherenceRates::new(target.0, target.1, target.2), &g, &Tolerances::default()).unwrap()
    }

    #[test]
    fn generalized_amplitude_damping_is_recovered() {
        let v = recover([0.3, 0.7, 0.0], (0.6, 1.4, 0.0));
        assert!(v.feasible && v.verdicts_agree(), "{v:?}");
        let s = v.eta_solutions.unwrap();
        for (i, &t) in s.grid.points().iter().enumerate() {
            let expected = (-t).exp();
            assert!((s.eta[0][i] - expected).abs() < 1e-12);
            assert!((s.eta[1][i] - expected).abs() < 1e-12);
        }
        assert!(v.max_eigenvalue_defect.unwrap() <= 1e-9);
    }

    #[test]
    fn positive_x3_is_infeasible() {
        let v = recover([0.4, 0.4, 0.2], (1.0, 1.0, 0.0));
        assert!(!v.feasible && v.verdicts_agree());
        assert_eq!(v.failure_reason, Some(RecoveryFailure::WeightInequality));
        assert_eq!(v.failure_reason.unwrap().to_string(), "x1+x2 ≥ 1 forces x3 = 0");
        assert!(matches!(v.grid_failure, Some(RecoveryFailure::Eta3ExceedsOne { .. })));
    }

    #[test]
    fn unbalanced_pair_is_infeasible() {
        let v = recover([0.3, 0.7, 0.0], (1.0, 1.0, 0.0));
        assert!(!v.feasible && v.verdicts_agree());
        assert!(matches!(v.failure_reason, Some(RecoveryFailure::RateBalance { .. })));
        assert!(v.grid_failure.is_some());
    }

    #[test]
    fn missing_plus_component() {
        let v = recover([0.0, 1.0, 0.0], (0.5, 1.0, 0.0));
        assert!(!v.feasible && v.verdicts_agree());
        assert_eq!(v.failure_reason.unwrap().to_string(), "x1 = 0 requires gamma_plus = 0");
        let v = recover([0.0, 1.0, 0.0], (0.0, 1.0, 0.0));
        assert!(v.feasible, "{v:?}");
    }

    #[test]
    fn balanced_with_dephasing_is_infeasible() {
        let v = recover([0.3, 0.7, 0.0], (0.6, 1.4, 0.5));
        assert!(!v.feasible && v.verdicts_agree());
        assert_eq!(v.failure_reason, Some(RecoveryFailure::Dephasing));
        assert!(matches!(v.grid_failure, Some(RecoveryFailure::Lambda1Mismatch { .. })));
    }

    #[test]
    fn invalid_inputs_rejected() {
        let g = TimeGrid::new(1.0, 11).unwrap();
        let tol = Tolerances::default();
        assert!(semigroup_recovery([0.5, 0.6, 0.0], DecoherenceRates::new(1.0, 1.0, 0.0), &g, &tol).is_err());
        assert!(semigroup_recovery([0.5, 0.5, 0.0], DecoherenceRates::new(-1.0, 1.0, 0.0), &g, &tol).is_err());
        assert!(semigroup_recovery([0.5, 0.5, 0.0], DecoherenceRates::new(0.0, 0.0, 1.0), &g, &tol).is_err());
    }
}
