use super::numerics::{cumulative_simpson, derivative};
use super::{DecoherenceRates, EigenvalueTrajectory, RateTrajectory, TimeGrid};
use crate::{Error, PhaseCovariantChannel, Result};

/// Integrates the rates into eigenvalues.
///
/// With `Γμ(t) = ∫_0^t γμ`:
/// `λ1 = exp(-½(Γ+ + Γ- + Γ3))`, `λ3 = exp(-(Γ+ + Γ-))`, and
/// `λ* = λ3(t) ∫_0^t (γ+ - γ-) exp(Γ+ + Γ-)`.
/// All integrals use cumulative Simpson, so the grid needs an odd point count.
pub fn eigenvalues_from_rates(rates: &RateTrajectory) -> Result<EigenvalueTrajectory> {
    if !rates.is_complete() {
        return Err(Error::IncompleteRates(rates.grid.len() - rates.len()));
    }
    let h = rates.grid.step();
    let population: Vec<f64> = rates.gamma_plus.iter().zip(&rates.gamma_minus).map(|(p, m)| p + m).collect();
    let big_gamma = cumulative_simpson(&population, h)?;
    let big_gamma3 = cumulative_simpson(&rates.gamma3, h)?;
    let drive: Vec<f64> = rates
        .gamma_plus
        .iter()
        .zip(&rates.gamma_minus)
        .zip(&big_gamma)
        .map(|((p, m), g)| (p - m) * g.exp())
        .collect();
    let drive_integral = cumulative_simpson(&drive, h)?;

    let lambda1 = big_gamma.iter().zip(&big_gamma3).map(|(g, g3)| (-0.5 * (g + g3)).exp()).collect();
    let lambda3: Vec<f64> = big_gamma.iter().map(|g| (-g).exp()).collect();
    let lambda_star = lambda3.iter().zip(&drive_integral).map(|(l3, i)| l3 * i).collect();
    EigenvalueTrajectory::new(rates.grid.clone(), lambda1, lambda3, lambda_star)
}

/// Rates recovered from an eigenvalue trajectory, with singular points excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReconstruction {
    pub rates: RateTrajectory,
    /// Times where `|λ1|` or `|λ3|` fell below the singularity threshold.
    pub singular_times: Vec<f64>,
    /// Grid indices left out of `rates` (singular points and their ±2 neighbours).
    pub excluded: Vec<usize>,
}

/// Inverts [`eigenvalues_from_rates`]:
/// `γ± = (λ3/2) d/dt[(1 ± λ*)/λ3]` and `γ3 = d/dt ln(λ3/λ1²)`.
///
/// The quotient rule is applied analytically, so only `λ*`, `ln|λ3|` and
/// `ln|λ1|` are differentiated numerically:
/// `γ± = ½[±λ*' - (1 ± λ*)(ln|λ3|)']`, `γ3 = (ln|λ3|)' - 2(ln|λ1|)'`.
pub fn rates_from_eigenvalues(traj: &EigenvalueTrajectory, singularity: f64) -> RateReconstruction {
    let n = traj.len();
    let h = traj.grid.step();
    let singular: Vec<bool> =
        (0..n).map(|i| traj.lambda1[i].abs() < singularity || traj.lambda3[i].abs() < singularity).collect();
    let log_abs = |v: &[f64]| -> Vec<f64> {
        v.iter().zip(&singular).map(|(x, &s)| if s { 0.0 } else { x.abs().ln() }).collect()
    };
    let dlog1 = derivative(&log_abs(&traj.lambda1), h);
    let dlog3 = derivative(&log_abs(&traj.lambda3), h);
    let dstar = derivative(&traj.lambda_star, h);

    let mut excluded_mask = vec![false; n];
    for (i, _) in singular.iter().enumerate().filter(|(_, &s)| s) {
        for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
            excluded_mask[j] = true;
        }
    }

    let (mut indices, mut gp, mut gm, mut g3) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        if excluded_mask[i] {
            continue;
        }
        let ls = traj.lambda_star[i];
        let plus = 0.5 * (dstar[i] - (1.0 + ls) * dlog3[i]);
        let minus = 0.5 * (-dstar[i] - (1.0 - ls) * dlog3[i]);
        let deph = dlog3[i] - 2.0 * dlog1[i];
        if plus.is_finite() && minus.is_finite() && deph.is_finite() {
            indices.push(i);
            gp.push(plus);
            gm.push(minus);
            g3.push(deph);
        } else {
            excluded_mask[i] = true;
        }
    }
    let singular_times = (0..n).filter(|&i| singular[i]).map(|i| traj.grid.point(i)).collect();
    let excluded = (0..n).filter(|&i| excluded_mask[i]).collect();
    let rates = RateTrajectory::with_indices(traj.grid.clone(), indices, gp, gm, g3)
        .expect("indices are increasing and values finite");
    RateReconstruction { rates, singular_times, excluded }
}

/// Channel of the semigroup `exp(t𝓛)` with constant rates.
pub fn semigroup_channel(rates: &DecoherenceRates, t: f64) -> PhaseCovariantChannel {
    let total = rates.gamma_plus + rates.gamma_minus;
    let lambda1 = (-0.5 * t * (total + rates.gamma3)).exp();
    let lambda3 = (-total * t).exp();
    let lambda_star = if total == 0.0 {
        0.0
    } else {
        (rates.gamma_plus - rates.gamma_minus) / total * -(-total * t).exp_m1()
    };
    PhaseCovariantChannel::new(lambda1, lambda3, lambda_star)
}

/// Closed-form semigroup trajectory; rates must be nonnegative.
pub fn semigroup_trajectory(rates: &DecoherenceRates, grid: &TimeGrid) -> Result<EigenvalueTrajectory> {
    if !rates.is_finite() || rates.min() < 0.0 {
        return Err(Error::InvalidRates(format!("semigroup rates must be finite and nonnegative, got {rates:?}")));
    }
    EigenvalueTrajectory::from_fn(grid, |t| semigroup_channel(rates, t))
}
