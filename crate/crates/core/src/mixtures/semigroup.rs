//! Convex combinations of the three elementary semigroups
//! `x1 exp(2 w1 𝓛+ t) + x2 exp(2 w2 𝓛- t) + x3 exp(2 w3 𝓛3 t)`.

use crate::channel::validate_weights;
use crate::dynamics::{is_cp_divisible, DecoherenceRates, DivisibilityReport, EigenvalueTrajectory, RateTrajectory, TimeGrid};
use crate::{Error, PhaseCovariantChannel, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupMixtureSpec {
    /// Mixing probabilities `x1, x2, x3`.
    pub weights: [f64; 3],
    /// Semigroup rates `w1, w2, w3`.
    pub rates: [f64; 3],
}

impl SemigroupMixtureSpec {
    pub fn new(weights: [f64; 3], rates: [f64; 3]) -> Result<Self> {
        validate_weights(&weights, 3)?;
        if let Some(w) = rates.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidRates(format!("semigroup rate {w} is negative or not finite")));
        }
        Ok(Self { weights, rates })
    }

    pub fn channel_at(&self, t: f64) -> PhaseCovariantChannel {
        let [x1, x2, x3] = self.weights;
        let [w1, w2, w3] = self.rates;
        let (e1, e2, e3) = ((-w1 * t).exp(), (-w2 * t).exp(), (-w3 * t).exp());
        let (d1, d2) = (-(-2.0 * w1 * t).exp_m1(), -(-2.0 * w2 * t).exp_m1());
        PhaseCovariantChannel::new(
            x1 * e1 + x2 * e2 + x3 * e3,
            x1 * (1.0 - d1) + x2 * (1.0 - d2) + x3,
            x1 * d1 - x2 * d2,
        )
    }

    /// Closed-form rates of the mixture's time-local generator.
    pub fn rates_at(&self, t: f64) -> DecoherenceRates {
        let x = self.weights;
        let w = self.rates;
        let e: [f64; 3] = std::array::from_fn(|k| (-w[k] * t).exp());
        let big_e: [f64; 3] = std::array::from_fn(|k| (-2.0 * w[k] * t).exp());
        let lambda3 = x[0] * big_e[0] + x[1] * big_e[1] + x[2];
        let lambda1 = x[0] * e[0] + x[1] * e[1] + x[2] * e[2];

        let gamma_plus = 2.0 * x[0] / lambda3
            * (w[0] * big_e[0] * (1.0 - x[1] * (1.0 - big_e[1])) + x[1] * w[1] * big_e[1] * (1.0 - big_e[0]));
        let gamma_minus = 2.0 * x[1] / lambda3
            * (x[0] * w[0] * big_e[0] * (1.0 - big_e[1]) + w[1] * big_e[1] * (1.0 - x[0] * (1.0 - big_e[0])));

        let numerator: f64 = (0..3)
            .map(|mu| {
                let pair: f64 = (0..3).map(|nu| x[nu] * big_e[nu] * (w[mu] - w[nu])).sum();
                let dephasing = x[2] * (w[mu] * (1.0 - big_e[2]) + w[2] * big_e[2]);
                x[mu] * e[mu] * (pair + dephasing)
            })
            .sum();
        // The denominator is λ1·λ3; the dephasing component enters λ3 as a bare x3.
        let gamma3 = 2.0 * numerator / (lambda1 * lambda3);
        DecoherenceRates::new(gamma_plus, gamma_minus, gamma3)
    }

    /// Both sides of the rewriting used to show the dephasing numerator is
    /// nonnegative:
    /// `Σ_{μν} xμ xν e^{-(wμ + 2wν)t}(wμ - wν)
    ///  = Σ_{α>β} xα xβ e^{-(wα + wβ)t}(wβ - wα)(e^{-wα t} - e^{-wβ t})`.
    pub fn positivity_identity(&self, t: f64) -> (f64, f64) {
        let x = self.weights;
        let w = self.rates;
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        for mu in 0..3 {
            for nu in 0..3 {
                lhs += x[mu] * x[nu] * (-(w[mu] + 2.0 * w[nu]) * t).exp() * (w[mu] - w[nu]);
                if mu > nu {
                    let (a, b) = (mu, nu);
                    rhs += x[a] * x[b] * (-(w[a] + w[b]) * t).exp() * (w[b] - w[a]) * ((-w[a] * t).exp() - (-w[b] * t).exp());
                }
            }
        }
        (lhs, rhs)
    }
}

pub fn semigroup_mixture_eigenvalues(spec: &SemigroupMixtureSpec, grid: &TimeGrid) -> EigenvalueTrajectory {
    EigenvalueTrajectory::from_fn(grid, |t| spec.channel_at(t)).expect("closed forms are finite")
}

pub fn semigroup_mixture_rates(spec: &SemigroupMixtureSpec, grid: &TimeGrid) -> Result<RateTrajectory> {
    RateTrajectory::from_fn(grid, |t| spec.rates_at(t))
}

/// Rate-sign divisibility of a semigroup mixture, plus the positivity
/// identity at every grid point. A failed identity is an internal error.
pub fn verify_prop2(spec: &SemigroupMixtureSpec, grid: &TimeGrid, tol: f64, identity_tol: f64) -> Result<DivisibilityReport> {
    for &t in grid.points() {
        let (lhs, rhs) = spec.positivity_identity(t);
        if !((lhs - rhs).abs() <= identity_tol) {
            return Err(Error::InternalConsistency(format!(
                "positivity identity fails at t = {t}: {lhs} vs {rhs} for {spec:?}"
            )));
        }
    }
    let rates = semigroup_mixture_rates(spec, grid)?;
    Ok(is_cp_divisible(&rates, tol))
}
