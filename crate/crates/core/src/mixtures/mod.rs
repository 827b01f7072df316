//! Convex combinations of phase-covariant dynamical maps.
//!
//! Mixing is linear in the eigenvalues `(λ1, λ3, λ*)`, so a mixture of
//! dynamical maps is again a phase-covariant dynamical map. Its rates,
//! however, are not the mixture of the component rates.

mod commutativity;
mod eta;
mod recovery;
mod semigroup;
pub mod spec_file;

use crate::dynamics::EigenvalueTrajectory;

pub use commutativity::{commutativity_cross_check, commutativity_fit, CommutativityCrossCheck, CommutativityFit};
pub use eta::{
    component_trajectory, equal_eta_rates, eta_mixture_eigenvalues, EtaComponent, EtaFamilyMixtureSpec, EtaForm,
    EtaFunction,
};
pub use recovery::{semigroup_recovery, EtaSolutions, RecoveryFailure, RecoveryVerdict};
pub use semigroup::{semigroup_mixture_eigenvalues, semigroup_mixture_rates, verify_prop2, SemigroupMixtureSpec};

/// `max_t |λ*(t)|`; zero exactly for unital families.
pub fn unitality_defect(traj: &EigenvalueTrajectory) -> f64 {
    traj.lambda_star.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertibilityEigenvalue {
    Lambda1,
    Lambda3,
}

impl std::fmt::Display for InvertibilityEigenvalue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Lambda1 => "lambda1",
            Self::Lambda3 => "lambda3",
        })
    }
}

/// A zero of `λ1` or `λ3`, bracketed by grid times. A sign change between
/// neighbours gives `(t_i, t_{i+1})`; a sample within tolerance of zero
/// gives the degenerate interval `(t_i, t_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCrossing {
    pub eigenvalue: InvertibilityEigenvalue,
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvertibilityReport {
    pub invertible: bool,
    pub crossings: Vec<ZeroCrossing>,
}

/// Invertible iff `λ1 > tol` and `λ3 > tol` at every grid point.
pub fn invertibility_report(traj: &EigenvalueTrajectory, tol: f64) -> InvertibilityReport {
    let invertible = traj.lambda1.iter().chain(&traj.lambda3).all(|&x| x > tol);
    let mut crossings = Vec::new();
    for (eigenvalue, values) in [
        (InvertibilityEigenvalue::Lambda1, &traj.lambda1),
        (InvertibilityEigenvalue::Lambda3, &traj.lambda3),
    ] {
        let t = traj.grid.points();
        let mut i = 0;
        while i < values.len() {
            if values[i].abs() <= tol {
                crossings.push(ZeroCrossing { eigenvalue, interval: (t[i], t[i]) });
            } else if i + 1 < values.len() && values[i + 1].abs() > tol && values[i].signum() != values[i + 1].signum() {
                crossings.push(ZeroCrossing { eigenvalue, interval: (t[i], t[i + 1]) });
            }
            i += 1;
        }
    }
    InvertibilityReport { invertible, crossings }
}
