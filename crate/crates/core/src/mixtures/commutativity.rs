//! For η-family mixtures the family `Λ(t)` commutes at all times iff
//! `η2²(t) = a η1²(t) + 1 - a` for a constant `a`.

use super::eta::{eta_mixture_eigenvalues, EtaFamilyMixtureSpec};
use crate::dynamics::{is_commutative_family, CommutativityReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutativityFit {
    pub a: f64,
    pub max_residual: f64,
    pub commutative: bool,
}

/// Least-squares fit of `η2² - 1 = a (η1² - 1)` over the samples.
///
/// Fails with [`Error::UndeterminedConstant`] when `η1² ≡ 1`, in which case
/// the family commutes iff `η2²` is constant as well.
pub fn commutativity_fit(eta1: &[f64], eta2: &[f64], tol: f64) -> Result<CommutativityFit> {
    if eta1.len() != eta2.len() {
        return Err(Error::LengthMismatch { expected: eta1.len(), actual: eta2.len() });
    }
    let z: Vec<f64> = eta1.iter().map(|e| e * e - 1.0).collect();
    let y: Vec<f64> = eta2.iter().map(|e| e * e - 1.0).collect();
    let zz: f64 = z.iter().map(|v| v * v).sum();
    if zz <= f64::EPSILON * f64::EPSILON * z.len() as f64 {
        let eta2_constant = y.iter().all(|v| (v - y[0]).abs() <= tol);
        return Err(Error::UndeterminedConstant { eta2_constant });
    }
    let a = y.iter().zip(&z).map(|(y, z)| y * z).sum::<f64>() / zz;
    let max_residual = y.iter().zip(&z).fold(0.0_f64, |m, (y, z)| m.max((y - a * z).abs()));
    Ok(CommutativityFit { a, max_residual, commutative: max_residual <= tol })
}

/// The η-criterion and the eigenvalue criterion applied to the same mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutativityCrossCheck {
    pub fit: CommutativityFit,
    pub family: CommutativityReport,
}

impl CommutativityCrossCheck {
    pub fn consistent(&self) -> bool {
        self.fit.commutative == self.family.commutative
    }
}

/// Both criteria need `x1, x2 > 0`; with either weight zero the mixture
/// commutes regardless of the fit.
pub fn commutativity_cross_check(spec: &EtaFamilyMixtureSpec, tol: f64) -> Result<CommutativityCrossCheck> {
    let fit = commutativity_fit(spec.eta[0].samples(), spec.eta[1].samples(), tol)?;
    let family = is_commutative_family(&eta_mixture_eigenvalues(spec), tol);
    Ok(CommutativityCrossCheck { fit, family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::TimeGrid;
    use crate::mixtures::EtaFunction;

    #[test]
    fn identical_etas_give_unit_constant() {
        let g = TimeGrid::default();
        let e = EtaFunction::exponential(0.8, &g);
        let fit = commutativity_fit(e.samples(), e.samples(), 1e-12).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-15);
        assert_eq!(fit.max_residual, 0.0);
        assert!(fit.commutative);
    }

    #[test]
    fn constructed_pair_commutes() {
        let g = TimeGrid::default();
        let e1 = EtaFunction::exponential(1.0, &g);
        let e2 = EtaFunction::from_samples(g.map(|t| (0.5 * (-2.0 * t).exp() + 0.5).sqrt()));
        let fit = commutativity_fit(e1.samples(), e2.samples(), 1e-12).unwrap();
        assert!((fit.a - 0.5).abs() < 1e-14);
        assert!(fit.max_residual <= 1e-12);
        let spec = EtaFamilyMixtureSpec::new([0.4, 0.3, 0.3], g.clone(), [e1.clone(), e2, e1]).unwrap();
        let check = commutativity_cross_check(&spec, 1e-9).unwrap();
        assert!(check.consistent() && check.family.commutative);
    }

    #[test]
    fn cosine_example_does_not_commute() {
        let g = TimeGrid::default();
        let check = commutativity_cross_check(&EtaFamilyMixtureSpec::cosine_example(&g), 1e-9).unwrap();
        assert!(check.consistent());
        assert!(check.fit.max_residual > 1e-3 && check.family.max_defect > 1e-3);
    }

    #[test]
    fn constant_eta1_is_undetermined() {
        let ones = vec![1.0; 10];
        let decaying: Vec<f64> = (0..10).map(|i| 0.9_f64.powi(i)).collect();
        assert!(matches!(commutativity_fit(&ones, &ones, 1e-12), Err(Error::UndeterminedConstant { eta2_constant: true })));
        assert!(matches!(
            commutativity_fit(&ones, &decaying, 1e-12),
            Err(Error::UndeterminedConstant { eta2_constant: false })
        ));
    }
}
