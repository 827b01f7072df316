use super::{propagator_between, EigenvalueTrajectory, RateTrajectory};

/// Maximum number of grid indices used by the pairwise commutativity scan.
pub const COMMUTATIVITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisibilityMethod {
    RateSign,
    ChoiPropagator,
}

impl std::fmt::Display for DivisibilityMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::RateSign => "rate-sign",
            Self::ChoiPropagator => "choi-propagator",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityReport {
    pub cp_divisible: bool,
    pub first_violation_time: Option<f64>,
    /// Smallest rate seen; for [`DivisibilityMethod::ChoiPropagator`] the
    /// smallest Choi eigenvalue over all one-step propagators.
    pub min_rate: f64,
    pub method: DivisibilityMethod,
    /// Times skipped because the map was not invertible there.
    pub excluded_times: Vec<f64>,
}

/// CP-divisible iff every rate stays `>= -tol`.
pub fn is_cp_divisible(rates: &RateTrajectory, tol: f64) -> DivisibilityReport {
    let mut min_rate = f64::INFINITY;
    let mut first_violation_time = None;
    for (t, r) in rates.samples() {
        let m = r.min();
        min_rate = min_rate.min(m);
        if m < -tol && first_violation_time.is_none() {
            first_violation_time = Some(t);
        }
    }
    DivisibilityReport {
        cp_divisible: first_violation_time.is_none(),
        first_violation_time,
        min_rate,
        method: DivisibilityMethod::RateSign,
        excluded_times: Vec::new(),
    }
}

/// Checks that each one-step propagator `V(t_{i+1}, t_i)` has a Choi
/// spectrum bounded below by `-tol`. A violation is reported at `t_{i+1}`.
pub fn cp_divisibility_via_choi(traj: &EigenvalueTrajectory, tol: f64, singularity: f64) -> DivisibilityReport {
    let mut min_rate = f64::INFINITY;
    let mut first_violation_time = None;
    let mut excluded_times = Vec::new();
    for i in 0..traj.len() - 1 {
        let Some(v) = propagator_between(&traj.channel_at(i + 1), &traj.channel_at(i), singularity) else {
            excluded_times.push(traj.grid.point(i));
            continue;
        };
        let m = v.choi().min_eigenvalue();
        min_rate = min_rate.min(m);
        if !(m >= -tol) && first_violation_time.is_none() {
            first_violation_time = Some(traj.grid.point(i + 1));
        }
    }
    DivisibilityReport {
        cp_divisible: first_violation_time.is_none(),
        first_violation_time,
        min_rate,
        method: DivisibilityMethod::ChoiPropagator,
        excluded_times,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutativityReport {
    pub commutative: bool,
    pub max_defect: f64,
}

/// `Λ(t)Λ(s) = Λ(s)Λ(t)` for all pairs, tested through
/// `λ*(t)(1 - λ3(s)) = λ*(s)(1 - λ3(t))` on at most
/// [`COMMUTATIVITY_SAMPLES`] evenly strided grid indices.
pub fn is_commutative_family(traj: &EigenvalueTrajectory, tol: f64) -> CommutativityReport {
    let idx = subsample(traj.len(), COMMUTATIVITY_SAMPLES);
    let mut max_defect = 0.0_f64;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let d = traj.lambda_star[i] * (1.0 - traj.lambda3[j]) - traj.lambda_star[j] * (1.0 - traj.lambda3[i]);
            max_defect = max_defect.max(d.abs());
        }
    }
    CommutativityReport { commutative: max_defect <= tol, max_defect }
}

fn subsample(n: usize, max: usize) -> Vec<usize> {
    if n <= max {
        return (0..n).collect();
    }
    let stride = (n - 1).div_ceil(max - 1);
    let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
    if idx.last() != Some(&(n - 1)) {
        idx.push(n - 1);
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{eigenvalues_from_rates, semigroup_trajectory, DecoherenceRates, TimeGrid};
    use crate::PhaseCovariantChannel;

    #[test]
    fn subsample_bounds() {
        assert_eq!(subsample(5, 200), vec![0, 1, 2, 3, 4]);
        let idx = subsample(2001, 200);
        assert!(idx.len() <= 200);
        assert_eq!(idx[0], 0);
        assert_eq!(*idx.last().unwrap(), 2000);
    }

    #[test]
    fn constant_positive_rates_are_divisible() {
        let g = TimeGrid::new(5.0, 101).unwrap();
        let rates = RateTrajectory::constant(&g, DecoherenceRates::new(0.5, 0.1, 0.2)).unwrap();
        let r = is_cp_divisible(&rates, 1e-9);
        assert!(r.cp_divisible && r.first_violation_time.is_none());
        assert!((r.min_rate - 0.1).abs() < 1e-15);
        assert_eq!(r.method, DivisibilityMethod::RateSign);
    }

    #[test]
    fn synthetic_negative_dephasing_after_one() {
        let g = TimeGrid::new(5.0, 1001).unwrap();
        let rates =
            RateTrajectory::from_fn(&g, |t| DecoherenceRates::new(1.0, 1.0, if t > 1.0 { -1.0 } else { 0.0 })).unwrap();
        let r = is_cp_divisible(&rates, 1e-9);
        assert!(!r.cp_divisible);
        assert!((r.first_violation_time.unwrap() - 1.0).abs() <= g.step() + 1e-12);
        assert_eq!(r.min_rate, -1.0);
    }

    #[test]
    fn semigroup_divisible_by_choi() {
        let g = TimeGrid::default();
        let traj = semigroup_trajectory(&DecoherenceRates::new(1.0, 0.0, 0.0), &g).unwrap();
        let r = cp_divisibility_via_choi(&traj, 1e-9, 1e-8);
        assert!(r.cp_divisible, "{r:?}");
        assert_eq!(r.method, DivisibilityMethod::ChoiPropagator);
    }

    #[test]
    fn eternal_negative_dephasing_fails_both_ways() {
        let g = TimeGrid::new(4.0, 801).unwrap();
        let rates = RateTrajectory::constant(&g, DecoherenceRates::new(1.0, 1.0, -0.3)).unwrap();
        let traj = eigenvalues_from_rates(&rates).unwrap();
        assert!(!is_cp_divisible(&rates, 1e-9).cp_divisible);
        let r = cp_divisibility_via_choi(&traj, 1e-9, 1e-8);
        assert!(!r.cp_divisible);
        assert!(r.min_rate < -1e-5);
        assert!(r.first_violation_time.unwrap() <= 2.0 * g.step() + 1e-12);
    }

    #[test]
    fn non_invertible_steps_are_excluded() {
        let g = TimeGrid::new(2.0, 21).unwrap();
        let traj = EigenvalueTrajectory::from_fn(&g, |t| PhaseCovariantChannel::new((1.0 - t).max(0.0), 1.0, 0.0)).unwrap();
        let r = cp_divisibility_via_choi(&traj, 1e-9, 1e-8);
        assert_eq!(r.excluded_times.len(), 10);
    }

    #[test]
    fn unital_and_semigroup_families_commute() {
        let g = TimeGrid::default();
        let unital = semigroup_trajectory(&DecoherenceRates::new(0.5, 0.5, 1.0), &g).unwrap();
        assert!(is_commutative_family(&unital, 1e-12).commutative);
        let ad = semigroup_trajectory(&DecoherenceRates::new(0.9, 0.2, 0.3), &g).unwrap();
        let r = is_commutative_family(&ad, 1e-12);
        assert!(r.commutative, "{}", r.max_defect);
    }

    #[test]
    fn mixed_direction_family_does_not_commute() {
        let g = TimeGrid::new(5.0, 501).unwrap();
        // λ* and 1 - λ3 relax on different timescales
        let traj = EigenvalueTrajectory::from_fn(&g, |t| {
            PhaseCovariantChannel::new((-t).exp(), (-t).exp(), 0.5 * (1.0 - (-3.0 * t).exp()) * (-t).exp())
        })
        .unwrap();
        assert!(!is_commutative_family(&traj, 1e-6).commutative);
    }
}
