/// Numeric policy shared by every check in the crate.
///
/// The defaults are the values the verification suites are pinned to; the
/// CLI exposes the verdict tolerances (`cp`, `divisibility`, `commutativity`)
/// through `--tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity defect accepted by [`crate::HermitianOperator2::new`].
    pub hermiticity: f64,
    /// Hermiticity defect accepted by the 4x4 eigensolver.
    pub eigen_hermiticity: f64,
    /// Slack for the complete positivity conditions and Choi eigenvalues.
    pub cp: f64,
    /// `|lambda| < singularity` marks a non-invertible time.
    pub singularity: f64,
    /// `|lambda_star| <= unital` counts as unital.
    pub unital: f64,
    /// `|1 - lambda3| <= degenerate_fixed_point` has no unique fixed point.
    pub degenerate_fixed_point: f64,
    /// Allowed deviation of mixing weights from summing to one.
    pub weight_sum: f64,
    /// Slack on `|eta| <= 1` in semigroup recovery.
    pub eta_bound: f64,
    /// Agreement required between recovered and target eigenvalues.
    pub recovery_match: f64,
    /// `|x1 gamma_minus - x2 gamma_plus|` below this counts as balanced.
    pub rate_balance: f64,
    /// Pairwise commutativity defect / affine-fit residual threshold.
    pub commutativity: f64,
    /// Per-point agreement of the two sides of the rate positivity identity.
    pub identity: f64,
    /// Slack on rate signs and propagator Choi eigenvalues.
    pub divisibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-12,
            eigen_hermiticity: 1e-10,
            cp: 1e-9,
            singularity: 1e-8,
            unital: 1e-12,
            degenerate_fixed_point: 1e-12,
            weight_sum: 1e-12,
            eta_bound: 1e-10,
            recovery_match: 1e-9,
            rate_balance: 1e-12,
            commutativity: 1e-9,
            identity: 1e-10,
            divisibility: 1e-9,
        }
    }
}
