//! Phase-covariant qubit channels and the dynamical maps built from them.
//!
//! A phase-covariant channel is fixed by three real numbers: the doubly
//! degenerate coherence eigenvalue `lambda1`, the population eigenvalue
//! `lambda3`, and the non-unitality offset `lambda_star`. Time-dependent
//! families of such channels are generated by three decoherence rates
//! (`gamma_plus`, `gamma_minus`, `gamma3`). This crate covers:
//!
//! - [`algebra`]: 2x2 Hermitian operators, Bloch coordinates, affine
//!   superoperators, and a Jacobi eigensolver for 4x4 Hermitian matrices.
//! - [`channel`]: static channels, Choi matrices, complete positivity,
//!   fixed points, composition, and convex mixing.
//! - [`dynamics`]: eigenvalue and rate trajectories on uniform grids,
//!   conversions between them, propagators, CP-divisibility, commutativity.
//! - [`mixtures`]: convex combinations of semigroups and of eta-families,
//!   invertibility, semigroup recovery, and the commutativity fit.
//! - [`scan`]: seeded randomized verification batches.

pub mod algebra;
pub mod channel;
pub mod dynamics;
mod error;
pub mod mixtures;
pub mod scan;
mod tolerance;

pub use algebra::{
    hermitian4_eigen, hermitian4_eigenvalues, AffineSuperoperator, BlochAffineVector,
    Hermitian4Eigen, Hermitian4Spectrum, HermitianOperator2, Matrix2, Matrix4,
};
pub use channel::{ChoiMatrix, CpReport, FixedPointState, PhaseCovariantChannel};
pub use dynamics::{
    DecoherenceRates, DivisibilityMethod, DivisibilityReport, EigenvalueTrajectory,
    RateReconstruction, RateTrajectory, TimeGrid,
};
pub use error::{Error, Result};
pub use tolerance::Tolerances;
