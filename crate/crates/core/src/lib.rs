//! Two-mode Gaussian optics and the ladder of quantum-correlation criteria.
//!
//! States live in [`gaussian`], in shot-noise units where the vacuum
//! covariance is the identity and quadratures are ordered
//! `(X+_1, X-_1, X+_2, X-_2)`. The [`criteria`] module evaluates the four
//! operational levels of quantum correlation between two beams:
//!
//! 1. twin beams: gemellity `G < 1`,
//! 2. QND-correlated beams: a conditional variance `V < 1`,
//! 3. inseparable beams: Duan separability `S12 < 2`,
//! 4. EPR beams: conditional-variance product `V+ V- < 1`.
//!
//! Level 5 (Bell violation) is not reachable with Gaussian states and is
//! only reported as a fixed note.
//!
//! [`fock`] covers the separable photon-number mixture that nevertheless
//! passes levels 1 and 2, [`sampling`] simulates homodyne records and
//! estimates every criterion with jackknife errors, and [`scenario`] drives
//! all of it from TOML scenario files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod sampling;
pub mod scenario;

pub use criteria::{
    classify, CriteriaReport, Direction, DuanEprMoments, MomentPair, QuadratureAngles,
};
pub use error::{Error, Result};
pub use fock::{FockMixture, PhotonStatistics};
pub use gaussian::{BeamsplitterParams, GaussianTwoModeState, LossParams, Mode};
pub use sampling::{draw_samples, estimate_criteria, EstimatedCriteria, SampleBatch};
pub use scenario::{RunReport, Scenario, SweepTable};
