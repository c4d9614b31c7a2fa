//! Exact computations with Hilbert functions, Artinian reductions and the
//! Weak Lefschetz Property for finite sets of points in projective 3-space.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: prime-field arithmetic, matrices, subspaces.
//! * [`poly`]: graded monomial bases and dense homogeneous forms.
//! * [`ideal`]: homogeneous ideals held one graded piece at a time.
//! * [`geometry`]: explicit point and line configurations.
//! * [`lefschetz`]: Artinian reductions, rank profiles, socles, criteria.
//! * [`hcalc`]: numerical h-vector predictions used as an oracle.
//! * [`lab`]: the scenario registry behind the command-line tool.

pub mod error;
pub mod field;
pub mod geometry;
pub mod hcalc;
pub mod ideal;
pub mod lab;
pub mod lefschetz;
pub mod poly;

pub use error::{Error, Result};
pub use field::{DEFAULT_PRIME, PrimeField};
pub use hcalc::HVector;
pub use ideal::GradedIdeal;
