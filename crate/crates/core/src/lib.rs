//! Exact minimization of bivariate integer polynomials over the lattice points of a rational
//! polyhedron in the plane.

pub mod cubic_bounded;
pub mod cubic_unbounded;
pub mod error;
pub mod exactmath;
pub mod homogeneous;
pub mod lattice2d;
pub mod oracle;
pub mod outcome;
pub mod problem;
pub mod regions;
pub mod solve;

pub use error::{Error, Result};
pub use outcome::SolveOutcome;
