//! Exact geometry of finite-dimensional normed spaces whose unit balls are
//! centrally symmetric polytopes.
//!
//! Everything is computed over arbitrary-precision rationals: convex hulls
//! and polar duals, face lattices, norm and dual-norm evaluation, the
//! absorbing-angle predicate with dual certificates, antipodality and the
//! Steiner-antipodality scan, CL-space tests, Hanner polytope constructors,
//! and exact Steiner minimal trees at small terminal counts.

pub mod angles;
pub mod antipodality;
pub mod error;
pub mod hanner;
pub mod json;
pub mod exactgeom;
pub mod norm;
pub mod steiner;
pub mod polytope;

#[doc(hidden)]
pub mod testutil;

pub use error::{Error, Result};
pub use exactgeom::{lp_solve, LpProblem, LpSolution, Rat, Relation, Vector};
pub use norm::PolytopalNorm;
pub use polytope::{Face, Polytope};
