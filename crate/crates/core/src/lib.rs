//! Exact interior angle vectors of simplicial polytopes.
//!
//! A cone valuation assigns a weight to every region of the central
//! hyperplane arrangement spanned by the facet normals of `P` and `-P`.
//! From it this crate computes the interior angle vector `α̂`, its
//! h-transform `γ̂`, and checks the linear relations and inequalities they
//! satisfy, by two independent routes.

pub mod angles;
pub mod anglevec;
pub mod arrangement;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod polytope;
pub mod search;
pub mod shadow;
pub mod vectors;

pub use error::{Error, Result};
