//! Exact and approximate solvers for the Maximum Happy Vertices and Minimum
//! Unhappy Vertices problems.
//!
//! An [`Instance`] is a vertex-weighted graph with a partial `k`-coloring. A
//! vertex is happy when every neighbor shares its color. MHV maximizes the
//! happy weight over completions of the pre-coloring; MUHV minimizes the
//! unhappy weight. The crate provides the boundary/interior set functions and
//! their Lovász extensions, the two LP relaxations with an exact rational
//! simplex, threshold rounding (sampled and derandomized), a brute-force
//! oracle, and generators for special instances and a hypergraph multiway cut
//! reduction.

pub mod checks;
pub mod error;
pub mod format;
pub mod generators;
pub mod instance;
pub mod lovasz;
pub mod lp;
pub mod rational;
pub mod relaxation;
pub mod rounding;
pub mod solvers;
pub mod subset;

pub use error::{Error, Result};
pub use instance::{validate_instance, Coloring, Instance, Objective, RawInstance};
pub use lovasz::{FractionalLabeling, SetFunction, SetFunctionHandle};
pub use rational::Rational;
pub use subset::VertexSubset;
