//! Exact solver for Vertex Multicut parameterized by solution size.
//!
//! The pipeline is iterative compression ([`driver::solve_vmc`]), shadow
//! removal with splitter-derandomized colorings ([`shadow`]), LP-measure
//! branching down to bipedal instances ([`bipedal`]), and an exact solver
//! for the resulting bipedal instances ([`solver`]). Every stage has a
//! brute-force counterpart in [`testkit`].
//!
//! The crate is `no_std` with `alloc`. The `std` feature enables `std`
//! error impls, and `parallel` evaluates independent branches on rayon.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bipedal;
pub mod driver;
pub mod error;
mod flow;
pub mod graph;
pub mod instance;
pub mod lp;
mod par;
pub mod separators;
pub mod set;
pub mod shadow;
pub mod solver;
pub mod testkit;

pub use error::{GraphError, InstanceError, LpError, SeparatorError, ShadowError, SolveError};
pub use graph::Graph;
pub use instance::{CompressionInstance, MulticutInstance, Pair, Transformed, Witness};
pub use set::VertexSet;
pub use solver::{SolverResult, Verdict};
