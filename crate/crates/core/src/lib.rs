//! CAT(0) cube complexes as median graphs.
//!
//! The crate builds dual cube complexes of finite wallspaces, exposes the
//! median algebra of a median graph (intervals, convexity, subalgebras,
//! wall structures, product decompositions), enumerates cubes and cubical
//! subdivisions, and analyses isometries of products `finite × ℤᵏ`:
//! classification, translation length, minsets, axes and the power trick
//! for commuting isometries. On top of that sits a harness that evaluates
//! translation length as a norm on abelian actions and checks the
//! discrete-norm axioms on samples.

pub mod bits;
pub mod cli;
pub mod cubes;
pub mod doc;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod harness;
pub mod isometry;
pub mod median;
pub mod wallspace;

pub use error::{Error, Result};
