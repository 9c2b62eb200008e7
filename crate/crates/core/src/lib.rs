//! Generalized B-splines (trigonometric, hyperbolic and polynomial section spaces),
//! generalized T-splines over index T-meshes, and the refinement-matrix machinery
//! used to certify linear independence of T-mesh blending functions.
//!
//! Modules:
//! - [`gb`]: univariate GB-splines, knot insertion and refinement.
//! - [`tmesh`]: index T-meshes, admissibility, anchors, index vectors, extensions.
//! - [`classify`]: sparsity proxy, column reduction and mesh classifiers.
//! - [`independence`]: numeric refinement matrices and rank tests.
//! - [`surface`]: blending functions, curves, rational surfaces and export.

pub mod classify;
pub mod error;
pub mod gb;
pub mod independence;
pub mod surface;
pub mod tmesh;

pub use error::{Error, Result};
pub use gb::{GBBasis, KnotVector, SectionCore};
pub use tmesh::{Anchor, IndexTMesh, ParametricTMesh};
