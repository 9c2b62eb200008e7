//! Univariate generalized B-splines over mixed section spaces.

mod basis;
mod core;
mod insert;
mod knots;

pub use self::basis::{build_basis, Delta, GBBasis, Side};
pub use self::core::{make_generator_pair, GeneratorPair, SectionCore};
pub use self::insert::{insert_knot, refine_basis, refine_to, KnotInsertion};
pub use self::knots::KnotVector;
