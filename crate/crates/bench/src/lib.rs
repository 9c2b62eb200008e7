//! Inputs shared by the benchmarks.

use gtspline::classify::refine_example4;
use gtspline::{GBBasis, KnotVector, ParametricTMesh, SectionCore};

/// Order-`p` basis on `n + p` uniform knots with a trigonometric core.
pub fn uniform_basis(p: usize, n: usize) -> GBBasis {
    let knots = (0..n + p).map(|k| k as f64 * 0.25).collect();
    GBBasis::with_uniform_core(KnotVector::new(knots, p).unwrap(), SectionCore::Trigonometric { omega: 2.0 }).unwrap()
}

/// Mesh after `steps` bottom-right refinements.
pub fn refined_mesh(steps: usize) -> ParametricTMesh {
    refine_example4(steps).unwrap().pop().unwrap()
}
