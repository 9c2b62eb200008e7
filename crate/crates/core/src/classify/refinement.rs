use crate::error::{Error, Result};
use crate::gb::SectionCore;
use crate::tmesh::{IndexTMesh, ParametricTMesh};

/// Default bound on the number of refinement steps.
pub const MAX_REFINEMENT_STEPS: usize = 8;

/// Bi-order, active extents and core of the starting tensor mesh.
const ORDER: usize = 4;
const START: i32 = 6;
const CORE: SectionCore = SectionCore::Trigonometric { omega: 1.0 };

/// Starting mesh of the bottom-right refinement sequence: a tensor mesh with
/// uniform integer knots.
pub fn refinement_start() -> ParametricTMesh {
    let mesh = IndexTMesh::tensor(ORDER, ORDER, START, START).expect("valid tensor mesh");
    ParametricTMesh::with_index_knots(mesh, CORE, CORE).expect("valid knots")
}

/// One refinement step on the bottom-right 2x2 block of unit cells of the active
/// region. Odd steps split the block's bottom row with a new horizontal line, even
/// steps split its left column with a new vertical line. New lines run out through
/// the frame so that it stays a full grid, and each new knot bisects the split interval.
pub fn refine_step(pm: &ParametricTMesh, step: usize) -> Result<ParametricTMesh> {
    let mu = pm.mesh().mu();
    if step % 2 == 1 {
        let value = 0.5 * (pm.t().knot(1) + pm.t().knot(2));
        pm.with_inserted_row(2, value, |i| i >= mu - 2)
    } else {
        let value = 0.5 * (pm.s().knot(mu - 2) + pm.s().knot(mu - 1));
        pm.with_inserted_column(mu - 1, value, |j| j < 3)
    }
}

/// The start mesh followed by `steps` refinements.
pub fn refine_example4(steps: usize) -> Result<Vec<ParametricTMesh>> {
    refine_sequence(steps, MAX_REFINEMENT_STEPS)
}

/// As [`refine_example4`] with an explicit step bound.
pub fn refine_sequence(steps: usize, limit: usize) -> Result<Vec<ParametricTMesh>> {
    if steps > limit {
        return Err(Error::StepLimitExceeded { steps, limit });
    }
    let mut out = vec![refinement_start()];
    for step in 1..=steps {
        let next = refine_step(out.last().unwrap(), step)?;
        out.push(next);
    }
    Ok(out)
}
