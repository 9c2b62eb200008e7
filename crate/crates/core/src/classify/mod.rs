//! Sparsity proxy of the refinement matrix, column reduction, and the VMCR,
//! weakly dual-compatible, dual-compatible and analysis-suitable classifiers.

mod compat;
mod reduction;
mod refinement;
mod report;
mod sparsity;

pub use self::compat::{
    is_analysis_suitable, is_dual_compatible, is_weakly_dc, overlap, overlap_condition, shifted, Shift, WdcType,
};
pub use self::reduction::{column_reduction, reduce, BoolMatrix, Reduction};
pub use self::refinement::{refine_example4, refine_sequence, refine_step, refinement_start, MAX_REFINEMENT_STEPS};
pub use self::report::{classify, Report};
pub(crate) use self::sparsity::column_lookup;
pub use self::sparsity::{is_vmcr, ordered_anchors, sparsity_matrix, SparsityMatrix};
