use std::collections::HashMap;

use super::reduction::{column_reduction, BoolMatrix};
use crate::error::{Error, Result};
use crate::tmesh::{bar_index_vector, Anchor, IndexVectors, ParametricTMesh};

/// Zero pattern of the refinement matrix, derived from topology and knot multiplicities.
#[derive(Debug, Clone)]
pub struct SparsityMatrix {
    pub rows: Vec<Anchor>,
    pub cols: Vec<Anchor>,
    pub pattern: BoolMatrix,
}

/// Anchors of a mesh with their index vectors, in canonical order: lexicographic by
/// `(max I_l^t, max I_l^s)`, then by position.
pub fn ordered_anchors(pm: &ParametricTMesh) -> Result<Vec<(Anchor, IndexVectors)>> {
    let mut v = pm.anchors_with_vectors()?;
    v.sort_by_key(|(a, iv)| (*iv.local_t.last().unwrap(), *iv.local_s.last().unwrap(), *a));
    Ok(v)
}

/// Consecutive windows of length `len` in `bar`.
pub(crate) fn windows(bar: &[i32], len: usize) -> Vec<Vec<i32>> {
    if bar.len() < len {
        return Vec::new();
    }
    bar.windows(len).map(<[i32]>::to_vec).collect()
}

/// Columns of the underlying tensor mesh keyed by their local index vectors.
pub(crate) fn column_lookup(cols: &[(Anchor, IndexVectors)]) -> HashMap<(Vec<i32>, Vec<i32>), usize> {
    cols.iter().enumerate().map(|(k, (_, iv))| ((iv.local_s.clone(), iv.local_t.clone()), k)).collect()
}

/// Sparsity matrix: entry `(A, Â)` is set iff both local vectors of `Â` are contained
/// in the bar vectors of `A`.
pub fn sparsity_matrix(pm: &ParametricTMesh) -> Result<SparsityMatrix> {
    pm.mesh().require_admissible()?;
    let rows = ordered_anchors(pm)?;
    let tp = pm.with_mesh(pm.mesh().underlying_tp_mesh())?;
    let cols = ordered_anchors(&tp)?;
    let lookup = column_lookup(&cols);
    let (p, q) = (pm.mesh().p(), pm.mesh().q());
    let mut pattern = BoolMatrix::new(rows.len(), cols.len());
    for (r, (a, iv)) in rows.iter().enumerate() {
        let bar_s = bar_index_vector(&iv.local_s, |k| pm.s().knot(k));
        let bar_t = bar_index_vector(&iv.local_t, |k| pm.t().knot(k));
        for ws in windows(&bar_s, p + 1) {
            for wt in windows(&bar_t, q + 1) {
                let Some(&c) = lookup.get(&(ws.clone(), wt)) else {
                    return Err(Error::InsufficientIntersections(format!(
                        "refined window of anchor {} has no tensor anchor",
                        a.label()
                    )));
                };
                pattern.set(r, c, true);
            }
        }
    }
    Ok(SparsityMatrix {
        rows: rows.into_iter().map(|(a, _)| a).collect(),
        cols: cols.into_iter().map(|(a, _)| a).collect(),
        pattern,
    })
}

/// Void matrix after column reduction of the transposed sparsity pattern.
pub fn is_vmcr(pm: &ParametricTMesh) -> Result<bool> {
    let s = sparsity_matrix(pm)?;
    Ok(column_reduction(&s.pattern.transpose()).is_void())
}
