use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tmesh::{Axis, IndexTMesh, IndexVectors, ParametricTMesh};

/// Direction in which two anchors may be shifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    LeftHorizontal,
    RightHorizontal,
    DownVertical,
    UpVertical,
}

/// Weak dual-compatibility type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WdcType {
    RD,
    RU,
    LD,
    LU,
}

impl WdcType {
    pub const ALL: [WdcType; 4] = [WdcType::RD, WdcType::RU, WdcType::LD, WdcType::LU];

    pub fn shifts(&self) -> (Shift, Shift) {
        match self {
            WdcType::RD => (Shift::RightHorizontal, Shift::DownVertical),
            WdcType::RU => (Shift::RightHorizontal, Shift::UpVertical),
            WdcType::LD => (Shift::LeftHorizontal, Shift::DownVertical),
            WdcType::LU => (Shift::LeftHorizontal, Shift::UpVertical),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WdcType::RD => "RD",
            WdcType::RU => "RU",
            WdcType::LD => "LD",
            WdcType::LU => "LU",
        }
    }
}

fn end_multiplicity(axis: &Axis, idx: &[i32], end: i32) -> (f64, usize) {
    let value = axis.knot(end);
    (value, idx.iter().filter(|&&k| axis.knot(k) == value).count())
}

/// Whether two anchors (given by their index vectors) are shifted in direction `dir`.
///
/// The extremal indices must differ and, when the extremal knots coincide, their
/// multiplicities in the two local knot vectors must differ as well.
pub fn shifted(pm: &ParametricTMesh, a1: &IndexVectors, a2: &IndexVectors, dir: Shift) -> bool {
    let (axis, l1, l2) = match dir {
        Shift::LeftHorizontal | Shift::RightHorizontal => (pm.s(), &a1.local_s, &a2.local_s),
        Shift::DownVertical | Shift::UpVertical => (pm.t(), &a1.local_t, &a2.local_t),
    };
    let (e1, e2) = match dir {
        Shift::LeftHorizontal | Shift::DownVertical => (l1[0], l2[0]),
        Shift::RightHorizontal | Shift::UpVertical => (*l1.last().unwrap(), *l2.last().unwrap()),
    };
    if e1 == e2 {
        return false;
    }
    let (v1, m1) = end_multiplicity(axis, l1, e1);
    let (v2, m2) = end_multiplicity(axis, l2, e2);
    v1 != v2 || m1 != m2
}

/// Weak dual-compatibility types satisfied by the mesh.
pub fn is_weakly_dc(pm: &ParametricTMesh) -> Result<BTreeSet<WdcType>> {
    pm.mesh().require_admissible()?;
    let vectors: Vec<IndexVectors> = pm.anchors_with_vectors()?.into_iter().map(|(_, iv)| iv).collect();
    let n = vectors.len();
    let found = WdcType::ALL
        .par_iter()
        .filter(|ty| {
            let (h, v) = ty.shifts();
            (0..n).into_par_iter().all(|a| {
                (a + 1..n).all(|b| shifted(pm, &vectors[a], &vectors[b], h) || shifted(pm, &vectors[a], &vectors[b], v))
            })
        })
        .copied()
        .collect();
    Ok(found)
}

/// Literal overlap test: indices of either vector that fall inside the other's range
/// must belong to it.
pub fn overlap(l1: &[i32], l2: &[i32]) -> bool {
    let inside = |k: i32, other: &[i32]| other[0] <= k && k <= *other.last().unwrap();
    l1.iter().all(|&k| !inside(k, l2) || l2.contains(&k)) && l2.iter().all(|&k| !inside(k, l1) || l1.contains(&k))
}

/// Every pair of anchors overlaps horizontally or vertically. Requires an
/// admissible-plus mesh, where this is equivalent to analysis suitability.
pub fn is_dual_compatible(mesh: &IndexTMesh) -> Result<bool> {
    mesh.require_admissible()?;
    if !mesh.is_ad_plus() {
        return Err(Error::RequiresAdPlus);
    }
    overlap_condition(mesh)
}

/// The pairwise overlap condition on any admissible mesh, without the
/// admissible-plus precondition of [`is_dual_compatible`].
pub fn overlap_condition(mesh: &IndexTMesh) -> Result<bool> {
    mesh.require_admissible()?;
    let vectors = mesh.anchors().iter().map(|a| mesh.index_vectors(a)).collect::<Result<Vec<_>>>()?;
    let n = vectors.len();
    Ok((0..n).into_par_iter().all(|a| {
        (a + 1..n).all(|b| {
            overlap(&vectors[a].local_s, &vectors[b].local_s) || overlap(&vectors[a].local_t, &vectors[b].local_t)
        })
    }))
}

/// No horizontal extension meets a vertical one (closed segments).
pub fn is_analysis_suitable(mesh: &IndexTMesh) -> Result<bool> {
    mesh.require_admissible()?;
    let ext = mesh.extensions();
    let (h, v): (Vec<_>, Vec<_>) = ext.iter().map(|e| e.segment()).partition(|s| s.horizontal);
    Ok(!h.iter().any(|a| v.iter().any(|b| a.meets(b))))
}
