use serde::{Deserialize, Serialize};

use super::compat::{is_analysis_suitable, is_dual_compatible, is_weakly_dc};
use super::sparsity::is_vmcr;
use crate::error::Result;
use crate::tmesh::{Extension, ParametricTMesh};

/// Classification report of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub admissible: bool,
    pub ad_plus: bool,
    pub analysis_suitable: bool,
    /// `None` when the mesh is not admissible-plus.
    pub dual_compatible: Option<bool>,
    pub weakly_dc_types: Vec<String>,
    pub vmcr: bool,
    pub anchors_count: usize,
    pub extensions: Vec<Extension>,
}

/// Runs every classifier; fails with `NotAdmissible` on non-admissible meshes.
pub fn classify(pm: &ParametricTMesh) -> Result<Report> {
    let mesh = pm.mesh();
    mesh.require_admissible()?;
    let ad_plus = mesh.is_ad_plus();
    Ok(Report {
        admissible: true,
        ad_plus,
        analysis_suitable: is_analysis_suitable(mesh)?,
        dual_compatible: if ad_plus { Some(is_dual_compatible(mesh)?) } else { None },
        weakly_dc_types: is_weakly_dc(pm)?.iter().map(|t| t.name().to_string()).collect(),
        vmcr: is_vmcr(pm)?,
        anchors_count: mesh.anchors().len(),
        extensions: mesh.extensions(),
    })
}
