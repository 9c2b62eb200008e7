use serde::{Deserialize, Serialize};

use super::anchor::{Anchor, IndexVectors};
use super::mesh::{IndexTMesh, Rect};
use crate::error::{Error, Result};
use crate::gb::{GBBasis, KnotVector, SectionCore};

/// Knots and section cores along one parametric direction, addressed by mesh index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    knots: Vec<f64>,
    cores: Vec<SectionCore>,
    offset: i32,
}

impl Axis {
    /// `knots[k]` belongs to index `offset + k`; `cores[k]` to the interval between
    /// indices `offset + k` and `offset + k + 1`.
    pub fn new(knots: Vec<f64>, cores: Vec<SectionCore>, offset: i32) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidKnots("an axis needs at least two knots".into()));
        }
        if knots.iter().any(|k| !k.is_finite()) || knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnots("knots must be finite and non-decreasing".into()));
        }
        if cores.len() != knots.len() - 1 {
            return Err(Error::CoreCountMismatch { expected: knots.len() - 1, got: cores.len() });
        }
        Ok(Self { knots, cores, offset })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn cores(&self) -> &[SectionCore] {
        &self.cores
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn knot(&self, k: i32) -> f64 {
        self.knots[(k - self.offset) as usize]
    }

    pub fn core(&self, k: i32) -> SectionCore {
        self.cores[(k - self.offset) as usize]
    }

    pub fn knots_of(&self, idx: &[i32]) -> Vec<f64> {
        idx.iter().map(|&k| self.knot(k)).collect()
    }

    /// Cores of a local vector: the core of the first global interval of each local span.
    pub fn cores_of(&self, idx: &[i32]) -> Vec<SectionCore> {
        idx[..idx.len() - 1].iter().map(|&k| self.core(k)).collect()
    }

    /// Single-function GB basis on a local index vector.
    pub fn local_basis(&self, idx: &[i32]) -> Result<GBBasis> {
        let order = idx.len() - 1;
        GBBasis::new(KnotVector::new(self.knots_of(idx), order)?, self.cores_of(idx))
    }

    /// Inserts `value` as a new index before index `at`; the split interval's core is
    /// kept on both halves.
    pub fn with_inserted(&self, at: i32, value: f64) -> Result<Self> {
        let pos = (at - self.offset) as usize;
        if pos == 0 || pos >= self.knots.len() {
            return Err(Error::InvalidParameter(format!("index {at} is not interior to the axis")));
        }
        if !(self.knots[pos - 1] <= value && value <= self.knots[pos]) {
            return Err(Error::KnotOutsideDomain { value, min: self.knots[pos - 1], max: self.knots[pos] });
        }
        let mut knots = self.knots.clone();
        knots.insert(pos, value);
        let mut cores = self.cores.clone();
        cores.insert(pos, cores[pos - 1]);
        Self::new(knots, cores, self.offset)
    }

    pub fn with_core(&self, core: SectionCore) -> Self {
        Self { knots: self.knots.clone(), cores: vec![core; self.cores.len()], offset: self.offset }
    }
}

/// Index T-mesh with knot and function vectors in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricTMesh {
    mesh: IndexTMesh,
    s: Axis,
    t: Axis,
}

impl ParametricTMesh {
    pub fn new(
        mesh: IndexTMesh,
        knots_s: Vec<f64>,
        cores_s: Vec<SectionCore>,
        knots_t: Vec<f64>,
        cores_t: Vec<SectionCore>,
    ) -> Result<Self> {
        let (ilo, ihi, jlo, jhi) = mesh.domain();
        let expect_s = (ihi - ilo + 1) as usize;
        let expect_t = (jhi - jlo + 1) as usize;
        if knots_s.len() != expect_s {
            return Err(Error::DimensionMismatch { expected: expect_s, got: knots_s.len() });
        }
        if knots_t.len() != expect_t {
            return Err(Error::DimensionMismatch { expected: expect_t, got: knots_t.len() });
        }
        for (knots, order) in [(&knots_s, mesh.p()), (&knots_t, mesh.q())] {
            let mut run = 1;
            for w in knots.windows(2) {
                run = if w[1] == w[0] { run + 1 } else { 1 };
                if run > order {
                    return Err(Error::MultiplicityTooHigh { value: w[0], multiplicity: run, order });
                }
            }
        }
        let s = Axis::new(knots_s, cores_s, ilo)?;
        let t = Axis::new(knots_t, cores_t, jlo)?;
        Ok(Self { mesh, s, t })
    }

    pub fn with_uniform_cores(
        mesh: IndexTMesh,
        knots_s: Vec<f64>,
        core_s: SectionCore,
        knots_t: Vec<f64>,
        core_t: SectionCore,
    ) -> Result<Self> {
        let (ns, nt) = (knots_s.len().saturating_sub(1), knots_t.len().saturating_sub(1));
        Self::new(mesh, knots_s, vec![core_s; ns], knots_t, vec![core_t; nt])
    }

    /// Uniform integer knots `k` at index `k`.
    pub fn with_index_knots(mesh: IndexTMesh, core_s: SectionCore, core_t: SectionCore) -> Result<Self> {
        let (ilo, ihi, jlo, jhi) = mesh.domain();
        let ks = (ilo..=ihi).map(f64::from).collect();
        let kt = (jlo..=jhi).map(f64::from).collect();
        Self::with_uniform_cores(mesh, ks, core_s, kt, core_t)
    }

    pub fn mesh(&self) -> &IndexTMesh {
        &self.mesh
    }

    pub fn s(&self) -> &Axis {
        &self.s
    }

    pub fn t(&self) -> &Axis {
        &self.t
    }

    /// Same mesh and knots with polynomial cores everywhere.
    pub fn polynomial(&self) -> Self {
        Self {
            mesh: self.mesh.clone(),
            s: self.s.with_core(SectionCore::Polynomial),
            t: self.t.with_core(SectionCore::Polynomial),
        }
    }

    /// Same knots and cores on another mesh with the same index domain.
    pub fn with_mesh(&self, mesh: IndexTMesh) -> Result<Self> {
        if mesh.domain() != self.mesh.domain() || mesh.p() != self.mesh.p() || mesh.q() != self.mesh.q() {
            return Err(Error::InvalidParameter("replacement mesh has a different index domain".into()));
        }
        Ok(Self { mesh, s: self.s.clone(), t: self.t.clone() })
    }

    /// Inserts a new index row before row `at` with knot `value`; see
    /// [`IndexTMesh::with_inserted_row`].
    pub fn with_inserted_row(&self, at: i32, value: f64, keep: impl Fn(i32) -> bool) -> Result<Self> {
        let mesh = self.mesh.with_inserted_row(at, keep)?;
        let t = self.t.with_inserted(at, value)?;
        Self::new(mesh, self.s.knots.clone(), self.s.cores.clone(), t.knots, t.cores)
    }

    /// Inserts a new index column before column `at` with knot `value`.
    pub fn with_inserted_column(&self, at: i32, value: f64, keep: impl Fn(i32) -> bool) -> Result<Self> {
        let mesh = self.mesh.with_inserted_column(at, keep)?;
        let s = self.s.with_inserted(at, value)?;
        Self::new(mesh, s.knots, s.cores, self.t.knots.clone(), self.t.cores.clone())
    }

    /// Parametric active region `[s_1, s_mu] x [t_1, t_nu]`.
    pub fn active_region(&self) -> (f64, f64, f64, f64) {
        (self.s.knot(1), self.s.knot(self.mesh.mu()), self.t.knot(1), self.t.knot(self.mesh.nu()))
    }

    /// Whole parametric domain.
    pub fn parametric_domain(&self) -> (f64, f64, f64, f64) {
        let (ilo, ihi, jlo, jhi) = self.mesh.domain();
        (self.s.knot(ilo), self.s.knot(ihi), self.t.knot(jlo), self.t.knot(jhi))
    }

    /// Univariate bases of the anchor's blending function.
    pub fn anchor_bases(&self, iv: &IndexVectors) -> Result<(GBBasis, GBBasis)> {
        Ok((self.s.local_basis(&iv.local_s)?, self.t.local_basis(&iv.local_t)?))
    }

    pub fn anchors_with_vectors(&self) -> Result<Vec<(Anchor, IndexVectors)>> {
        self.mesh.anchors().into_iter().map(|a| self.mesh.index_vectors(&a).map(|iv| (a, iv))).collect()
    }

    pub fn to_file(&self) -> MeshFile {
        MeshFile {
            p: self.mesh.p(),
            q: self.mesh.q(),
            mu: self.mesh.mu(),
            nu: self.mesh.nu(),
            cells: self.mesh.cells().iter().map(|c| [c.i1, c.i2, c.j1, c.j2]).collect(),
            knots_s: self.s.knots.clone(),
            knots_t: self.t.knots.clone(),
            cores_s: self.s.cores.clone(),
            cores_t: self.t.cores.clone(),
        }
    }

    pub fn from_file(file: MeshFile) -> Result<Self> {
        let cells = file.cells.iter().map(|c| Rect::new(c[0], c[1], c[2], c[3])).collect();
        let mesh = IndexTMesh::new(file.p, file.q, file.mu, file.nu, cells)?;
        Self::new(mesh, file.knots_s, file.cores_s, file.knots_t, file.cores_t)
    }

    /// Parses the JSON mesh format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MeshFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    /// Canonical JSON (cells sorted).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("mesh file serializes")
    }
}

/// On-disk mesh format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    pub p: usize,
    pub q: usize,
    pub mu: i32,
    pub nu: i32,
    pub cells: Vec<[i32; 4]>,
    pub knots_s: Vec<f64>,
    pub knots_t: Vec<f64>,
    pub cores_s: Vec<SectionCore>,
    pub cores_t: Vec<SectionCore>,
}
