use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::rational::{linspace, ControlNet, GTSurface};
use crate::error::{Error, Result};
use crate::gb::SectionCore;
use crate::independence::numeric_rank;
use crate::tmesh::{IndexTMesh, ParametricTMesh};

/// Closed-form shapes that trigonometric GT-splines of bi-order (4,4) reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ReferenceShape {
    /// `(s cos wt, s sin wt, t)` on `[r1, r2] x [0, h]`.
    Helicoid { r1: f64, r2: f64, h: f64, omega: f64 },
    /// `((R + r cos ws s) cos wt t, (R + r cos ws s) sin wt t, r sin ws s + t)` on
    /// `[0, 2 pi] x [0, h]`.
    Spring { big_r: f64, r: f64, h: f64, omega_s: f64, omega_t: f64 },
}

impl ReferenceShape {
    pub fn helicoid(r1: f64, r2: f64, h: f64, omega: f64) -> Self {
        Self::Helicoid { r1, r2, h, omega }
    }

    pub fn spring(big_r: f64, r: f64, h: f64, omega_s: f64, omega_t: f64) -> Self {
        Self::Spring { big_r, r, h, omega_s, omega_t }
    }

    pub fn point(&self, s: f64, t: f64) -> [f64; 3] {
        match *self {
            Self::Helicoid { omega, .. } => [s * (omega * t).cos(), s * (omega * t).sin(), t],
            Self::Spring { big_r, r, omega_s, omega_t, .. } => {
                let rho = big_r + r * (omega_s * s).cos();
                [rho * (omega_t * t).cos(), rho * (omega_t * t).sin(), r * (omega_s * s).sin() + t]
            }
        }
    }

    /// Parameter rectangle `(s0, s1, t0, t1)`.
    pub fn domain(&self) -> (f64, f64, f64, f64) {
        match *self {
            Self::Helicoid { r1, r2, h, .. } => (r1, r2, 0.0, h),
            Self::Spring { h, .. } => (0.0, 2.0 * std::f64::consts::PI, 0.0, h),
        }
    }

    /// Frequencies in `s` and `t` of the section spaces that contain the shape.
    pub fn frequencies(&self) -> (f64, f64) {
        match *self {
            Self::Helicoid { omega, .. } => (omega, omega),
            Self::Spring { omega_s, omega_t, .. } => (omega_s, omega_t),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Helicoid { r1, r2, h, omega } => r1 < r2 && h > 0.0 && omega > 0.0,
            Self::Spring { big_r, r, h, omega_s, omega_t } => {
                big_r > 0.0 && r > 0.0 && h > 0.0 && omega_s > 0.0 && omega_t > 0.0
            }
        };
        let finite = {
            let (a, b, c, d) = self.domain();
            let (w1, w2) = self.frequencies();
            [a, b, c, d, w1, w2].iter().all(|x| x.is_finite())
        };
        if ok && finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid shape parameters {self:?}")))
        }
    }

    /// Bi-order (4,4) tensor mesh over the shape's domain with trigonometric cores of
    /// the shape's frequencies, or polynomial cores when `polynomial` is set. Spans
    /// are chosen so that `omega * length <= 1.5`.
    pub fn fit_mesh(&self, polynomial: bool) -> Result<ParametricTMesh> {
        self.validate()?;
        let (s0, s1, t0, t1) = self.domain();
        let (ws, wt) = self.frequencies();
        let cells = |len: f64, w: f64| ((w * len / 1.5).ceil() as usize).max(2);
        let core = |w: f64| {
            if polynomial {
                SectionCore::Polynomial
            } else {
                SectionCore::Trigonometric { omega: w }
            }
        };
        tensor_fit_mesh(4, 4, (s0, s1), (t0, t1), cells(s1 - s0, ws), cells(t1 - t0, wt), core(ws), core(wt))
    }
}

/// Tensor mesh on which the anchors' functions form a complete basis over
/// `s_range x t_range`, split into uniform cells; all other knots continue with the
/// same spacing.
///
/// The anchors of a tensor mesh span the full spline space only on
/// `[s_c, s_(mu - floor(p/2) + 1)]` with `c = ceil(p/2)`, strictly inside the active
/// region, so the mesh gets `mu = cells_s + p - 1`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_fit_mesh(
    p: usize,
    q: usize,
    s_range: (f64, f64),
    t_range: (f64, f64),
    cells_s: usize,
    cells_t: usize,
    core_s: SectionCore,
    core_t: SectionCore,
) -> Result<ParametricTMesh> {
    if cells_s == 0 || cells_t == 0 {
        return Err(Error::InvalidParameter("a fit mesh needs at least one cell per direction".into()));
    }
    let mesh = IndexTMesh::tensor(p, q, (cells_s + p - 1) as i32, (cells_t + q - 1) as i32)?;
    let (ilo, ihi, jlo, jhi) = mesh.domain();
    let (cs, ct) = (p.div_ceil(2) as i32, q.div_ceil(2) as i32);
    let hs = (s_range.1 - s_range.0) / cells_s as f64;
    let ht = (t_range.1 - t_range.0) / cells_t as f64;
    let ks = (ilo..=ihi).map(|k| s_range.0 + (k - cs) as f64 * hs).collect();
    let kt = (jlo..=jhi).map(|k| t_range.0 + (k - ct) as f64 * ht).collect();
    ParametricTMesh::with_uniform_cores(mesh, ks, core_s, kt, core_t)
}

/// Result of a least-squares reproduction.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub surface: GTSurface,
    /// Max coordinate error on the evaluation grid.
    pub max_error: f64,
    /// Number of least-squares samples.
    pub samples: usize,
}

fn grid_for(axis_knots: &[f64], lo: f64, hi: f64, per_span: usize) -> Vec<f64> {
    let spans = axis_knots.windows(2).filter(|w| w[0] >= lo && w[1] <= hi && w[1] > w[0]).count().max(1);
    linspace(lo, hi, spans * per_span + 1)
}

/// Fits control points (unit weights) to `shape` by least squares over the shape's
/// parameter rectangle and measures the max coordinate error on an
/// `eval_res x eval_res` grid against the closed form.
///
/// The rectangle must lie in the active region of `pm`; [`ReferenceShape::fit_mesh`]
/// builds a mesh whose basis is complete there.
pub fn reproduce_reference(shape: &ReferenceShape, pm: &ParametricTMesh, eval_res: usize) -> Result<FitReport> {
    shape.validate()?;
    pm.mesh().require_admissible()?;
    let n = pm.mesh().anchors().len();
    let probe = GTSurface::new(pm.clone(), ControlNet::constant(n, [0.0; 3]))?;
    let (s0, s1, t0, t1) = shape.domain();
    let (a0, a1, b0, b1) = probe.domain();
    if s0 < a0 || s1 > a1 || t0 < b0 || t1 > b1 {
        return Err(Error::InvalidParameter("shape domain exceeds the active region".into()));
    }
    let (p, q) = (pm.mesh().p(), pm.mesh().q());
    let ss = grid_for(pm.s().knots(), s0, s1, p + 1);
    let ts = grid_for(pm.t().knots(), t0, t1, q + 1);
    let (vs, vt) = probe.univariate_tables(&ss, &ts);
    let m = ss.len() * ts.len();
    // normal equations, accumulated over the few nonzero basis values of each sample
    let mut ata = DMatrix::<f64>::zeros(n, n);
    let mut atb = DMatrix::<f64>::zeros(n, 3);
    let mut row: Vec<(usize, f64)> = Vec::with_capacity(n);
    for (b, &t) in ts.iter().enumerate() {
        for (c, &s) in ss.iter().enumerate() {
            row.clear();
            row.extend((0..n).map(|k| (k, vs[k][c] * vt[k][b])).filter(|&(_, v)| v != 0.0));
            let den: f64 = row.iter().map(|&(_, v)| v).sum();
            if den.abs() <= f64::EPSILON {
                return Err(Error::ZeroDenominator { s, t });
            }
            let x = shape.point(s, t);
            for &(k, v) in &row {
                let rk = v / den;
                for &(l, w) in &row {
                    ata[(k, l)] += rk * w / den;
                }
                for d in 0..3 {
                    atb[(k, d)] += rk * x[d];
                }
            }
        }
    }
    let scale = ata.diagonal().max();
    let singular = |rank| Error::SingularFit { rank, unknowns: n };
    let chol = ata.clone().cholesky().ok_or_else(|| singular(numeric_rank(&ata, 1e-12)))?;
    // diag(L)^2 are the pivots of the normal matrix
    if chol.l_dirty().diagonal().iter().any(|&d| d * d <= 1e-12 * scale) {
        return Err(singular(numeric_rank(&ata, 1e-12)));
    }
    let sol = chol.solve(&atb);
    let points = (0..n).map(|k| [sol[(k, 0)], sol[(k, 1)], sol[(k, 2)]]).collect();
    let surface = GTSurface::new(pm.clone(), ControlNet::unweighted(points))?;
    let grid = surface.sample(&linspace(s0, s1, eval_res), &linspace(t0, t1, eval_res))?;
    let mut max_error: f64 = 0.0;
    for (b, &t) in grid.t.iter().enumerate() {
        for (c, &s) in grid.s.iter().enumerate() {
            let exact = shape.point(s, t);
            let got = grid.points[b * grid.s.len() + c];
            for d in 0..3 {
                max_error = max_error.max((exact[d] - got[d]).abs());
            }
        }
    }
    Ok(FitReport { surface, max_error, samples: m })
}
