use nalgebra::DMatrix;
use rayon::prelude::*;

use super::matrix::{numeric_rank, Flavor};
use crate::error::Result;
use crate::gb::GBBasis;
use crate::tmesh::{Axis, ParametricTMesh};

/// Sample abscissas: `per_span` interior points on every non-degenerate interval of
/// `[lo, hi]`, with at least `min_total` points overall.
fn samples(axis: &Axis, lo: i32, hi: i32, per_span: usize, min_total: usize) -> Vec<f64> {
    let spans: Vec<(f64, f64)> = (lo..hi).map(|k| (axis.knot(k), axis.knot(k + 1))).filter(|(a, b)| b > a).collect();
    let per = per_span.max(min_total.div_ceil(spans.len().max(1)));
    spans.iter().flat_map(|&(a, b)| (0..per).map(move |m| a + (b - a) * (m as f64 + 0.5) / per as f64)).collect()
}

/// Blending-function values of `pm` at every sample pair, one row per anchor.
pub fn sample_matrix(pm: &ParametricTMesh) -> Result<DMatrix<f64>> {
    let (ilo, ihi, jlo, jhi) = pm.mesh().domain();
    let (p, q) = (pm.mesh().p(), pm.mesh().q());
    let ss = samples(pm.s(), ilo, ihi, p + 1, 4 * (p + q));
    let ts = samples(pm.t(), jlo, jhi, q + 1, 4 * (p + q));
    let anchors = pm.anchors_with_vectors()?;
    let bases = anchors.iter().map(|(_, iv)| pm.anchor_bases(iv)).collect::<Result<Vec<(GBBasis, GBBasis)>>>()?;
    let rows: Vec<Vec<f64>> = bases
        .par_iter()
        .map(|(bs, bt)| {
            let vs: Vec<f64> = ss.iter().map(|&s| bs.evaluate(0, s).unwrap()).collect();
            let vt: Vec<f64> = ts.iter().map(|&t| bt.evaluate(0, t).unwrap()).collect();
            vt.iter().flat_map(|&y| vs.iter().map(move |&x| x * y)).collect()
        })
        .collect();
    let cols = ss.len() * ts.len();
    Ok(DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]))
}

/// Independent linear-independence check: samples every blending function on a grid
/// over the whole parametric domain and compares the numeric rank of the
/// function-by-sample matrix with the anchor count.
///
/// Each non-degenerate interval gets at least `p + 1` (resp. `q + 1`) distinct points,
/// so the samples determine the restriction of every function to every cell.
pub fn gram_rank_oracle(pm: &ParametricTMesh, flavor: Flavor, tol: f64) -> Result<bool> {
    pm.mesh().require_admissible()?;
    let pm = match flavor {
        Flavor::Gb => pm.clone(),
        Flavor::Poly => pm.polynomial(),
    };
    let m = sample_matrix(&pm)?;
    Ok(numeric_rank(&m, tol) == m.nrows())
}

/// Rank verdict on an explicit function-by-sample matrix.
pub fn rows_independent(m: &DMatrix<f64>, tol: f64) -> bool {
    numeric_rank(m, tol) == m.nrows()
}
