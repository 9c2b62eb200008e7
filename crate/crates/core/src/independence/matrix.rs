use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{column_lookup, ordered_anchors, BoolMatrix};
use crate::error::{Error, Result};
use crate::gb::refine_to;
use crate::tmesh::{Anchor, Axis, ParametricTMesh};

/// Default relative tolerance on singular values.
pub const RANK_TOL: f64 = 1e-8;
/// Default absolute threshold separating zero from nonzero entries.
pub const ZERO_TOL: f64 = 1e-12;

/// Which blending functions the matrix expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// The mesh's own section cores.
    Gb,
    /// Polynomial cores on every interval.
    Poly,
}

/// Coefficients expressing each T-mesh blending function in the tensor basis of the
/// underlying tensor-product mesh.
#[derive(Debug, Clone)]
pub struct RefinementMatrix {
    pub rows: Vec<Anchor>,
    pub cols: Vec<Anchor>,
    pub entries: DMatrix<f64>,
    pub flavor: Flavor,
}

impl RefinementMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    /// Entries with magnitude above `zero_tol`.
    pub fn pattern(&self, zero_tol: f64) -> BoolMatrix {
        let mut m = BoolMatrix::new(self.nrows(), self.ncols());
        for r in 0..self.nrows() {
            for c in 0..self.ncols() {
                m.set(r, c, self.entries[(r, c)].abs() > zero_tol);
            }
        }
        m
    }

    /// Numeric rank: singular values above `tol` times the largest.
    pub fn rank(&self, tol: f64) -> usize {
        numeric_rank(&self.entries, tol)
    }

    /// CSV with a header of column labels; the first column holds row labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("anchor");
        for c in &self.cols {
            out.push(',');
            out.push_str(&c.label());
        }
        out.push('\n');
        for (r, a) in self.rows.iter().enumerate() {
            out.push_str(&a.label());
            for c in 0..self.ncols() {
                write!(out, ",{}", self.entries[(r, c)]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Same matrix with rows and columns reordered.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries: DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.entries[(rows[r], cols[c])]),
            flavor: self.flavor,
        }
    }
}

pub(crate) fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol * max).count()
}

/// Full row rank with relative tolerance `tol`.
pub fn is_full_rank(matrix: &RefinementMatrix, tol: f64) -> bool {
    matrix.nrows() <= matrix.ncols() && matrix.rank(tol) == matrix.nrows()
}

/// Checks that every interval covered by a local span carries the span's core, which
/// is what lets knot insertion land in the tensor basis.
fn check_cores(axis: &Axis, local: &[i32]) -> Result<()> {
    for w in local.windows(2) {
        if axis.knot(w[0]) == axis.knot(w[1]) {
            continue;
        }
        let core = axis.core(w[0]);
        for k in w[0] + 1..w[1] {
            if axis.knot(k) < axis.knot(k + 1) && axis.core(k) != core {
                return Err(Error::IncompatibleCores(format!(
                    "interval {k} has core {:?} inside a local span with core {core:?}",
                    axis.core(k)
                )));
            }
        }
    }
    Ok(())
}

/// Univariate expansion of the function on `local` over the consecutive windows of
/// the gap-filled index vector `min..=max`.
pub(crate) fn expand(axis: &Axis, local: &[i32]) -> Result<Vec<(Vec<i32>, f64)>> {
    check_cores(axis, local)?;
    let order = local.len() - 1;
    let filled: Vec<i32> = (local[0]..=*local.last().unwrap()).collect();
    let targets: Vec<f64> = filled.iter().filter(|k| !local.contains(k)).map(|&k| axis.knot(k)).collect();
    let coeffs = refine_to(&axis.local_basis(local)?, &targets)?;
    Ok(filled.windows(order + 1).map(<[i32]>::to_vec).zip(coeffs).collect())
}

/// Builds `C` (flavor `Gb`) or `D` (flavor `Poly`), rows and columns in canonical order.
///
/// Each row is the tensor product of the two univariate insertion expansions,
/// scattered into the column whose local index vectors match the window pair.
pub fn build_refinement_matrix(pm: &ParametricTMesh, flavor: Flavor) -> Result<RefinementMatrix> {
    pm.mesh().require_admissible()?;
    let pm = match flavor {
        Flavor::Gb => pm.clone(),
        Flavor::Poly => pm.polynomial(),
    };
    let rows = ordered_anchors(&pm)?;
    let tp = pm.with_mesh(pm.mesh().underlying_tp_mesh())?;
    let cols = ordered_anchors(&tp)?;
    let lookup = column_lookup(&cols);
    let dense = rows
        .par_iter()
        .map(|(a, iv)| {
            let es = expand(pm.s(), &iv.local_s)?;
            let et = expand(pm.t(), &iv.local_t)?;
            let mut row = vec![0.0; cols.len()];
            for (ws, cs) in &es {
                for (wt, ct) in &et {
                    let v = cs * ct;
                    match lookup.get(&(ws.clone(), wt.clone())) {
                        Some(&c) => row[c] = v,
                        None if v == 0.0 => {}
                        None => {
                            return Err(Error::InsufficientIntersections(format!(
                                "refined window of anchor {} has no tensor anchor",
                                a.label()
                            )))
                        }
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let entries = DMatrix::from_fn(rows.len(), cols.len(), |r, c| dense[r][c]);
    Ok(RefinementMatrix {
        rows: rows.into_iter().map(|(a, _)| a).collect(),
        cols: cols.into_iter().map(|(a, _)| a).collect(),
        entries,
        flavor,
    })
}
