use crate::error::{Error, Result};
use crate::gb::GBBasis;
use crate::tmesh::{Anchor, ParametricTMesh};

/// Value of the blending function of `anchor` at `(s, t)`: the product of the two
/// univariate GB-splines on the anchor's local knot and function vectors.
pub fn blend(pm: &ParametricTMesh, anchor: &Anchor, s: f64, t: f64) -> Result<f64> {
    let iv = pm.mesh().index_vectors(anchor)?;
    let (bs, bt) = pm.anchor_bases(&iv)?;
    Ok(bs.evaluate(0, s)? * bt.evaluate(0, t)?)
}

/// GB-spline curve `C(s) = sum_i P_i N_i(s)`.
#[derive(Debug, Clone)]
pub struct GBCurve {
    basis: GBBasis,
    points: Vec<[f64; 3]>,
}

impl GBCurve {
    pub fn basis(&self) -> &GBBasis {
        &self.basis
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn eval(&self, s: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, p) in self.points.iter().enumerate() {
            let n = self.basis.evaluate(i, s).unwrap();
            if n != 0.0 {
                for d in 0..3 {
                    out[d] += n * p[d];
                }
            }
        }
        out
    }
}

/// Curve over `basis` with one control point per function.
pub fn eval_curve(basis: &GBBasis, points: &[[f64; 3]]) -> Result<GBCurve> {
    if points.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: points.len() });
    }
    Ok(GBCurve { basis: basis.clone(), points: points.to_vec() })
}
