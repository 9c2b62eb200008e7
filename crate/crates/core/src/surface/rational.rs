use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gb::GBBasis;
use crate::tmesh::{Anchor, ParametricTMesh};

/// Control points and weights, one entry per anchor in the mesh's anchor order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlNet {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl ControlNet {
    pub fn new(points: Vec<[f64; 3]>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: weights.len() });
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter(format!("weights must be positive, got {w}")));
        }
        Ok(Self { points, weights })
    }

    /// Unit weights.
    pub fn unweighted(points: Vec<[f64; 3]>) -> Self {
        let n = points.len();
        Self { points, weights: vec![1.0; n] }
    }

    /// Every control point equal to `p`.
    pub fn constant(n: usize, p: [f64; 3]) -> Self {
        Self::unweighted(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Rational GT-spline surface over the parametric active region.
#[derive(Debug, Clone)]
pub struct GTSurface {
    pm: ParametricTMesh,
    anchors: Vec<Anchor>,
    bases: Vec<(GBBasis, GBBasis)>,
    net: ControlNet,
}

/// Samples of a surface on a rectilinear grid, `t`-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    /// `points[b * s.len() + a]` is the value at `(s[a], t[b])`.
    pub points: Vec<[f64; 3]>,
}

impl GTSurface {
    pub fn new(pm: ParametricTMesh, net: ControlNet) -> Result<Self> {
        let with = pm.anchors_with_vectors()?;
        if net.len() != with.len() {
            return Err(Error::DimensionMismatch { expected: with.len(), got: net.len() });
        }
        let bases = with.iter().map(|(_, iv)| pm.anchor_bases(iv)).collect::<Result<Vec<_>>>()?;
        let anchors = with.into_iter().map(|(a, _)| a).collect();
        Ok(Self { pm, anchors, bases, net })
    }

    pub fn mesh(&self) -> &ParametricTMesh {
        &self.pm
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    pub fn net(&self) -> &ControlNet {
        &self.net
    }

    /// `[s_1, s_mu] x [t_1, t_nu]`.
    pub fn domain(&self) -> (f64, f64, f64, f64) {
        self.pm.active_region()
    }

    /// Blending-function values at `(s, t)` in anchor order.
    pub fn blends(&self, s: f64, t: f64) -> Vec<f64> {
        self.bases
            .iter()
            .map(|(bs, bt)| {
                let x = bs.evaluate(0, s).unwrap();
                if x == 0.0 {
                    0.0
                } else {
                    x * bt.evaluate(0, t).unwrap()
                }
            })
            .collect()
    }

    fn combine(&self, n: impl Iterator<Item = f64>, s: f64, t: f64) -> Result<[f64; 3]> {
        let mut num = [0.0; 3];
        let mut den = 0.0;
        for ((v, p), w) in n.zip(&self.net.points).zip(&self.net.weights) {
            let c = w * v;
            den += c;
            for d in 0..3 {
                num[d] += c * p[d];
            }
        }
        if den.abs() <= f64::EPSILON {
            return Err(Error::ZeroDenominator { s, t });
        }
        Ok(num.map(|x| x / den))
    }

    pub fn eval(&self, s: f64, t: f64) -> Result<[f64; 3]> {
        self.combine(self.blends(s, t).into_iter(), s, t)
    }

    /// Evaluates on the tensor grid `s x t`, parallel over `t`.
    pub fn sample(&self, s: &[f64], t: &[f64]) -> Result<SampleGrid> {
        let (vs, vt) = self.univariate_tables(s, t);
        let rows = (0..t.len())
            .into_par_iter()
            .map(|b| {
                (0..s.len())
                    .map(|a| self.combine((0..self.bases.len()).map(|k| vs[k][a] * vt[k][b]), s[a], t[b]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleGrid { s: s.to_vec(), t: t.to_vec(), points: rows.concat() })
    }

    /// Uniform `res x res` grid over the active region.
    pub fn sample_uniform(&self, res: usize) -> Result<SampleGrid> {
        let (s0, s1, t0, t1) = self.domain();
        self.sample(&linspace(s0, s1, res), &linspace(t0, t1, res))
    }

    /// Per-anchor values of the univariate factors at the grid abscissas.
    pub(crate) fn univariate_tables(&self, s: &[f64], t: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        self.bases
            .par_iter()
            .map(|(bs, bt)| {
                (
                    s.iter().map(|&x| bs.evaluate(0, x).unwrap()).collect(),
                    t.iter().map(|&y| bt.evaluate(0, y).unwrap()).collect(),
                )
            })
            .unzip()
    }
}

/// `n` equispaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 }).collect(),
    }
}
