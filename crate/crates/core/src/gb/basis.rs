//! Closed-form GB-spline bases built by the order-raising integral recursion.

use super::core::{GeneratorPair, SectionCore};
use super::knots::KnotVector;
use crate::error::{Error, Result};

/// Reciprocal integral of a GB-spline.
///
/// An identically zero spline (all of its knots coincide) has no finite
/// integral; its normalised antiderivative is the unit step at its last knot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Delta {
    Finite(f64),
    Step,
}

impl Delta {
    pub fn value(&self) -> Option<f64> {
        match self {
            Delta::Finite(v) => Some(*v),
            Delta::Step => None,
        }
    }

    pub fn is_step(&self) -> bool {
        matches!(self, Delta::Step)
    }
}

/// One polynomial-plus-generalized piece on a span, with `x = s - left`:
/// `a * I^k[U](x) + b * I^k[V](x) + sum_j poly[j] * x^j / j!`,
/// where `k = order - 2` is implied by the level the piece lives on.
#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Piece {
    pub a: f64,
    pub b: f64,
    pub poly: Vec<f64>,
}

impl Piece {
    fn eval(&self, pair: &GeneratorPair, k: i32, s: f64, deriv: i32) -> f64 {
        let x = s - pair.left();
        let mut v = 0.0;
        if self.a != 0.0 {
            v += self.a * pair.anti_u(k - deriv, s);
        }
        if self.b != 0.0 {
            v += self.b * pair.anti_v(k - deriv, s);
        }
        for (j, c) in self.poly.iter().enumerate() {
            let e = j as i32 - deriv;
            if e >= 0 && *c != 0.0 {
                v += c * x.powi(e) / factorial(e as u32);
            }
        }
        v
    }

    /// Integral over the whole span.
    fn span_integral(&self, pair: &GeneratorPair, k: i32) -> f64 {
        let h = pair.right() - pair.left();
        let mut v = self.a * pair.anti_u(k + 1, pair.right()) + self.b * pair.anti_v(k + 1, pair.right());
        for (j, c) in self.poly.iter().enumerate() {
            v += c * h.powi(j as i32 + 1) / factorial(j as u32 + 1);
        }
        v
    }

    /// Antiderivative starting at value `start` on the left end.
    fn integrate(&self, start: f64) -> Piece {
        let mut poly = Vec::with_capacity(self.poly.len() + 1);
        poly.push(start);
        poly.extend_from_slice(&self.poly);
        Piece { a: self.a, b: self.b, poly }
    }

    fn axpy(&mut self, scale: f64, other: &Piece) {
        self.a += scale * other.a;
        self.b += scale * other.b;
        if self.poly.len() < other.poly.len() {
            self.poly.resize(other.poly.len(), 0.0);
        }
        for (dst, src) in self.poly.iter_mut().zip(&other.poly) {
            *dst += scale * src;
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, v| acc * v as f64)
}

#[derive(Debug, Clone)]
pub(crate) struct Function {
    first_span: usize,
    /// One entry per span of the support; `None` on degenerate spans and for the zero spline.
    pieces: Vec<Option<Piece>>,
    delta: Delta,
}

impl Function {
    fn piece(&self, span: usize) -> Option<&Piece> {
        span.checked_sub(self.first_span).and_then(|k| self.pieces.get(k)).and_then(|p| p.as_ref())
    }
}

/// Which one-sided limit to take at a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A complete family of order-`p` GB-splines over a knot vector.
///
/// Immutable once built; evaluation is `&self` only and safe to share across threads.
#[derive(Debug, Clone)]
pub struct GBBasis {
    knots: KnotVector,
    cores: Vec<SectionCore>,
    pairs: Vec<Option<GeneratorPair>>,
    /// `levels[q - 2]` holds the order-`q` functions.
    levels: Vec<Vec<Function>>,
}

impl GBBasis {
    /// Builds all `n` GB-splines of order `knots.order()`; `cores` has one entry per
    /// knot interval (`n + p - 1` of them). Cores on zero-length intervals are ignored.
    pub fn new(knots: KnotVector, cores: Vec<SectionCore>) -> Result<Self> {
        let spans = knots.num_spans();
        if cores.len() != spans {
            return Err(Error::CoreCountMismatch { expected: spans, got: cores.len() });
        }
        let s = knots.knots();
        let pairs = (0..spans)
            .map(|j| if s[j + 1] > s[j] { GeneratorPair::new(cores[j], s[j], s[j + 1]).map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;

        let p = knots.order();
        let m = s.len();
        let mut levels: Vec<Vec<Function>> = Vec::with_capacity(p - 1);

        let base = (0..m - 2)
            .map(|i| {
                if s[i] == s[i + 2] {
                    return zero_function(i, 2);
                }
                let pieces = vec![
                    pairs[i].map(|g| Piece { a: 0.0, b: 1.0 / g.v(g.right()), poly: vec![] }),
                    pairs[i + 1].map(|g| Piece { a: 1.0 / g.u(g.left()), b: 0.0, poly: vec![] }),
                ];
                finish(i, pieces, &pairs, 0)
            })
            .collect();
        levels.push(base);

        for q in 3..=p {
            let lower = &levels[q - 3];
            let k_lower = (q - 3) as i32;
            let funcs = (0..m - q)
                .map(|i| {
                    if s[i] == s[i + q] {
                        return zero_function(i, q);
                    }
                    let left = &lower[i];
                    let right = &lower[i + 1];
                    let dl = left.delta.value().unwrap_or(0.0);
                    let dr = right.delta.value().unwrap_or(0.0);
                    // a zero spline on the left contributes a unit step at s_i = s_{i+q-1},
                    // i.e. before the first non-degenerate span of the support
                    let mut acc = if left.delta.is_step() { 1.0 } else { 0.0 };
                    let mut pieces = Vec::with_capacity(q);
                    for (j, pair) in pairs.iter().enumerate().skip(i).take(q) {
                        let Some(pair) = pair.as_ref() else {
                            pieces.push(None);
                            continue;
                        };
                        let mut g = Piece::default();
                        if let Some(pc) = left.piece(j) {
                            g.axpy(dl, pc);
                        }
                        if let Some(pc) = right.piece(j) {
                            g.axpy(-dr, pc);
                        }
                        let integrated = g.integrate(acc);
                        acc += g.span_integral(pair, k_lower);
                        pieces.push(Some(integrated));
                    }
                    finish(i, pieces, &pairs, q as i32 - 2)
                })
                .collect();
            levels.push(funcs);
        }

        Ok(Self { knots, cores, pairs, levels })
    }

    /// Basis with the same core on every interval.
    pub fn with_uniform_core(knots: KnotVector, core: SectionCore) -> Result<Self> {
        let n = knots.num_spans();
        Self::new(knots, vec![core; n])
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn cores(&self) -> &[SectionCore] {
        &self.cores
    }

    pub fn order(&self) -> usize {
        self.knots.order()
    }

    pub fn len(&self) -> usize {
        self.knots.num_functions()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generator_pair(&self, span: usize) -> Option<&GeneratorPair> {
        self.pairs.get(span).and_then(|p| p.as_ref())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            Err(Error::IndexOutOfRange { index: i, len: self.len() })
        } else {
            Ok(())
        }
    }

    /// `delta` of function `i` at the basis order.
    pub fn delta(&self, i: usize) -> Result<Delta> {
        self.delta_at(self.order(), i)
    }

    /// `delta` of the order-`order` function `i` built on the same knots (2 <= order <= p).
    pub fn delta_at(&self, order: usize, i: usize) -> Result<Delta> {
        if order < 2 || order > self.order() {
            return Err(Error::InvalidParameter(format!("order {order} not in 2..={}", self.order())));
        }
        let level = &self.levels[order - 2];
        level.get(i).map(|f| f.delta).ok_or(Error::IndexOutOfRange { index: i, len: level.len() })
    }

    /// Value of `N_i` at `s`; right-continuous except at the last knot.
    pub fn evaluate(&self, i: usize, s: f64) -> Result<f64> {
        self.derivative(i, s, 0)
    }

    /// `d`-th derivative of `N_i` with the same continuity convention as [`GBBasis::evaluate`].
    pub fn derivative(&self, i: usize, s: f64, d: u32) -> Result<f64> {
        let side = if s >= self.knots.last() { Side::Left } else { Side::Right };
        self.derivative_on_side(i, s, d, side)
    }

    /// One-sided limit of the `d`-th derivative of `N_i` at `s`.
    pub fn derivative_on_side(&self, i: usize, s: f64, d: u32, side: Side) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.eval_level(self.order(), i, s, d as i32, side))
    }

    /// All basis values at `s`.
    pub fn evaluate_all(&self, s: f64) -> Vec<f64> {
        (0..self.len()).map(|i| self.evaluate(i, s).unwrap()).collect()
    }

    fn eval_level(&self, order: usize, i: usize, s: f64, d: i32, side: Side) -> f64 {
        let Some(span) = self.locate(s, side) else {
            return 0.0;
        };
        let f = &self.levels[order - 2][i];
        match (f.piece(span), self.pairs[span].as_ref()) {
            (Some(pc), Some(pair)) => pc.eval(pair, order as i32 - 2, s, d),
            _ => 0.0,
        }
    }

    /// Non-degenerate span containing `s` from the requested side.
    fn locate(&self, s: f64, side: Side) -> Option<usize> {
        let k = self.knots.knots();
        let spans = k.len() - 1;
        match side {
            Side::Right => (0..spans).rev().find(|&j| k[j] <= s && s < k[j + 1]),
            Side::Left => (0..spans).find(|&j| k[j] < s && s <= k[j + 1]),
        }
    }
}

fn zero_function(i: usize, order: usize) -> Function {
    Function { first_span: i, pieces: vec![None; order], delta: Delta::Step }
}

fn finish(i: usize, pieces: Vec<Option<Piece>>, pairs: &[Option<GeneratorPair>], k: i32) -> Function {
    let area: f64 = pieces
        .iter()
        .enumerate()
        .filter_map(|(o, pc)| pc.as_ref().map(|pc| pc.span_integral(pairs[i + o].as_ref().unwrap(), k)))
        .sum();
    let delta = if area > 0.0 { Delta::Finite(1.0 / area) } else { Delta::Step };
    Function { first_span: i, pieces, delta }
}

/// Builds a basis from raw knots and cores.
pub fn build_basis(knots: &[f64], cores: &[SectionCore], order: usize) -> Result<GBBasis> {
    GBBasis::new(KnotVector::new(knots.to_vec(), order)?, cores.to_vec())
}
