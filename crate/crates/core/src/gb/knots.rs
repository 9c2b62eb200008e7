use crate::error::{Error, Result};

/// Non-decreasing knot sequence for GB-splines of a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    knots: Vec<f64>,
    order: usize,
}

impl KnotVector {
    pub fn new(knots: Vec<f64>, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidKnots(format!("order must be >= 2, got {order}")));
        }
        if knots.len() < order + 1 {
            return Err(Error::InvalidKnots(format!(
                "order {order} needs at least {} knots, got {}",
                order + 1,
                knots.len()
            )));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidKnots("non-finite knot".into()));
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnots("knots must be non-decreasing".into()));
        }
        let kv = Self { knots, order };
        for run in kv.runs() {
            if run.1 > order {
                return Err(Error::MultiplicityTooHigh { value: kv.knots[run.0], multiplicity: run.1, order });
            }
        }
        Ok(kv)
    }

    /// `(start, length)` of each run of equal knots.
    fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.knots.len() {
            if i == self.knots.len() || self.knots[i] != self.knots[start] {
                out.push((start, i - start));
                start = i;
            }
        }
        out
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of basis functions `n`.
    pub fn num_functions(&self) -> usize {
        self.knots.len() - self.order
    }

    pub fn num_spans(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn multiplicity(&self, value: f64) -> usize {
        self.knots.iter().filter(|&&k| k == value).count()
    }

    pub fn first(&self) -> f64 {
        self.knots[0]
    }

    pub fn last(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    /// Interval `[s_p, s_{n+1}]` (1-based) on which the basis sums to one for order >= 3.
    pub fn unity_interval(&self) -> (f64, f64) {
        let p = self.order;
        let n = self.num_functions();
        (self.knots[p - 1], self.knots[n])
    }
}
