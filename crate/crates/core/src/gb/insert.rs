//! Single knot insertion with function-vector duplication, and repeated
//! refinement of a basis into a finer one.

use super::basis::{Delta, GBBasis};
use super::knots::KnotVector;
use crate::error::{Error, Result};

/// Result of inserting one knot: `N_j = alpha_j * refined_j + beta_{j+1} * refined_{j+1}`.
#[derive(Debug, Clone)]
pub struct KnotInsertion {
    pub refined: GBBasis,
    /// `(alpha_j, beta_{j+1})` for every original function `j`.
    pub coeffs: Vec<(f64, f64)>,
}

fn ratio(num: Delta, den: Delta) -> Result<f64> {
    match (num, den) {
        (Delta::Finite(a), Delta::Finite(b)) => Ok(a / b),
        (Delta::Step, Delta::Step) => Ok(1.0),
        _ => Err(Error::InvalidParameter("zero and non-zero spline paired in insertion recursion".into())),
    }
}

/// Inserts `value` into the knot vector of `basis`.
///
/// The interval `[s_i, s_{i+1})` containing the new knot is split and both halves
/// inherit its section core.
pub fn insert_knot(basis: &GBBasis, value: f64) -> Result<KnotInsertion> {
    let s = basis.knots().knots();
    let p = basis.order();
    let m = s.len();
    let (min, max) = (s[0], s[m - 1]);
    if !(value >= min && value < max) {
        return Err(Error::KnotOutsideDomain { value, min, max });
    }
    // 0-based span index with s[i] <= value < s[i+1]
    let i0 = (0..m - 1).rev().find(|&j| s[j] <= value && value < s[j + 1]).unwrap();
    let existing = basis.knots().multiplicity(value);
    if existing + 1 > p {
        return Err(Error::MultiplicityOverflow { value, multiplicity: existing + 1, order: p });
    }
    let r = existing as i64;

    let mut knots = s.to_vec();
    knots.insert(i0 + 1, value);
    let mut cores = basis.cores().to_vec();
    cores.insert(i0 + 1, cores[i0]);
    let refined = GBBasis::new(KnotVector::new(knots, p)?, cores)?;

    // 1-based indices from here on, matching the usual statement of the recurrences.
    let i = i0 as i64 + 1;
    let pair = basis.generator_pair(i0).expect("insertion span is non-degenerate");
    let total = m as i64;
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    // order 2: functions j = 1..=m-2, beta needed up to m-1
    let a2 = pair.v(value) / pair.v(pair.right());
    let b2 = pair.u(value) / pair.u(pair.left());
    for j in 1..=total {
        alpha.push(match j.cmp(&i) {
            std::cmp::Ordering::Less => 1.0,
            std::cmp::Ordering::Equal => a2,
            std::cmp::Ordering::Greater => 0.0,
        });
        beta.push(match j.cmp(&i) {
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Equal => b2,
            std::cmp::Ordering::Greater => 1.0,
        });
    }
    for q in 3..=p as i64 {
        let qu = q as usize;
        let mut na = vec![0.0; total as usize];
        let mut nb = vec![0.0; total as usize];
        for j in 1..=total {
            let idx = (j - 1) as usize;
            na[idx] = if j <= i - q {
                1.0
            } else if j < i - r + 1 {
                if j > total - q + 1 {
                    0.0
                } else {
                    let d = basis.delta_at(qu - 1, idx)?;
                    let db = refined.delta_at(qu - 1, idx)?;
                    ratio(d, db)? * alpha[idx]
                }
            } else {
                0.0
            };
            nb[idx] = if j <= i - q + 1 {
                0.0
            } else if j < i - r + 2 {
                if j > total - q + 1 {
                    1.0
                } else {
                    let d = basis.delta_at(qu - 1, idx)?;
                    let db = refined.delta_at(qu - 1, idx + 1)?;
                    ratio(d, db)? * beta[idx + 1]
                }
            } else {
                1.0
            };
        }
        alpha = na;
        beta = nb;
    }
    let n = basis.len();
    let coeffs = (0..n).map(|j| (alpha[j], beta[j + 1])).collect();
    Ok(KnotInsertion { refined, coeffs })
}

/// Inserts every knot in `targets` (sorted) and returns the refined basis with the
/// coefficient matrix `coeffs[j][k]` expressing original `N_j` in refined functions.
///
/// A target equal to the last knot is appended; the functions it creates get zero weight.
pub fn refine_basis(basis: &GBBasis, targets: &[f64]) -> Result<(GBBasis, Vec<Vec<f64>>)> {
    if targets.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("refinement targets must be sorted".into()));
    }
    let n = basis.len();
    let mut coeffs: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            row
        })
        .collect();
    let mut current = basis.clone();
    let last = basis.knots().last();
    let (interior, at_end): (Vec<f64>, Vec<f64>) = targets.iter().partition(|&&t| t < last);
    for &t in &interior {
        let ins = insert_knot(&current, t)?;
        for row in coeffs.iter_mut() {
            let mut next = vec![0.0; row.len() + 1];
            for (j, &c) in row.iter().enumerate() {
                if c != 0.0 {
                    next[j] += c * ins.coeffs[j].0;
                    next[j + 1] += c * ins.coeffs[j].1;
                }
            }
            *row = next;
        }
        current = ins.refined;
    }
    for &t in &at_end {
        if t > last {
            return Err(Error::KnotOutsideDomain { value: t, min: basis.knots().first(), max: last });
        }
        let p = current.order();
        let mult = current.knots().multiplicity(t) + 1;
        if mult > p {
            return Err(Error::MultiplicityOverflow { value: t, multiplicity: mult, order: p });
        }
        let mut knots = current.knots().knots().to_vec();
        knots.push(t);
        let mut cores = current.cores().to_vec();
        cores.push(*cores.last().unwrap());
        current = GBBasis::new(KnotVector::new(knots, p)?, cores)?;
        for row in coeffs.iter_mut() {
            row.push(0.0);
        }
    }
    Ok((current, coeffs))
}

/// Refines a single-function basis (`p + 1` knots) and returns its coefficients over the
/// consecutive `(p+1)`-windows of the refined knot vector.
pub fn refine_to(local: &GBBasis, targets: &[f64]) -> Result<Vec<f64>> {
    if local.len() != 1 {
        return Err(Error::InvalidParameter(format!("refine_to expects a single function, basis has {}", local.len())));
    }
    let (_, mut coeffs) = refine_basis(local, targets)?;
    Ok(coeffs.remove(0))
}
