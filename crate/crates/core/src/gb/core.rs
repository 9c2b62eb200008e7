//! Section cores and their canonical generating pairs.
//!
//! On a span `[a, b]` with `x = s - a` and `h = b - a`, every core is spanned
//! by an even function `C` and an odd function `S`:
//!
//! | core          | `C(x)`       | `S(x)`       |
//! |---------------|--------------|--------------|
//! | trigonometric | `cos(w x)`   | `sin(w x)`   |
//! | hyperbolic    | `cosh(w x)`  | `sinh(w x)`  |
//! | polynomial    | `1`          | `x`          |
//!
//! The generating pair is `V = S` together with the combination of `C` and `S`
//! that vanishes at `b`: `sin(w (h - x))`, `sinh(w (h - x))` or `h - x`.
//! Iterated antiderivatives vanishing to full order at `a` are evaluated from
//! the Taylor series `sum g_n x^(n+k) / (n+k)!`, which stays accurate for small
//! `x` where the closed trigonometric form would cancel catastrophically.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Local function space attached to one knot interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SectionCore {
    /// `span{cos(w s), sin(w s)}`; requires `w * length < pi`.
    Trigonometric { omega: f64 },
    /// `span{cosh(w s), sinh(w s)}`.
    Hyperbolic { omega: f64 },
    /// `span{1, s}`: the classical polynomial case.
    Polynomial,
}

impl SectionCore {
    pub fn check(&self, length: f64) -> Result<()> {
        match *self {
            SectionCore::Trigonometric { omega } | SectionCore::Hyperbolic { omega } => {
                if !(omega.is_finite() && omega > 0.0) {
                    return Err(Error::InvalidCore(format!("omega must be positive, got {omega}")));
                }
            }
            SectionCore::Polynomial => {}
        }
        if let SectionCore::Trigonometric { omega } = *self {
            if omega * length >= PI {
                return Err(Error::ChebyshevViolation { omega, length });
            }
        }
        Ok(())
    }

    fn omega(&self) -> f64 {
        match *self {
            SectionCore::Trigonometric { omega } | SectionCore::Hyperbolic { omega } => omega,
            SectionCore::Polynomial => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    Even,
    Odd,
}

/// `k`-fold antiderivative (k >= 0) or `-k`-th derivative (k < 0) of `C` or
/// `S`, normalised to vanish to order `k` at `x = 0`.
fn elementary(core: SectionCore, parity: Parity, x: f64, k: i32) -> f64 {
    let first = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    match core {
        SectionCore::Polynomial => {
            // g_first = 1, all other coefficients vanish.
            let e = first + k;
            if e < 0 {
                0.0
            } else {
                x.powi(e) / factorial(e as u32)
            }
        }
        SectionCore::Trigonometric { .. } | SectionCore::Hyperbolic { .. } => {
            let alternating = matches!(core, SectionCore::Trigonometric { .. });
            let w = core.omega();
            // smallest n of the right parity with n + k >= 0
            let mut n = first;
            while n + k < 0 {
                n += 2;
            }
            let e = n + k;
            let mut term = w.powi(n) * x.powi(e) / factorial(e as u32);
            let mut sum = 0.0;
            let wx2 = (w * x) * (w * x);
            for _ in 0..400 {
                let sign = if alternating && (n / 2) % 2 == 1 { -1.0 } else { 1.0 };
                sum += sign * term;
                let e = n + k;
                let next = term * wx2 / (((e + 1) * (e + 2)) as f64);
                n += 2;
                if next.abs() <= 1e-18 * sum.abs().max(f64::MIN_POSITIVE) && (e as f64 + 2.0) > (w * x).abs() {
                    break;
                }
                if next == 0.0 {
                    break;
                }
                term = next;
            }
            sum
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, v| acc * v as f64)
}

/// Canonical generating pair `(U, V)` of a core on one non-degenerate span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorPair {
    core: SectionCore,
    left: f64,
    right: f64,
    // U = uc * C + us * S
    uc: f64,
    us: f64,
}

impl GeneratorPair {
    pub fn new(core: SectionCore, left: f64, right: f64) -> Result<Self> {
        let h = right - left;
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::DegenerateSpan { left, right });
        }
        core.check(h)?;
        let (uc, us) = match core {
            SectionCore::Trigonometric { omega } => ((omega * h).sin(), -(omega * h).cos()),
            SectionCore::Hyperbolic { omega } => ((omega * h).sinh(), -(omega * h).cosh()),
            SectionCore::Polynomial => (h, -1.0),
        };
        Ok(Self { core, left, right, uc, us })
    }

    pub fn core(&self) -> SectionCore {
        self.core
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn u(&self, s: f64) -> f64 {
        self.anti_u(0, s)
    }

    pub fn v(&self, s: f64) -> f64 {
        self.anti_v(0, s)
    }

    /// `k`-fold antiderivative of `U` vanishing to order `k` at the left end.
    /// Negative `k` gives derivatives.
    pub fn anti_u(&self, k: i32, s: f64) -> f64 {
        let x = s - self.left;
        self.uc * elementary(self.core, Parity::Even, x, k) + self.us * elementary(self.core, Parity::Odd, x, k)
    }

    /// `k`-fold antiderivative of `V`; see [`GeneratorPair::anti_u`].
    pub fn anti_v(&self, k: i32, s: f64) -> f64 {
        elementary(self.core, Parity::Odd, s - self.left, k)
    }
}

/// Builds the canonical pair for `core` on `[left, right]`.
pub fn make_generator_pair(core: SectionCore, left: f64, right: f64) -> Result<GeneratorPair> {
    GeneratorPair::new(core, left, right)
}
