use serde::{Deserialize, Serialize};

use super::mesh::IndexTMesh;
use crate::error::{Error, Result};

/// Geometric type of an anchor, fixed by the parities of `p` and `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnchorKind {
    Vertex,
    HorizontalEdge,
    VerticalEdge,
    Cell,
}

/// Anchor of a T-mesh: a vertex, edge or cell of the active region.
///
/// A vertex has `i1 == i2` and `j1 == j2`; a horizontal edge has `j1 == j2`;
/// a vertical edge has `i1 == i2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Anchor {
    pub kind: AnchorKind,
    pub i1: i32,
    pub i2: i32,
    pub j1: i32,
    pub j2: i32,
}

impl Anchor {
    pub fn label(&self) -> String {
        match self.kind {
            AnchorKind::Vertex => format!("V({};{})", self.i1, self.j1),
            AnchorKind::HorizontalEdge => format!("H({}-{};{})", self.i1, self.i2, self.j1),
            AnchorKind::VerticalEdge => format!("E({};{}-{})", self.i1, self.j1, self.j2),
            AnchorKind::Cell => format!("C({}-{};{}-{})", self.i1, self.i2, self.j1, self.j2),
        }
    }
}

/// Global and local index vectors of an anchor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexVectors {
    pub global_s: Vec<i32>,
    pub local_s: Vec<i32>,
    pub global_t: Vec<i32>,
    pub local_t: Vec<i32>,
}

impl IndexTMesh {
    pub fn anchor_kind(&self) -> AnchorKind {
        match (self.p() % 2, self.q() % 2) {
            (0, 0) => AnchorKind::Vertex,
            (1, 0) => AnchorKind::HorizontalEdge,
            (0, 1) => AnchorKind::VerticalEdge,
            _ => AnchorKind::Cell,
        }
    }

    fn in_active(&self, i1: i32, i2: i32, j1: i32, j2: i32) -> bool {
        i1 >= 1 && i2 <= self.mu() && j1 >= 1 && j2 <= self.nu()
    }

    /// Anchors contained in the active region, in geometric order.
    pub fn anchors(&self) -> Vec<Anchor> {
        let kind = self.anchor_kind();
        let mut out: Vec<Anchor> = match kind {
            AnchorKind::Vertex => {
                self.vertices().into_iter().map(|(i, j)| Anchor { kind, i1: i, i2: i, j1: j, j2: j }).collect()
            }
            AnchorKind::HorizontalEdge => {
                self.horizontal_edges().into_iter().map(|(i1, i2, j)| Anchor { kind, i1, i2, j1: j, j2: j }).collect()
            }
            AnchorKind::VerticalEdge => {
                self.vertical_edges().into_iter().map(|(i, j1, j2)| Anchor { kind, i1: i, i2: i, j1, j2 }).collect()
            }
            AnchorKind::Cell => {
                self.cells().iter().map(|c| Anchor { kind, i1: c.i1, i2: c.i2, j1: c.j1, j2: c.j2 }).collect()
            }
        };
        out.retain(|a| self.in_active(a.i1, a.i2, a.j1, a.j2));
        out.sort_by_key(|a| (a.j1, a.j2, a.i1, a.i2));
        out
    }

    /// Indices `k` where vertical skeleton material crosses the horizontal line at
    /// height `y2 / 2`.
    pub fn horizontal_hits(&self, y2: i32) -> Vec<i32> {
        let (ilo, ihi, _, _) = self.domain();
        (ilo..=ihi)
            .filter(|&k| {
                if y2 % 2 == 0 {
                    let y = y2 / 2;
                    self.has_v(k, y - 1) || self.has_v(k, y)
                } else {
                    self.has_v(k, (y2 - 1) / 2)
                }
            })
            .collect()
    }

    /// Indices `k` where horizontal skeleton material crosses the vertical line at
    /// abscissa `x2 / 2`.
    pub fn vertical_hits(&self, x2: i32) -> Vec<i32> {
        let (_, _, jlo, jhi) = self.domain();
        (jlo..=jhi)
            .filter(|&k| {
                if x2 % 2 == 0 {
                    let x = x2 / 2;
                    self.has_h(x - 1, k) || self.has_h(x, k)
                } else {
                    self.has_h((x2 - 1) / 2, k)
                }
            })
            .collect()
    }

    /// The horizontal intersection list at integer height `j`.
    pub fn h_junction_list(&self, j: i32) -> Vec<i32> {
        self.horizontal_hits(2 * j)
    }

    /// The vertical intersection list at integer abscissa `i`.
    pub fn v_junction_list(&self, i: i32) -> Vec<i32> {
        self.vertical_hits(2 * i)
    }

    /// Global and local index vectors by tracing rays from the anchor.
    pub fn index_vectors(&self, a: &Anchor) -> Result<IndexVectors> {
        let global_s = self.horizontal_hits(a.j1 + a.j2);
        let global_t = self.vertical_hits(a.i1 + a.i2);
        let local_s = local_window(&global_s, a.i1, a.i2, self.p(), "s", a)?;
        let local_t = local_window(&global_t, a.j1, a.j2, self.q(), "t", a)?;
        Ok(IndexVectors { global_s, local_s, global_t, local_t })
    }
}

fn local_window(list: &[i32], lo: i32, hi: i32, order: usize, axis: &str, a: &Anchor) -> Result<Vec<i32>> {
    let missing = || Error::InsufficientIntersections(format!("{axis}-direction of anchor {}", a.label()));
    let side = order / 2;
    let left: Vec<i32> = list.iter().copied().filter(|&k| k < lo).collect();
    let right: Vec<i32> = list.iter().copied().filter(|&k| k > hi).collect();
    if left.len() < side || right.len() < side || !list.contains(&lo) || !list.contains(&hi) {
        return Err(missing());
    }
    let mut out: Vec<i32> = left[left.len() - side..].to_vec();
    out.push(lo);
    if hi != lo {
        out.push(hi);
    }
    out.extend_from_slice(&right[..side]);
    if out.len() != order + 1 {
        return Err(missing());
    }
    Ok(out)
}

/// Fills the integer gaps of `local` and trims each end until the end-knot multiplicity
/// matches the one in the original local knot vector.
///
/// `knot(k)` returns the knot attached to index `k`.
pub fn bar_index_vector(local: &[i32], knot: impl Fn(i32) -> f64) -> Vec<i32> {
    let (Some(&lo), Some(&hi)) = (local.first(), local.last()) else {
        return Vec::new();
    };
    let mult = |idx: &[i32], value: f64| idx.iter().filter(|&&k| knot(k) == value).count();
    let (first, last) = (knot(lo), knot(hi));
    let (m_first, m_last) = (mult(local, first), mult(local, last));
    let mut bar: Vec<i32> = (lo..=hi).collect();
    while bar.len() > 1 && mult(&bar, knot(bar[0])) > m_first && knot(bar[0]) == first {
        bar.remove(0);
    }
    while bar.len() > 1 && mult(&bar, knot(*bar.last().unwrap())) > m_last && knot(*bar.last().unwrap()) == last {
        bar.pop();
    }
    bar
}
