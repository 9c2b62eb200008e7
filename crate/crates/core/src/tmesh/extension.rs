use serde::{Deserialize, Serialize};

use super::mesh::IndexTMesh;

/// T-junction type, named by the direction of the missing edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JunctionKind {
    /// "⊣": edges up, down and left.
    MissingRight,
    /// "⊢": edges up, down and right.
    MissingLeft,
    /// "⊤": edges left, right and down.
    MissingUp,
    /// "⊥": edges left, right and up.
    MissingDown,
}

impl JunctionKind {
    pub fn is_horizontal(&self) -> bool {
        matches!(self, JunctionKind::MissingLeft | JunctionKind::MissingRight)
    }
}

/// Axis-aligned closed segment in index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub horizontal: bool,
    /// `j` for horizontal segments, `i` for vertical ones.
    pub at: i32,
    pub lo: i32,
    pub hi: i32,
}

impl Segment {
    /// Closed-segment intersection.
    pub fn meets(&self, other: &Segment) -> bool {
        match (self.horizontal, other.horizontal) {
            (true, false) | (false, true) => {
                let (h, v) = if self.horizontal { (self, other) } else { (other, self) };
                h.lo <= v.at && v.at <= h.hi && v.lo <= h.at && h.at <= v.hi
            }
            _ => self.at == other.at && self.lo <= other.hi && other.lo <= self.hi,
        }
    }
}

/// Extension of a T-junction: face part plus edge part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Extension {
    pub junction: (i32, i32),
    pub kind: JunctionKind,
    pub face: Segment,
    pub edge: Segment,
}

impl Extension {
    pub fn segment(&self) -> Segment {
        Segment {
            horizontal: self.face.horizontal,
            at: self.face.at,
            lo: self.face.lo.min(self.edge.lo),
            hi: self.face.hi.max(self.edge.hi),
        }
    }
}

impl IndexTMesh {
    /// Valence-3 vertices in the active region with their type.
    pub fn t_junctions(&self) -> Vec<((i32, i32), JunctionKind)> {
        let mut out = Vec::new();
        for j in 1..=self.nu() {
            for i in 1..=self.mu() {
                if self.valence(i, j) != 3 {
                    continue;
                }
                let [l, r, d, u] = self.arms(i, j);
                let kind = if !r {
                    JunctionKind::MissingRight
                } else if !l {
                    JunctionKind::MissingLeft
                } else if !u {
                    JunctionKind::MissingUp
                } else {
                    debug_assert!(!d);
                    JunctionKind::MissingDown
                };
                out.push(((i, j), kind));
            }
        }
        out
    }

    /// Extensions of all T-junctions in the active region.
    ///
    /// Junctions whose intersection list is too short are skipped; this cannot happen
    /// on admissible meshes.
    pub fn extensions(&self) -> Vec<Extension> {
        self.t_junctions().into_iter().filter_map(|(pos, kind)| self.extension(pos, kind)).collect()
    }

    fn extension(&self, (i, j): (i32, i32), kind: JunctionKind) -> Option<Extension> {
        let (list, at, centre, order) = if kind.is_horizontal() {
            (self.h_junction_list(j), j, i, self.p())
        } else {
            (self.v_junction_list(i), i, j, self.q())
        };
        let pos = list.iter().position(|&k| k == centre)? as isize;
        // steps into the face and back along the edge
        let face_steps = (order / 2) as isize;
        let edge_steps = order.div_ceil(2) as isize - 1;
        let at_offset = |d: isize| list.get(usize::try_from(pos + d).ok()?).copied();
        let towards_positive = matches!(kind, JunctionKind::MissingRight | JunctionKind::MissingUp);
        let (face_end, edge_end) = if towards_positive {
            (at_offset(face_steps)?, at_offset(-edge_steps)?)
        } else {
            (at_offset(-face_steps)?, at_offset(edge_steps)?)
        };
        let seg = |a: i32, b: i32| Segment { horizontal: kind.is_horizontal(), at, lo: a.min(b), hi: a.max(b) };
        Some(Extension { junction: (i, j), kind, face: seg(centre, face_end), edge: seg(centre, edge_end) })
    }
}
