use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer rectangle `[i1, i2] x [j1, j2]` in index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub i1: i32,
    pub i2: i32,
    pub j1: i32,
    pub j2: i32,
}

impl Rect {
    pub fn new(i1: i32, i2: i32, j1: i32, j2: i32) -> Self {
        Self { i1, i2, j1, j2 }
    }

    pub fn area(&self) -> i64 {
        (self.i2 - self.i1) as i64 * (self.j2 - self.j1) as i64
    }
}

/// Admissibility level of an index T-mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    NotAdmissible,
    Admissible,
    AdmissiblePlus,
}

/// Rectangular partition of the index domain for bi-order `(p, q)`.
///
/// Cells are kept in canonical (sorted) order; the skeleton is cached as unit-edge
/// occupancy grids so that all topological queries are O(1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexTMesh {
    p: usize,
    q: usize,
    mu: i32,
    nu: i32,
    cells: Vec<Rect>,
    // h[(j - jlo) * wi + (i - ilo)]: unit edge [i, i+1] x {j}
    h: Vec<bool>,
    // v[(j - jlo) * (wi + 1) + (i - ilo)]: unit edge {i} x [j, j+1]
    v: Vec<bool>,
}

fn half(order: usize) -> i32 {
    (order / 2) as i32
}

impl IndexTMesh {
    /// Builds a mesh from its cells, checking that they tile the index domain.
    pub fn new(p: usize, q: usize, mu: i32, nu: i32, cells: Vec<Rect>) -> Result<Self> {
        check_params(p, q, mu, nu)?;
        let mut mesh = Self { p, q, mu, nu, cells: Vec::new(), h: Vec::new(), v: Vec::new() };
        let (ilo, ihi, jlo, jhi) = mesh.domain();
        let (wi, wj) = ((ihi - ilo) as usize, (jhi - jlo) as usize);
        let mut owner = vec![false; wi * wj];
        for c in &cells {
            if c.i1 >= c.i2 || c.j1 >= c.j2 {
                return Err(Error::MalformedPartition(format!("degenerate cell {c:?}")));
            }
            if c.i1 < ilo || c.i2 > ihi || c.j1 < jlo || c.j2 > jhi {
                return Err(Error::MalformedPartition(format!("cell {c:?} leaves the index domain")));
            }
            for j in c.j1..c.j2 {
                for i in c.i1..c.i2 {
                    let k = (j - jlo) as usize * wi + (i - ilo) as usize;
                    if owner[k] {
                        return Err(Error::MalformedPartition(format!("cell {c:?} overlaps another cell")));
                    }
                    owner[k] = true;
                }
            }
        }
        if let Some(k) = owner.iter().position(|o| !o) {
            let (i, j) = (ilo + (k % wi) as i32, jlo + (k / wi) as i32);
            return Err(Error::MalformedPartition(format!("unit square at ({i}, {j}) is not covered")));
        }
        mesh.h = vec![false; wi * (wj + 1)];
        mesh.v = vec![false; (wi + 1) * wj];
        for c in &cells {
            for i in c.i1..c.i2 {
                mesh.set_h(i, c.j1);
                mesh.set_h(i, c.j2);
            }
            for j in c.j1..c.j2 {
                mesh.set_v(c.i1, j);
                mesh.set_v(c.i2, j);
            }
        }
        mesh.cells = cells;
        mesh.cells.sort();
        Ok(mesh)
    }

    /// Builds a mesh from unit-edge occupancy; every region must be a rectangle and no
    /// edge may end inside a region.
    ///
    /// `h(i, j)` reports the unit edge `[i, i+1] x {j}`, `v(i, j)` the unit edge `{i} x [j, j+1]`.
    pub fn from_edges(
        p: usize,
        q: usize,
        mu: i32,
        nu: i32,
        h: impl Fn(i32, i32) -> bool,
        v: impl Fn(i32, i32) -> bool,
    ) -> Result<Self> {
        check_params(p, q, mu, nu)?;
        let ilo = -half(p) + 1;
        let ihi = mu + half(p);
        let jlo = -half(q) + 1;
        let jhi = nu + half(q);
        let wi = (ihi - ilo) as usize;
        let wj = (jhi - jlo) as usize;
        let sq = |i: i32, j: i32| (j - jlo) as usize * wi + (i - ilo) as usize;
        let mut parent: Vec<usize> = (0..wi * wj).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for j in jlo..jhi {
            for i in ilo..ihi {
                if i + 1 < ihi && !v(i + 1, j) {
                    let (a, b) = (find(&mut parent, sq(i, j)), find(&mut parent, sq(i + 1, j)));
                    parent[a] = b;
                }
                if j + 1 < jhi && !h(i, j + 1) {
                    let (a, b) = (find(&mut parent, sq(i, j)), find(&mut parent, sq(i, j + 1)));
                    parent[a] = b;
                }
            }
        }
        let mut boxes: std::collections::BTreeMap<usize, (Rect, i64)> = std::collections::BTreeMap::new();
        for j in jlo..jhi {
            for i in ilo..ihi {
                let r = find(&mut parent, sq(i, j));
                let e = boxes.entry(r).or_insert((Rect::new(i, i + 1, j, j + 1), 0));
                e.0.i1 = e.0.i1.min(i);
                e.0.i2 = e.0.i2.max(i + 1);
                e.0.j1 = e.0.j1.min(j);
                e.0.j2 = e.0.j2.max(j + 1);
                e.1 += 1;
            }
        }
        let mut cells = Vec::with_capacity(boxes.len());
        for (rect, count) in boxes.into_values() {
            if rect.area() != count {
                return Err(Error::MalformedPartition(format!("region with bounding box {rect:?} is not a rectangle")));
            }
            cells.push(rect);
        }
        let mesh = Self::new(p, q, mu, nu, cells)?;
        for j in jlo..=jhi {
            for i in ilo..ihi {
                if h(i, j) != mesh.has_h(i, j) {
                    return Err(Error::MalformedPartition(format!("dangling horizontal edge at ({i}, {j})")));
                }
            }
        }
        for j in jlo..jhi {
            for i in ilo..=ihi {
                if v(i, j) != mesh.has_v(i, j) {
                    return Err(Error::MalformedPartition(format!("dangling vertical edge at ({i}, {j})")));
                }
            }
        }
        Ok(mesh)
    }

    /// The full grid: every unit square is a cell.
    pub fn tensor(p: usize, q: usize, mu: i32, nu: i32) -> Result<Self> {
        check_params(p, q, mu, nu)?;
        let (ilo, ihi) = (-half(p) + 1, mu + half(p));
        let (jlo, jhi) = (-half(q) + 1, nu + half(q));
        let cells = (jlo..jhi).flat_map(|j| (ilo..ihi).map(move |i| Rect::new(i, i + 1, j, j + 1))).collect();
        Self::new(p, q, mu, nu, cells)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn mu(&self) -> i32 {
        self.mu
    }

    pub fn nu(&self) -> i32 {
        self.nu
    }

    pub fn cells(&self) -> &[Rect] {
        &self.cells
    }

    /// `(ilo, ihi, jlo, jhi)` of the index domain.
    pub fn domain(&self) -> (i32, i32, i32, i32) {
        (-half(self.p) + 1, self.mu + half(self.p), -half(self.q) + 1, self.nu + half(self.q))
    }

    fn width(&self) -> usize {
        let (ilo, ihi, _, _) = self.domain();
        (ihi - ilo) as usize
    }

    fn h_index(&self, i: i32, j: i32) -> Option<usize> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        (i >= ilo && i < ihi && j >= jlo && j <= jhi).then(|| (j - jlo) as usize * self.width() + (i - ilo) as usize)
    }

    fn v_index(&self, i: i32, j: i32) -> Option<usize> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        (i >= ilo && i <= ihi && j >= jlo && j < jhi)
            .then(|| (j - jlo) as usize * (self.width() + 1) + (i - ilo) as usize)
    }

    fn set_h(&mut self, i: i32, j: i32) {
        let k = self.h_index(i, j).expect("edge inside domain");
        self.h[k] = true;
    }

    fn set_v(&mut self, i: i32, j: i32) {
        let k = self.v_index(i, j).expect("edge inside domain");
        self.v[k] = true;
    }

    /// Unit horizontal edge `[i, i+1] x {j}` lies in the skeleton.
    pub fn has_h(&self, i: i32, j: i32) -> bool {
        self.h_index(i, j).is_some_and(|k| self.h[k])
    }

    /// Unit vertical edge `{i} x [j, j+1]` lies in the skeleton.
    pub fn has_v(&self, i: i32, j: i32) -> bool {
        self.v_index(i, j).is_some_and(|k| self.v[k])
    }

    /// Unit edges at `(i, j)` in the order left, right, down, up.
    pub fn arms(&self, i: i32, j: i32) -> [bool; 4] {
        [self.has_h(i - 1, j), self.has_h(i, j), self.has_v(i, j - 1), self.has_v(i, j)]
    }

    pub fn valence(&self, i: i32, j: i32) -> usize {
        self.arms(i, j).iter().filter(|&&a| a).count()
    }

    /// `(i, j)` is a mesh vertex, i.e. a corner of some cell.
    pub fn is_vertex(&self, i: i32, j: i32) -> bool {
        let [l, r, d, u] = self.arms(i, j);
        let horizontal = l || r;
        let vertical = d || u;
        horizontal && vertical
    }

    pub fn vertices(&self) -> Vec<(i32, i32)> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        (jlo..=jhi).flat_map(|j| (ilo..=ihi).map(move |i| (i, j))).filter(|&(i, j)| self.is_vertex(i, j)).collect()
    }

    /// Maximal horizontal edges between consecutive vertices, as `(i1, i2, j)`.
    pub fn horizontal_edges(&self) -> Vec<(i32, i32, i32)> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        let mut out = Vec::new();
        for j in jlo..=jhi {
            let mut i = ilo;
            while i < ihi {
                if self.has_h(i, j) && self.is_vertex(i, j) {
                    let mut k = i + 1;
                    while !self.is_vertex(k, j) {
                        k += 1;
                    }
                    out.push((i, k, j));
                    i = k;
                } else {
                    i += 1;
                }
            }
        }
        out
    }

    /// Maximal vertical edges between consecutive vertices, as `(i, j1, j2)`.
    pub fn vertical_edges(&self) -> Vec<(i32, i32, i32)> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        let mut out = Vec::new();
        for i in ilo..=ihi {
            let mut j = jlo;
            while j < jhi {
                if self.has_v(i, j) && self.is_vertex(i, j) {
                    let mut k = j + 1;
                    while !self.is_vertex(i, k) {
                        k += 1;
                    }
                    out.push((i, j, k));
                    j = k;
                } else {
                    j += 1;
                }
            }
        }
        out
    }

    /// Whether `(i, j)` lies in the closed frame region.
    pub fn in_frame(&self, i: i32, j: i32) -> bool {
        i <= 1 || i >= self.mu || j <= 1 || j >= self.nu
    }

    /// First admissibility failure, if any.
    pub fn admissibility_defect(&self) -> Option<String> {
        let (ilo, ihi, jlo, jhi) = self.domain();
        for l in (ilo..=1).chain(self.mu..=ihi) {
            if let Some(j) = (jlo..jhi).find(|&j| !self.has_v(l, j)) {
                return Some(format!("frame line i={l} is broken at j={j}"));
            }
        }
        for l in (jlo..=1).chain(self.nu..=jhi) {
            if let Some(i) = (ilo..ihi).find(|&i| !self.has_h(i, l)) {
                return Some(format!("frame line j={l} is broken at i={i}"));
            }
        }
        for j in jlo + 1..jhi {
            for i in ilo + 1..ihi {
                if self.in_frame(i, j) && self.is_vertex(i, j) && self.valence(i, j) != 4 {
                    return Some(format!("frame vertex ({i}, {j}) has valence {}", self.valence(i, j)));
                }
            }
        }
        None
    }

    /// First cell violating the no-facing-vertices condition, if any.
    pub fn ad_plus_defect(&self) -> Option<String> {
        for c in &self.cells {
            for i in c.i1 + 1..c.i2 {
                if self.is_vertex(i, c.j1) && self.is_vertex(i, c.j2) {
                    return Some(format!("cell {c:?} has vertices facing across i={i}"));
                }
            }
            for j in c.j1 + 1..c.j2 {
                if self.is_vertex(c.i1, j) && self.is_vertex(c.i2, j) {
                    return Some(format!("cell {c:?} has vertices facing across j={j}"));
                }
            }
        }
        None
    }

    pub fn classification(&self) -> Classification {
        if self.admissibility_defect().is_some() {
            Classification::NotAdmissible
        } else if self.ad_plus_defect().is_some() {
            Classification::Admissible
        } else {
            Classification::AdmissiblePlus
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.classification() >= Classification::Admissible
    }

    pub fn is_ad_plus(&self) -> bool {
        self.classification() == Classification::AdmissiblePlus
    }

    /// Fails with `NotAdmissible` when the mesh is not admissible.
    pub fn require_admissible(&self) -> Result<()> {
        match self.admissibility_defect() {
            Some(why) => Err(Error::NotAdmissible(why)),
            None => Ok(()),
        }
    }

    /// The full grid on the same index domain.
    pub fn underlying_tp_mesh(&self) -> IndexTMesh {
        Self::tensor(self.p, self.q, self.mu, self.nu).expect("parameters already validated")
    }

    /// Inserts a new index row between rows `at - 1` and `at`; rows at or above `at`
    /// move up by one. The new line carries the unit edges `[i, i+1]` with `keep(i)`.
    pub fn with_inserted_row(&self, at: i32, keep: impl Fn(i32) -> bool) -> Result<Self> {
        let (_, _, jlo, jhi) = self.domain();
        if at <= jlo || at > jhi {
            return Err(Error::InvalidParameter(format!("row {at} is not inside the index domain")));
        }
        let old = |j: i32| if j >= at { j - 1 } else { j };
        Self::from_edges(
            self.p,
            self.q,
            self.mu,
            self.nu + 1,
            |i, j| {
                if j == at {
                    keep(i)
                } else {
                    self.has_h(i, old(j))
                }
            },
            |i, j| {
                if j == at {
                    self.has_v(i, at - 1)
                } else {
                    self.has_v(i, old(j))
                }
            },
        )
    }

    /// Inserts a new index column between columns `at - 1` and `at`; see
    /// [`IndexTMesh::with_inserted_row`].
    pub fn with_inserted_column(&self, at: i32, keep: impl Fn(i32) -> bool) -> Result<Self> {
        let (ilo, ihi, _, _) = self.domain();
        if at <= ilo || at > ihi {
            return Err(Error::InvalidParameter(format!("column {at} is not inside the index domain")));
        }
        let old = |i: i32| if i >= at { i - 1 } else { i };
        Self::from_edges(
            self.p,
            self.q,
            self.mu + 1,
            self.nu,
            |i, j| {
                if i == at {
                    self.has_h(at - 1, j)
                } else {
                    self.has_h(old(i), j)
                }
            },
            |i, j| {
                if i == at {
                    keep(j)
                } else {
                    self.has_v(old(i), j)
                }
            },
        )
    }

    pub fn is_tensor(&self) -> bool {
        let (ilo, ihi, jlo, jhi) = self.domain();
        self.cells.len() == ((ihi - ilo) * (jhi - jlo)) as usize
    }
}

fn check_params(p: usize, q: usize, mu: i32, nu: i32) -> Result<()> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParameter(format!("orders must be at least 2, got ({p}, {q})")));
    }
    if mu < 1 || nu < 1 {
        return Err(Error::InvalidParameter(format!("active extents must be positive, got ({mu}, {nu})")));
    }
    Ok(())
}
