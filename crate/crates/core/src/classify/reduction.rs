use std::fmt;

/// Dense boolean matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BoolMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![false; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_void(&self) -> bool {
        self.rows == 0 && self.cols == 0
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::new(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c));
            }
        }
        m
    }

    /// Text grid of 0/1, one row per line.
    pub fn to_grid(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix {}x{}\n{}", self.rows, self.cols, self.to_grid())
    }
}

/// Outcome of column reduction: surviving rows and columns of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub passes: usize,
}

impl Reduction {
    pub fn is_void(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }
}

/// Repeatedly removes innocuous columns (the single nonzero of some row) and the
/// zero rows left behind, until nothing changes.
///
/// Each pass scans the live rows from the lowest index, marks every innocuous column,
/// then removes the marked columns and all zero rows.
pub fn column_reduction(m: &BoolMatrix) -> Reduction {
    let mut row_live = vec![true; m.rows()];
    let mut col_live = vec![true; m.cols()];
    let live_count = |r: usize, col_live: &[bool]| (0..m.cols()).filter(|&c| col_live[c] && m.get(r, c)).count();
    let mut passes = 0;
    loop {
        let mut changed = false;
        for (r, live) in row_live.iter_mut().enumerate() {
            if *live && live_count(r, &col_live) == 0 {
                *live = false;
                changed = true;
            }
        }
        let mut marked = Vec::new();
        for r in (0..m.rows()).filter(|&r| row_live[r]) {
            let mut live = (0..m.cols()).filter(|&c| col_live[c] && m.get(r, c));
            if let (Some(c), None) = (live.next(), live.next()) {
                marked.push(c);
            }
        }
        for c in marked {
            if col_live[c] {
                col_live[c] = false;
                changed = true;
            }
        }
        for (r, live) in row_live.iter_mut().enumerate() {
            if *live && live_count(r, &col_live) == 0 {
                *live = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        passes += 1;
    }
    Reduction {
        rows: (0..m.rows()).filter(|&r| row_live[r]).collect(),
        cols: (0..m.cols()).filter(|&c| col_live[c]).collect(),
        passes,
    }
}

/// The reduced matrix itself.
pub fn reduce(m: &BoolMatrix) -> BoolMatrix {
    let red = column_reduction(m);
    m.select(&red.rows, &red.cols)
}
