use rand::Rng;

use super::mesh::{Classification, IndexTMesh};

/// Removes random runs of unit edges inside the active region from the full grid,
/// keeping a removal only when the result is a valid partition at `level` or above.
///
/// Runs of length one always create facing vertices, so longer runs are needed to
/// reach admissible-plus meshes. `attempts` bounds the number of candidate runs tried.
pub fn random_mesh<R: Rng + ?Sized>(
    rng: &mut R,
    p: usize,
    q: usize,
    mu: i32,
    nu: i32,
    attempts: usize,
    level: Classification,
) -> IndexTMesh {
    let mut mesh = IndexTMesh::tensor(p, q, mu, nu).expect("valid parameters");
    if mu < 3 && nu < 3 {
        return mesh;
    }
    for _ in 0..attempts {
        // a horizontal run lies on an interior line j in 2..nu and covers [i0, i0+len]
        let horizontal = if nu < 3 {
            false
        } else if mu < 3 {
            true
        } else {
            rng.random_bool(0.5)
        };
        let (line_hi, along_hi) = if horizontal { (nu, mu) } else { (mu, nu) };
        let line = rng.random_range(2..line_hi);
        let start = rng.random_range(1..along_hi);
        let len = rng.random_range(1..=(along_hi - start));
        let run = |a: i32| a >= start && a < start + len;
        let current = &mesh;
        let present =
            (start..start + len).all(|a| if horizontal { current.has_h(a, line) } else { current.has_v(line, a) });
        if !present {
            continue;
        }
        let h = |i: i32, j: i32| current.has_h(i, j) && !(horizontal && j == line && run(i));
        let v = |i: i32, j: i32| current.has_v(i, j) && !(!horizontal && i == line && run(j));
        if let Ok(next) = IndexTMesh::from_edges(p, q, mu, nu, h, v) {
            if next.classification() >= level {
                mesh = next;
            }
        }
    }
    mesh
}

/// Strictly increasing knots with random gaps in `[min_gap, max_gap]` starting at 0.
pub fn random_knots<R: Rng + ?Sized>(rng: &mut R, count: usize, min_gap: f64, max_gap: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut x = 0.0;
    for _ in 0..count {
        out.push(x);
        x += rng.random_range(min_gap..=max_gap);
    }
    out
}
