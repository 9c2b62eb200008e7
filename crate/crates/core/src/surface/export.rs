use std::fmt::Write as _;

use super::rational::SampleGrid;

/// CSV with header `s,t,x,y,z`, one row per sample in grid order.
pub fn to_csv(grid: &SampleGrid) -> String {
    let mut out = String::from("s,t,x,y,z\n");
    for (b, &t) in grid.t.iter().enumerate() {
        for (a, &s) in grid.s.iter().enumerate() {
            let p = grid.points[b * grid.s.len() + a];
            writeln!(out, "{s},{t},{},{},{}", p[0], p[1], p[2]).unwrap();
        }
    }
    out
}

/// Wavefront OBJ: one vertex per sample and two triangles per grid cell.
pub fn to_obj(grid: &SampleGrid) -> String {
    let (ns, nt) = (grid.s.len(), grid.t.len());
    let mut out = String::new();
    for p in &grid.points {
        writeln!(out, "v {} {} {}", p[0], p[1], p[2]).unwrap();
    }
    for b in 0..nt.saturating_sub(1) {
        for a in 0..ns.saturating_sub(1) {
            let v00 = b * ns + a + 1;
            let v10 = v00 + 1;
            let v01 = v00 + ns;
            let v11 = v01 + 1;
            writeln!(out, "f {v00} {v10} {v11}").unwrap();
            writeln!(out, "f {v00} {v11} {v01}").unwrap();
        }
    }
    out
}
