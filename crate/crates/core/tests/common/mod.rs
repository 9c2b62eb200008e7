//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use gtspline::SectionCore;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Integral of `f` over [a, b] with an n-point Gauss-Legendre rule.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    rule.iter().map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
}

/// Classical Cox-de Boor B-spline of order `p` (degree p-1); right-continuous,
/// left-continuous at the final knot.
pub fn cox_de_boor(knots: &[f64], p: usize, i: usize, s: f64) -> f64 {
    let last = *knots.last().unwrap();
    if p == 1 {
        let (a, b) = (knots[i], knots[i + 1]);
        if a <= s && s < b {
            return 1.0;
        }
        if s == last && b == last && a < b {
            return 1.0;
        }
        return 0.0;
    }
    let mut v = 0.0;
    let d1 = knots[i + p - 1] - knots[i];
    if d1 > 0.0 {
        v += (s - knots[i]) / d1 * cox_de_boor(knots, p - 1, i, s);
    }
    let d2 = knots[i + p] - knots[i + 1];
    if d2 > 0.0 {
        v += (knots[i + p] - s) / d2 * cox_de_boor(knots, p - 1, i + 1, s);
    }
    v
}

/// Boehm insertion for order-`p` B-splines: returns the refined knots and, for each
/// original function j, `(gamma_j, eta_{j+1})` with `P_j = gamma_j Pbar_j + eta_{j+1} Pbar_{j+1}`.
pub fn boehm_insert(knots: &[f64], p: usize, x: f64) -> (Vec<f64>, Vec<(f64, f64)>) {
    let m = knots.len();
    let i = (0..m - 1).rev().find(|&j| knots[j] <= x && x < knots[j + 1]).unwrap();
    let alpha = |j: usize| -> f64 {
        if j + p < i + 2 {
            1.0
        } else if j > i {
            0.0
        } else {
            (x - knots[j]) / (knots[j + p - 1] - knots[j])
        }
    };
    let n = m - p;
    let coeffs = (0..n).map(|j| (alpha(j), 1.0 - alpha(j + 1))).collect();
    let mut refined = knots.to_vec();
    refined.insert(i + 1, x);
    (refined, coeffs)
}

/// Repeated Boehm insertion of a single order-p B-spline with p+1 knots.
pub fn boehm_refine(knots: &[f64], p: usize, targets: &[f64]) -> Vec<f64> {
    let mut kv = knots.to_vec();
    let mut c = vec![1.0];
    for &t in targets {
        let (next, coeffs) = boehm_insert(&kv, p, t);
        let mut nc = vec![0.0; c.len() + 1];
        for (j, &v) in c.iter().enumerate() {
            nc[j] += v * coeffs[j].0;
            nc[j + 1] += v * coeffs[j].1;
        }
        kv = next;
        c = nc;
    }
    c
}

/// Generating functions written directly from their definitions.
pub fn generator_u(core: SectionCore, _a: f64, b: f64, s: f64) -> f64 {
    match core {
        SectionCore::Trigonometric { omega } => (omega * (b - s)).sin(),
        SectionCore::Hyperbolic { omega } => (omega * (b - s)).sinh(),
        SectionCore::Polynomial => b - s,
    }
}

pub fn generator_v(core: SectionCore, a: f64, _b: f64, s: f64) -> f64 {
    match core {
        SectionCore::Trigonometric { omega } => (omega * (s - a)).sin(),
        SectionCore::Hyperbolic { omega } => (omega * (s - a)).sinh(),
        SectionCore::Polynomial => s - a,
    }
}

/// GB-splines evaluated by nested numerical integration of the order-raising recursion.
pub struct QuadratureGB {
    pub knots: Vec<f64>,
    pub cores: Vec<SectionCore>,
    rule: Vec<(f64, f64)>,
}

impl QuadratureGB {
    pub fn new(knots: &[f64], cores: &[SectionCore]) -> Self {
        Self { knots: knots.to_vec(), cores: cores.to_vec(), rule: gauss_legendre(20) }
    }

    /// Order-q function i at s (right-continuous).
    pub fn value(&self, q: usize, i: usize, s: f64) -> f64 {
        let k = &self.knots;
        if q == 2 {
            let (a, b, c) = (k[i], k[i + 1], k[i + 2]);
            if a <= s && s < b {
                return generator_v(self.cores[i], a, b, s) / generator_v(self.cores[i], a, b, b);
            }
            if b <= s && s < c {
                return generator_u(self.cores[i + 1], b, c, s) / generator_u(self.cores[i + 1], b, c, b);
            }
            return 0.0;
        }
        if s < k[i] || s >= k[i + q] {
            return 0.0;
        }
        self.normalized_integral(q - 1, i, s) - self.normalized_integral(q - 1, i + 1, s)
    }

    /// `delta * int_{-inf}^s N` for the order-q function i, with the step convention.
    fn normalized_integral(&self, q: usize, i: usize, s: f64) -> f64 {
        let k = &self.knots;
        if k[i] == k[i + q] {
            return if s >= k[i + q] { 1.0 } else { 0.0 };
        }
        let partial = self.integral_to(q, i, s);
        partial / self.integral_to(q, i, k[i + q])
    }

    fn integral_to(&self, q: usize, i: usize, s: f64) -> f64 {
        let k = &self.knots;
        let mut total = 0.0;
        for j in i..i + q {
            let (a, b) = (k[j], k[j + 1]);
            if b <= a || s <= a {
                continue;
            }
            total += integrate(|r| self.value(q, i, r), a, b.min(s), &self.rule);
        }
        total
    }

    pub fn area(&self, q: usize, i: usize) -> f64 {
        self.integral_to(q, i, self.knots[i + q])
    }
}

/// Seeded random admissible mesh with random simple knots; `mu` and `nu` in `4..=max`.
pub fn random_parametric(
    seed: u64,
    p: usize,
    q: usize,
    max: i32,
    level: gtspline::tmesh::Classification,
    core_s: SectionCore,
    core_t: SectionCore,
) -> gtspline::ParametricTMesh {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mu = rng.random_range(4..=max);
    let nu = rng.random_range(4..=max);
    let mesh = gtspline::tmesh::random_mesh(&mut rng, p, q, mu, nu, 30, level);
    let (ilo, ihi, jlo, jhi) = mesh.domain();
    let ks = gtspline::tmesh::random_knots(&mut rng, (ihi - ilo + 1) as usize, 0.2, 0.6);
    let kt = gtspline::tmesh::random_knots(&mut rng, (jhi - jlo + 1) as usize, 0.2, 0.6);
    gtspline::ParametricTMesh::with_uniform_cores(mesh, ks, core_s, kt, core_t).unwrap()
}

/// Loads a mesh fixture from `tests/fixtures/<name>.json`.
pub fn fixture(name: &str) -> gtspline::ParametricTMesh {
    let path = format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    gtspline::ParametricTMesh::from_json(&text).unwrap()
}

/// Column reduction that removes one innocuous column at a time, picked at random,
/// dropping zero rows after every removal. Returns surviving rows and columns.
pub fn random_order_reduction<R: rand::Rng>(
    m: &gtspline::classify::BoolMatrix,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let mut rows: Vec<usize> = (0..m.rows()).collect();
    let mut cols: Vec<usize> = (0..m.cols()).collect();
    loop {
        rows.retain(|&r| cols.iter().any(|&c| m.get(r, c)));
        let innocuous: Vec<usize> = rows
            .iter()
            .filter_map(|&r| {
                let live: Vec<usize> = cols.iter().copied().filter(|&c| m.get(r, c)).collect();
                (live.len() == 1).then(|| live[0])
            })
            .collect();
        if innocuous.is_empty() {
            return (rows, cols);
        }
        let pick = innocuous[rng.random_range(0..innocuous.len())];
        cols.retain(|&c| c != pick);
    }
}
