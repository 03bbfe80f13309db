//! Shared oracles for the integration suites: a dense linear-algebra solver
//! for the restart-walk fixed point, Gauss-Legendre quadrature, and seeded
//! random graph/label generators. All deliberately independent of the
//! library's own iterative implementations.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use assort_core::{Column, Graph};

/// Solves the restart-walk fixed point `(I - alpha * M) w = (1 - alpha) e_seed`
/// densely by Gaussian elimination with partial pivoting, where
/// `M[i][j] = A_ji / k_j^out` and dangling columns send all mass to the seed.
pub fn dense_ppr(graph: &Graph, seed: usize, alpha: f64) -> Vec<f64> {
    let n = graph.n_nodes();
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for i in 0..n {
        a[i][i] = 1.0;
    }
    for j in 0..n {
        let k = graph.out_degree(j);
        if k == 0 {
            a[seed][j] -= alpha;
        } else {
            let share = alpha / k as f64;
            for &i in graph.out_neighbors(j) {
                a[i as usize][j] -= share;
            }
        }
    }
    a[seed][n] = 1.0 - alpha;
    // forward elimination with partial pivoting
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        assert!(p.abs() > 1e-300, "singular system");
        for row in (col + 1)..n {
            let f = a[row][col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..=n {
                a[row][c] -= f * a[col][c];
            }
        }
    }
    let mut w = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for c in (row + 1)..n {
            acc -= a[row][c] * w[c];
        }
        w[row] = acc / a[row][row];
    }
    w
}

/// Nodes and weights of `n`-point Gauss-Legendre quadrature on [0, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for k in 0..n {
        // Chebyshev-style initial guess for the k-th root on [-1, 1]
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        rule.push(((x + 1.0) / 2.0, w / 2.0));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Random connected undirected simple graph on `n` nodes containing at least
/// one triangle (so the simple walk is aperiodic). Deterministic per seed.
pub fn random_connected_graph(rng_seed: u64, n: usize) -> Graph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut edges: Vec<(u32, u32)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut seen: std::collections::HashSet<(u32, u32)> = edges.iter().copied().collect();
    // random attachment keeps the graph connected
    for v in 3..n as u32 {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        seen.insert((u, v));
    }
    // sprinkle extra edges, about half as many again
    let extra = n / 2 + 2;
    for _ in 0..extra {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    let ids = (0..n).map(|i| format!("v{i}")).collect();
    Graph::from_indexed_edges(ids, &edges, false).unwrap()
}

/// Random fully observed categorical column with `n_cats` categories, each
/// guaranteed at least one node.
pub fn random_labels(rng_seed: u64, n: usize, n_cats: u32) -> Column {
    assert!(n >= n_cats as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut values: Vec<Option<u32>> = (0..n)
        .map(|i| Some(if i < n_cats as usize { i as u32 } else { rng.gen_range(0..n_cats) }))
        .collect();
    values.shuffle(&mut rng);
    Column::Categorical {
        values,
        categories: (0..n_cats).map(|c| format!("c{c}")).collect(),
    }
}

/// Categorical column from explicit per-node indices.
pub fn cat(values: Vec<Option<u32>>, n_cats: u32) -> Column {
    Column::Categorical {
        values,
        categories: (0..n_cats).map(|c| format!("c{c}")).collect(),
    }
}

/// z-weighted mean and standard deviation of `(value, weight)` pairs.
pub fn weighted_mean_std(pairs: &[(f64, f64)]) -> (f64, f64) {
    let total: f64 = pairs.iter().map(|(_, z)| z).sum();
    assert!(total > 0.0);
    let mean = pairs.iter().map(|(r, z)| r * z).sum::<f64>() / total;
    let var = pairs.iter().map(|(r, z)| z * (r - mean) * (r - mean)).sum::<f64>() / total;
    (mean, var.sqrt())
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
