//! Assortativity computations: mixing matrices, global and local
//! coefficients for categorical and scalar attributes, and cross-attribute
//! comparison of local results.
//!
//! The categorical mixing matrix `e[g][h]` holds the proportion of edge
//! endpoints joining type `g` to type `h`; `r = (sum_g e_gg - sum_g a_g b_g)
//! / (1 - sum_g a_g b_g)`. Local variants replace the stationary walker
//! distribution with a seed-weighted one and keep the global marginals in the
//! baseline term. Edge terms touching a missing attribute are skipped and the
//! retained mass is reported as the confidence weight `z`.

use crate::attr::Column;
use crate::error::{AssortError, Result};
use crate::graph::{Graph, WeightKind, WeightVector};
use crate::walker::{multiscale_weights, ppr, WalkerConfig};

/// Joint distribution of edge-endpoint types with its marginals.
#[derive(Debug, Clone)]
pub struct MixingMatrix {
    pub e: Vec<Vec<f64>>,
    /// Row marginals (out-side for directed graphs).
    pub a: Vec<f64>,
    /// Column marginals; equals `a` for undirected graphs.
    pub b: Vec<f64>,
    /// Total retained mass before renormalization (1 when nothing is missing).
    pub observed_mass: f64,
    pub directed: bool,
}

impl MixingMatrix {
    pub fn n_categories(&self) -> usize {
        self.a.len()
    }

    pub fn sum_diag(&self) -> f64 {
        (0..self.n_categories()).map(|g| self.e[g][g]).sum()
    }

    pub fn sum_ab(&self) -> f64 {
        self.a.iter().zip(&self.b).map(|(a, b)| a * b).sum()
    }

    pub fn q_max(&self) -> f64 {
        1.0 - self.sum_ab()
    }
}

/// How a local result was weighted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalKind {
    FixedAlpha(f64),
    Multiscale,
}

/// Per-node assortativity with its confidence weight.
#[derive(Debug, Clone, Copy)]
pub struct LocalMixingResult {
    pub node: usize,
    /// `None` when the local mixing matrix is empty (all mass on missing
    /// labels) or the denominator is degenerate.
    pub r: Option<f64>,
    /// Retained mass in [0, 1]; 1 when the seed's component is fully labeled.
    pub z: f64,
    pub kind: LocalKind,
}

/// Computes the mixing matrix of a categorical column. Without weights each
/// edge contributes `1/2m` per orientation (or `1/m` per arc when directed);
/// with weights each ordered term contributes `w(i) * A_ij / k_i^out`.
/// Terms with a missing endpoint label are skipped, and the matrix is
/// renormalized with the retained mass recorded in `observed_mass`.
pub fn mixing_matrix(
    graph: &Graph,
    column: &Column,
    weights: Option<&WeightVector>,
) -> Result<MixingMatrix> {
    let (values, categories) = column.as_categorical()?;
    if values.len() != graph.n_nodes() {
        return Err(AssortError::AttributeFormat(
            "column length does not match graph".into(),
        ));
    }
    let n_cats = categories.len();
    let mut e = vec![vec![0.0; n_cats]; n_cats];
    let directed = graph.is_directed();
    let mut fully_observed = false;
    match weights {
        None => {
            if graph.n_edges() == 0 {
                return Err(AssortError::EmptyMixing);
            }
            let norm = if directed {
                1.0 / graph.n_edges() as f64
            } else {
                1.0 / (2.0 * graph.n_edges() as f64)
            };
            for u in 0..graph.n_nodes() {
                let Some(g) = values[u] else { continue };
                // undirected adjacency lists already hold both orientations
                for &v in graph.out_neighbors(u) {
                    let Some(h) = values[v as usize] else { continue };
                    e[g as usize][h as usize] += norm;
                }
            }
        }
        Some(w) => {
            let total: f64 = w.weights.iter().sum();
            if (total - 1.0).abs() > 1e-6 {
                return Err(AssortError::InvalidConfig(format!(
                    "weight vector sums to {total}, expected 1"
                )));
            }
            let mut dropped = false;
            for i in 0..graph.n_nodes() {
                let wi = w.weights[i];
                if wi == 0.0 {
                    continue;
                }
                let Some(g) = values[i] else {
                    dropped = true;
                    continue;
                };
                let k = graph.out_degree(i);
                if k == 0 {
                    // weighted dangling/isolated node: its mass observes no edge
                    dropped = true;
                    continue;
                }
                let share = wi / k as f64;
                for &j in graph.out_neighbors(i) {
                    let Some(h) = values[j as usize] else {
                        dropped = true;
                        continue;
                    };
                    e[g as usize][h as usize] += share;
                }
            }
            fully_observed = !dropped;
        }
    }
    let mut observed_mass: f64 = e.iter().flatten().sum();
    if observed_mass <= 0.0 {
        return Err(AssortError::EmptyMixing);
    }
    if fully_observed {
        // every weighted edge term was observed; report the retained mass as
        // exactly 1 rather than the rounded sum of shares
        observed_mass = 1.0;
    }
    for row in &mut e {
        for x in row.iter_mut() {
            *x /= observed_mass;
        }
    }
    let mut a = vec![0.0; n_cats];
    let mut b = vec![0.0; n_cats];
    for g in 0..n_cats {
        for h in 0..n_cats {
            a[g] += e[g][h];
            b[h] += e[g][h];
        }
    }
    Ok(MixingMatrix {
        e,
        a,
        b,
        observed_mass,
        directed,
    })
}

/// Global categorical assortativity `(sum_g e_gg - sum_g a_g b_g) / Q_max`.
pub fn global_assort_cat(mix: &MixingMatrix) -> Result<f64> {
    let q_max = mix.q_max();
    if q_max <= 1e-12 {
        return Err(AssortError::DegenerateAttribute(
            "single effective category (Q_max = 0)".into(),
        ));
    }
    Ok((mix.sum_diag() - mix.sum_ab()) / q_max)
}

/// Lower end of the assortativity range, `-sum_g a_g b_g / (1 - sum_g a_g b_g)`.
/// Returned verbatim; values below -1 arise for unbalanced marginals.
pub fn r_min(mix: &MixingMatrix) -> Result<f64> {
    let q_max = mix.q_max();
    if q_max <= 1e-12 {
        return Err(AssortError::DegenerateAttribute(
            "single effective category (Q_max = 0)".into(),
        ));
    }
    Ok(-mix.sum_ab() / q_max)
}

/// Local categorical assortativity of `seed` under the given weights, using
/// the global marginals and `Q_max` from `global_mix`.
pub fn local_assort_cat(
    graph: &Graph,
    column: &Column,
    seed: usize,
    weights: &WeightVector,
    global_mix: &MixingMatrix,
) -> Result<LocalMixingResult> {
    let kind = kind_of(weights);
    let q_max = global_mix.q_max();
    if q_max <= 1e-12 {
        return Err(AssortError::DegenerateAttribute(
            "single effective category (Q_max = 0)".into(),
        ));
    }
    let local = match mixing_matrix(graph, column, Some(weights)) {
        Ok(m) => m,
        Err(AssortError::EmptyMixing) => {
            return Ok(LocalMixingResult {
                node: seed,
                r: None,
                z: 0.0,
                kind,
            })
        }
        Err(e) => return Err(e),
    };
    let n_cats = global_mix.n_categories();
    let mut num = 0.0;
    for g in 0..n_cats {
        num += local.e[g][g] - global_mix.a[g] * global_mix.b[g];
    }
    Ok(LocalMixingResult {
        node: seed,
        r: Some(num / q_max),
        z: local.observed_mass.min(1.0),
        kind,
    })
}

fn kind_of(weights: &WeightVector) -> LocalKind {
    match weights.kind {
        WeightKind::Ppr { alpha } => LocalKind::FixedAlpha(alpha),
        WeightKind::Multiscale => LocalKind::Multiscale,
        WeightKind::Stationary => LocalKind::FixedAlpha(1.0),
    }
}

/// Degree-weighted standardization of a scalar column over its non-missing
/// nodes.
#[derive(Debug, Clone)]
pub struct ScalarStandardization {
    pub mean: f64,
    pub sigma: f64,
    /// Standardized values, `None` where the attribute is missing.
    pub x_tilde: Vec<Option<f64>>,
}

/// Standardizes so that the degree-weighted mean is 0 and variance 1 over
/// non-missing nodes (weights renormalized over the known set).
pub fn standardize_scalar(graph: &Graph, column: &Column) -> Result<ScalarStandardization> {
    let values = column.as_scalar()?;
    let n = graph.n_nodes();
    let total_k: f64 = (0..n)
        .filter(|&i| values[i].is_some())
        .map(|i| graph.out_degree(i) as f64)
        .sum();
    if total_k == 0.0 {
        return Err(AssortError::EmptyMixing);
    }
    let mean: f64 = (0..n)
        .filter_map(|i| values[i].map(|x| graph.out_degree(i) as f64 / total_k * x))
        .sum();
    let var: f64 = (0..n)
        .filter_map(|i| {
            values[i].map(|x| {
                let d = x - mean;
                graph.out_degree(i) as f64 / total_k * d * d
            })
        })
        .sum();
    if var <= 1e-24 {
        return Err(AssortError::DegenerateAttribute(
            "scalar attribute has zero variance".into(),
        ));
    }
    let sigma = var.sqrt();
    let x_tilde = values.iter().map(|v| v.map(|x| (x - mean) / sigma)).collect();
    Ok(ScalarStandardization {
        mean,
        sigma,
        x_tilde,
    })
}

/// Global scalar assortativity: Pearson correlation of attribute values
/// across edges, `sum_ij (A_ij / 2m') x~_i x~_j` over edges with both
/// endpoints known.
pub fn global_assort_scalar(graph: &Graph, column: &Column) -> Result<f64> {
    if graph.is_directed() {
        return Err(AssortError::DirectedUnsupported(
            "scalar assortativity is defined for undirected graphs".into(),
        ));
    }
    let std = standardize_scalar(graph, column)?;
    let mut acc = 0.0;
    let mut retained = 0usize; // ordered endpoint pairs
    for i in 0..graph.n_nodes() {
        let Some(xi) = std.x_tilde[i] else { continue };
        for &j in graph.out_neighbors(i) {
            let Some(xj) = std.x_tilde[j as usize] else { continue };
            acc += xi * xj;
            retained += 1;
        }
    }
    if retained == 0 {
        return Err(AssortError::EmptyMixing);
    }
    Ok(acc / retained as f64)
}

/// Local scalar assortativity `sum_ij w(i) (A_ij / k_i) x~_i x~_j` with the
/// global standardization; skipped missing-endpoint terms are accounted for
/// by renormalizing with the retained mass `z`.
pub fn local_assort_scalar(
    graph: &Graph,
    seed: usize,
    weights: &WeightVector,
    std: &ScalarStandardization,
) -> Result<LocalMixingResult> {
    let kind = kind_of(weights);
    let mut acc = 0.0;
    let mut mass = 0.0;
    for i in 0..graph.n_nodes() {
        let wi = weights.weights[i];
        if wi == 0.0 {
            continue;
        }
        let Some(xi) = std.x_tilde[i] else { continue };
        let k = graph.out_degree(i);
        if k == 0 {
            continue;
        }
        let share = wi / k as f64;
        for &j in graph.out_neighbors(i) {
            let Some(xj) = std.x_tilde[j as usize] else { continue };
            acc += share * xi * xj;
            mass += share;
        }
    }
    if mass <= 0.0 {
        return Ok(LocalMixingResult {
            node: seed,
            r: None,
            z: 0.0,
            kind,
        });
    }
    Ok(LocalMixingResult {
        node: seed,
        r: Some(acc / mass),
        z: mass.min(1.0),
        kind,
    })
}

/// Multiscale local assortativity of one seed node; dispatches on the
/// column kind. Computes the global context internally; use
/// [`local_assort_all`] for whole-graph sweeps.
pub fn local_assort_multiscale(
    graph: &Graph,
    column: &Column,
    seed: usize,
    config: &WalkerConfig,
) -> Result<LocalMixingResult> {
    let ctx = LocalContext::new(graph, column)?;
    let w = multiscale_weights(graph, seed, config)?;
    ctx.local(graph, column, seed, &w)
}

/// Precomputed global quantities shared across per-seed local computations.
pub enum LocalContext {
    Categorical(MixingMatrix),
    Scalar(ScalarStandardization),
}

impl LocalContext {
    pub fn new(graph: &Graph, column: &Column) -> Result<Self> {
        match column {
            Column::Categorical { .. } => {
                let mix = mixing_matrix(graph, column, None)?;
                // surface the degenerate case up front
                global_assort_cat(&mix)?;
                Ok(LocalContext::Categorical(mix))
            }
            Column::Scalar { .. } => Ok(LocalContext::Scalar(standardize_scalar(graph, column)?)),
        }
    }

    pub fn local(
        &self,
        graph: &Graph,
        column: &Column,
        seed: usize,
        weights: &WeightVector,
    ) -> Result<LocalMixingResult> {
        match self {
            LocalContext::Categorical(mix) => local_assort_cat(graph, column, seed, weights, mix),
            LocalContext::Scalar(std) => local_assort_scalar(graph, seed, weights, std),
        }
    }
}

/// Weighting mode for whole-graph local sweeps.
#[derive(Debug, Clone, Copy)]
pub enum Weighting {
    FixedAlpha(f64),
    Multiscale,
}

/// Local assortativity of every node, computed in parallel across seeds when
/// the `parallel` feature is enabled. Results are ordered by node index.
pub fn local_assort_all(
    graph: &Graph,
    column: &Column,
    weighting: Weighting,
    config: &WalkerConfig,
) -> Result<Vec<LocalMixingResult>> {
    config.validate()?;
    let ctx = LocalContext::new(graph, column)?;
    let results = crate::par::try_map_nodes(graph.n_nodes(), |seed| {
        let w = match weighting {
            Weighting::FixedAlpha(alpha) => {
                let cfg = WalkerConfig { alpha, ..*config };
                ppr(graph, seed, &cfg)?
            }
            Weighting::Multiscale => multiscale_weights(graph, seed, config)?,
        };
        ctx.local(graph, column, seed, &w)
    })?;
    Ok(results)
}

/// Sequential variant of [`local_assort_all`], kept available for
/// benchmarking against the parallel path.
pub fn local_assort_all_sequential(
    graph: &Graph,
    column: &Column,
    weighting: Weighting,
    config: &WalkerConfig,
) -> Result<Vec<LocalMixingResult>> {
    config.validate()?;
    let ctx = LocalContext::new(graph, column)?;
    (0..graph.n_nodes())
        .map(|seed| {
            let w = match weighting {
                Weighting::FixedAlpha(alpha) => {
                    let cfg = WalkerConfig { alpha, ..*config };
                    ppr(graph, seed, &cfg)?
                }
                Weighting::Multiscale => multiscale_weights(graph, seed, config)?,
            };
            ctx.local(graph, column, seed, &w)
        })
        .collect()
}

/// z-weighted Pearson correlation between two sets of local results on the
/// same node set, plus the same-weighted fraction of nodes where the first
/// attribute is strictly more assortative. Nodes undefined in either input
/// are excluded; weights are `min(z_a, z_b)` (or 1 when `weighted` is false).
pub fn assort_correlation(
    results_a: &[LocalMixingResult],
    results_b: &[LocalMixingResult],
    weighted: bool,
) -> Result<(f64, f64)> {
    use std::collections::HashMap;
    let by_node: HashMap<usize, &LocalMixingResult> =
        results_b.iter().map(|r| (r.node, r)).collect();
    let mut pairs: Vec<(f64, f64, f64)> = Vec::new();
    for ra in results_a {
        let Some(rb) = by_node.get(&ra.node) else { continue };
        if let (Some(va), Some(vb)) = (ra.r, rb.r) {
            let w = if weighted { ra.z.min(rb.z) } else { 1.0 };
            if w > 0.0 {
                pairs.push((va, vb, w));
            }
        }
    }
    if pairs.len() < 3 {
        return Err(AssortError::TooFewComparable {
            needed: 3,
            got: pairs.len(),
        });
    }
    let total_w: f64 = pairs.iter().map(|p| p.2).sum();
    let mean_a: f64 = pairs.iter().map(|p| p.0 * p.2).sum::<f64>() / total_w;
    let mean_b: f64 = pairs.iter().map(|p| p.1 * p.2).sum::<f64>() / total_w;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    let mut frac = 0.0;
    for &(a, b, w) in &pairs {
        cov += w * (a - mean_a) * (b - mean_b);
        var_a += w * (a - mean_a) * (a - mean_a);
        var_b += w * (b - mean_b) * (b - mean_b);
        if a > b {
            frac += w;
        }
    }
    if var_a <= 0.0 || var_b <= 0.0 {
        return Err(AssortError::DegenerateAttribute(
            "constant local assortativity vector".into(),
        ));
    }
    Ok((cov / (var_a * var_b).sqrt(), frac / total_w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::stationary_distribution;

    fn cat(values: Vec<Option<u32>>, n_cats: usize) -> Column {
        Column::Categorical {
            values,
            categories: (0..n_cats).map(|c| format!("c{c}")).collect(),
        }
    }

    #[test]
    fn single_edge_mixing() {
        let g = Graph::load_edge_list("a b", false, false).unwrap();
        let col = cat(vec![Some(0), Some(1)], 2);
        let m = mixing_matrix(&g, &col, None).unwrap();
        assert_eq!(m.e, vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        assert_eq!(m.a, vec![0.5, 0.5]);
    }

    #[test]
    fn triangle_mixing_by_hand() {
        let g = Graph::load_edge_list("a b\nb c\nc a", false, false).unwrap();
        let col = cat(vec![Some(0), Some(0), Some(1)], 2);
        let m = mixing_matrix(&g, &col, None).unwrap();
        assert!((m.e[0][0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((m.e[0][1] - 1.0 / 3.0).abs() < 1e-12);
        assert!((m.e[1][0] - 1.0 / 3.0).abs() < 1e-12);
        assert!(m.e[1][1].abs() < 1e-12);
        assert!((m.a[0] - 2.0 / 3.0).abs() < 1e-12);
        // r = (1/3 - 5/9) / (4/9) = -0.5
        assert!((global_assort_cat(&m).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn stationary_weights_match_unweighted() {
        let g = Graph::load_edge_list("a b\nb c\nc a\nc d\nd e", false, false).unwrap();
        let col = cat(vec![Some(0), Some(0), Some(1), Some(1), Some(0)], 2);
        let pi = stationary_distribution(&g).unwrap();
        let m0 = mixing_matrix(&g, &col, None).unwrap();
        let m1 = mixing_matrix(&g, &col, Some(&pi)).unwrap();
        for gidx in 0..2 {
            for h in 0..2 {
                assert!((m0.e[gidx][h] - m1.e[gidx][h]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monochromatic_cliques_fully_assortative() {
        let g = Graph::load_edge_list("a b\nb c\nc a\nd e\ne f\nf d", false, false).unwrap();
        let col = cat(
            vec![Some(0), Some(0), Some(0), Some(1), Some(1), Some(1)],
            2,
        );
        let m = mixing_matrix(&g, &col, None).unwrap();
        assert!((global_assort_cat(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k22_fully_disassortative() {
        let g = Graph::load_edge_list("a c\na d\nb c\nb d", false, false).unwrap();
        // first-appearance index order is a, c, d, b; sides are {a,b} / {c,d}
        let col = cat(vec![Some(0), Some(1), Some(1), Some(0)], 2);
        let m = mixing_matrix(&g, &col, None).unwrap();
        assert!((global_assort_cat(&m).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn r_min_values() {
        let balanced = MixingMatrix {
            e: vec![vec![0.25, 0.25], vec![0.25, 0.25]],
            a: vec![0.5, 0.5],
            b: vec![0.5, 0.5],
            observed_mass: 1.0,
            directed: false,
        };
        assert!((r_min(&balanced).unwrap() + 1.0).abs() < 1e-12);
        let skew = MixingMatrix {
            e: vec![vec![0.81, 0.09], vec![0.09, 0.01]],
            a: vec![0.9, 0.1],
            b: vec![0.9, 0.1],
            observed_mass: 1.0,
            directed: false,
        };
        assert!((r_min(&skew).unwrap() + 0.82 / 0.18).abs() < 1e-9);
        let degenerate = MixingMatrix {
            e: vec![vec![1.0]],
            a: vec![1.0],
            b: vec![1.0],
            observed_mass: 1.0,
            directed: false,
        };
        assert!(matches!(
            r_min(&degenerate),
            Err(AssortError::DegenerateAttribute(_))
        ));
    }

    #[test]
    fn local_with_stationary_equals_global() {
        let g = Graph::load_edge_list("a b\nb c\nc a\nc d\nd e\ne a", false, false).unwrap();
        let col = cat(vec![Some(0), Some(0), Some(1), Some(1), Some(0)], 2);
        let pi = stationary_distribution(&g).unwrap();
        let mix = mixing_matrix(&g, &col, None).unwrap();
        let rg = global_assort_cat(&mix).unwrap();
        for seed in 0..g.n_nodes() {
            let res = local_assort_cat(&g, &col, seed, &pi, &mix).unwrap();
            assert!((res.r.unwrap() - rg).abs() < 1e-12);
            assert!((res.z - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k33_local_always_minus_one() {
        let g = Graph::load_edge_list(
            "a x\na y\na z\nb x\nb y\nb z\nc x\nc y\nc z",
            false,
            false,
        )
        .unwrap();
        let col = cat(
            vec![Some(0), Some(1), Some(1), Some(1), Some(0), Some(0)],
            2,
        );
        let mix = mixing_matrix(&g, &col, None).unwrap();
        for seed in 0..6 {
            let res = local_assort_multiscale(&g, &col, seed, &WalkerConfig::default()).unwrap();
            assert!((res.r.unwrap() + 1.0).abs() < 1e-9, "seed {seed}");
            assert!((res.z - 1.0).abs() < 1e-9);
        }
        assert!((global_assort_cat(&mix).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_scalar_degree_anticorrelated() {
        let g = Graph::load_edge_list("h a\nh b\nh c", false, false).unwrap();
        let col = Column::Scalar {
            values: vec![Some(3.0), Some(1.0), Some(1.0), Some(1.0)],
        };
        assert!((global_assort_scalar(&g, &col).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_constant_degenerate() {
        let g = Graph::load_edge_list("a b\nb c", false, false).unwrap();
        let col = Column::Scalar {
            values: vec![Some(2.0); 3],
        };
        assert!(matches!(
            global_assort_scalar(&g, &col),
            Err(AssortError::DegenerateAttribute(_))
        ));
    }

    #[test]
    fn scalar_single_edge_local() {
        let g = Graph::load_edge_list("a b", false, false).unwrap();
        let col = Column::Scalar {
            values: vec![Some(1.0), Some(-1.0)],
        };
        let std = standardize_scalar(&g, &col).unwrap();
        assert!((std.x_tilde[0].unwrap() - 1.0).abs() < 1e-12);
        assert!((std.x_tilde[1].unwrap() + 1.0).abs() < 1e-12);
        let w = ppr(
            &g,
            0,
            &WalkerConfig {
                alpha: 0.3,
                ..Default::default()
            },
        )
        .unwrap();
        let res = local_assort_scalar(&g, 0, &w, &std).unwrap();
        assert!((res.r.unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn scalar_local_with_stationary_equals_global() {
        let g = Graph::load_edge_list("a b\nb c\nc a\nc d", false, false).unwrap();
        let col = Column::Scalar {
            values: vec![Some(0.5), Some(2.0), Some(-1.0), Some(3.0)],
        };
        let rg = global_assort_scalar(&g, &col).unwrap();
        let std = standardize_scalar(&g, &col).unwrap();
        let pi = stationary_distribution(&g).unwrap();
        for seed in 0..4 {
            let res = local_assort_scalar(&g, seed, &pi, &std).unwrap();
            assert!((res.r.unwrap() - rg).abs() < 1e-12);
        }
    }

    #[test]
    fn correlation_self_and_reversed() {
        let mk = |rs: &[f64]| -> Vec<LocalMixingResult> {
            rs.iter()
                .enumerate()
                .map(|(i, &r)| LocalMixingResult {
                    node: i,
                    r: Some(r),
                    z: 1.0,
                    kind: LocalKind::Multiscale,
                })
                .collect()
        };
        let a = mk(&[0.1, 0.2, 0.3]);
        let (p, f) = assort_correlation(&a, &a, true).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert_eq!(f, 0.0); // ties are not "greater"
        let b = mk(&[0.3, 0.2, 0.1]);
        let (p, f) = assort_correlation(&a, &b, true).unwrap();
        assert!((p + 1.0).abs() < 1e-12);
        assert!((f - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_too_few_nodes() {
        let a = vec![
            LocalMixingResult {
                node: 0,
                r: Some(0.1),
                z: 1.0,
                kind: LocalKind::Multiscale,
            },
            LocalMixingResult {
                node: 1,
                r: None,
                z: 0.0,
                kind: LocalKind::Multiscale,
            },
        ];
        assert!(matches!(
            assort_correlation(&a, &a, true),
            Err(AssortError::TooFewComparable { .. })
        ));
    }

    #[test]
    fn directed_symmetrized_matches_undirected() {
        let und = Graph::load_edge_list("a b\nb c\nc a\nc d", false, false).unwrap();
        let dir = Graph::load_edge_list(
            "a b\nb a\nb c\nc b\nc a\na c\nc d\nd c",
            true,
            false,
        )
        .unwrap();
        let col = cat(vec![Some(0), Some(0), Some(1), Some(1)], 2);
        let mu = mixing_matrix(&und, &col, None).unwrap();
        let md = mixing_matrix(&dir, &col, None).unwrap();
        assert!(
            (global_assort_cat(&mu).unwrap() - global_assort_cat(&md).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn empty_mixing_when_all_labels_missing() {
        let g = Graph::load_edge_list("a b", false, false).unwrap();
        let col = cat(vec![None, None], 2);
        assert!(matches!(
            mixing_matrix(&g, &col, None),
            Err(AssortError::EmptyMixing)
        ));
    }
}
