//! Degree-, label- and assortativity-preserving null model: double-edge-swap
//! MCMC over stub-labeled simple graphs with a binomial-likelihood Metropolis
//! filter that keeps the number of same-type edges near the observed
//! proportion.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::attr::Column;
use crate::error::{AssortError, Result};
use crate::graph::Graph;
use crate::histogram::WeightedHistogram;
use crate::mixing::{local_assort_all, Weighting};
use crate::walker::WalkerConfig;

#[derive(Debug, Clone)]
pub struct NullModelConfig {
    pub n_samples: usize,
    /// Proposals between emitted samples; defaults to `10 * m`.
    pub swaps_per_sample: Option<usize>,
    /// Proposals before the first sample; defaults to `100 * m`.
    pub burn_in: Option<usize>,
    /// Initial temperature of the annealing schedule.
    pub t0: f64,
    /// Floor temperature.
    pub t_min: f64,
    /// Geometric cooling factor applied per proposal.
    pub cooling: f64,
    pub rng_seed: u64,
}

impl Default for NullModelConfig {
    fn default() -> Self {
        NullModelConfig {
            n_samples: 100,
            swaps_per_sample: None,
            burn_in: None,
            t0: 1.0,
            t_min: 1e-3,
            cooling: 0.9999,
            rng_seed: 0,
        }
    }
}

impl NullModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_min <= self.t0) {
            return Err(AssortError::InvalidConfig(
                "need 0 < t_min <= t0".into(),
            ));
        }
        if !(self.cooling > 0.0 && self.cooling <= 1.0) {
            return Err(AssortError::InvalidConfig(
                "cooling must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// One rewired graph emitted by the sampler.
#[derive(Debug, Clone)]
pub struct NullSample {
    pub graph: Graph,
    /// Same-type edge count among edges with both endpoints labeled.
    pub m_in: usize,
    pub loglik: f64,
    /// Cumulative accepted swaps at emission time.
    pub accepted: u64,
    /// Cumulative proposals at emission time.
    pub proposed: u64,
}

/// Log binomial likelihood of observing `m_in` same-type edges out of `m`
/// under same-type probability `omega_in`, via log-gamma for stability.
/// Inconsistent boundary cases (e.g. `omega_in = 0` with `m_in > 0`) return
/// negative infinity; consistent boundaries return 0.
pub fn loglik_m_in(m_in: usize, m: usize, omega_in: f64) -> f64 {
    debug_assert!(m_in <= m);
    if omega_in <= 0.0 {
        return if m_in == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if omega_in >= 1.0 {
        return if m_in == m { 0.0 } else { f64::NEG_INFINITY };
    }
    ln_choose(m, m_in) + m_in as f64 * omega_in.ln() + (m - m_in) as f64 * (1.0 - omega_in).ln()
}

fn ln_choose(n: usize, k: usize) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Lanczos approximation (g = 7) of ln Gamma(x) for x > 0.
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // reflection
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// MCMC chain over degree-preserving rewirings. Iterate to draw samples.
#[derive(Debug)]
pub struct NullSampler {
    node_ids: Vec<String>,
    labels: Vec<Option<u32>>,
    edges: Vec<(u32, u32)>,
    edge_set: HashSet<(u32, u32)>,
    omega_in: f64,
    m_in: usize,
    m_lab: usize,
    loglik: f64,
    t: f64,
    t_min: f64,
    cooling: f64,
    swaps_per_sample: usize,
    remaining: usize,
    accepted: u64,
    proposed: u64,
    rng: ChaCha8Rng,
}

fn norm_edge(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Starts the chain: validates inputs, computes the target same-type edge
/// proportion from the source graph, and runs burn-in.
pub fn sample_null(graph: &Graph, column: &Column, config: &NullModelConfig) -> Result<NullSampler> {
    config.validate()?;
    if graph.is_directed() {
        return Err(AssortError::DirectedUnsupported(
            "the double-edge-swap null model operates on undirected graphs".into(),
        ));
    }
    let m = graph.n_edges();
    if m < 2 {
        return Err(AssortError::InvalidConfig(
            "need at least 2 edges to swap".into(),
        ));
    }
    let (values, _) = column.as_categorical()?;
    let mut incident_cats = HashSet::new();
    for (u, v) in graph.edges() {
        if let Some(c) = values[u as usize] {
            incident_cats.insert(c);
        }
        if let Some(c) = values[v as usize] {
            incident_cats.insert(c);
        }
    }
    if incident_cats.len() < 2 {
        return Err(AssortError::DegenerateAttribute(
            "fewer than two categories on edge-incident nodes; the assortativity constraint \
             is vacuous"
                .into(),
        ));
    }
    let edges: Vec<(u32, u32)> = graph
        .edges()
        .into_iter()
        .map(|(u, v)| norm_edge(u, v))
        .collect();
    let edge_set: HashSet<(u32, u32)> = edges.iter().copied().collect();
    let labels: Vec<Option<u32>> = values.to_vec();
    let mut m_in = 0usize;
    let mut m_lab = 0usize;
    for &(u, v) in &edges {
        if let (Some(a), Some(b)) = (labels[u as usize], labels[v as usize]) {
            m_lab += 1;
            if a == b {
                m_in += 1;
            }
        }
    }
    if m_lab == 0 {
        return Err(AssortError::EmptyMixing);
    }
    let omega_in = m_in as f64 / m_lab as f64;
    let loglik = loglik_m_in(m_in, m_lab, omega_in);
    let mut sampler = NullSampler {
        node_ids: graph.node_ids().to_vec(),
        labels,
        edges,
        edge_set,
        omega_in,
        m_in,
        m_lab,
        loglik,
        t: config.t0,
        t_min: config.t_min,
        cooling: config.cooling,
        swaps_per_sample: config.swaps_per_sample.unwrap_or(10 * m),
        remaining: config.n_samples,
        accepted: 0,
        proposed: 0,
        rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
    };
    let burn_in = config.burn_in.unwrap_or(100 * m);
    for _ in 0..burn_in {
        sampler.propose();
    }
    Ok(sampler)
}

impl NullSampler {
    pub fn omega_in(&self) -> f64 {
        self.omega_in
    }

    pub fn m_in(&self) -> usize {
        self.m_in
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    fn edge_stats(&self, e: (u32, u32)) -> (usize, usize) {
        match (self.labels[e.0 as usize], self.labels[e.1 as usize]) {
            (Some(a), Some(b)) => (1, usize::from(a == b)),
            _ => (0, 0),
        }
    }

    /// One proposal of the chain: pick two edges, pick one of the two
    /// rewirings, resample the current graph on self-loops/multi-edges,
    /// otherwise Metropolis-accept on the likelihood ratio. Counts as a step
    /// either way; the temperature cools per proposal.
    pub fn propose(&mut self) {
        self.proposed += 1;
        let t = self.t;
        self.t = (self.cooling * self.t).max(self.t_min);
        let m = self.edges.len();
        let i1 = self.rng.gen_range(0..m);
        let mut i2 = self.rng.gen_range(0..m - 1);
        if i2 >= i1 {
            i2 += 1;
        }
        let (a, b) = self.edges[i1];
        let (c, d) = self.edges[i2];
        let ((p, q), (r, s)) = if self.rng.gen::<bool>() {
            ((a, d), (c, b))
        } else {
            ((a, c), (b, d))
        };
        if p == q || r == s {
            return; // would create a self-loop
        }
        let new1 = norm_edge(p, q);
        let new2 = norm_edge(r, s);
        if new1 == new2 || self.edge_set.contains(&new1) || self.edge_set.contains(&new2) {
            return; // would create a multi-edge
        }
        let old1 = self.edges[i1];
        let old2 = self.edges[i2];
        let (lab_rm, in_rm) = {
            let (l1, s1) = self.edge_stats(old1);
            let (l2, s2) = self.edge_stats(old2);
            (l1 + l2, s1 + s2)
        };
        let (lab_add, in_add) = {
            let (l1, s1) = self.edge_stats(new1);
            let (l2, s2) = self.edge_stats(new2);
            (l1 + l2, s1 + s2)
        };
        let new_m_in = self.m_in - in_rm + in_add;
        let new_m_lab = self.m_lab - lab_rm + lab_add;
        let new_loglik = loglik_m_in(new_m_in, new_m_lab, self.omega_in);
        let accept = if new_loglik == f64::NEG_INFINITY {
            false
        } else {
            let delta = new_loglik - self.loglik;
            delta >= 0.0 || self.rng.gen::<f64>() < (delta / t).exp()
        };
        if accept {
            self.edge_set.remove(&old1);
            self.edge_set.remove(&old2);
            self.edge_set.insert(new1);
            self.edge_set.insert(new2);
            self.edges[i1] = new1;
            self.edges[i2] = new2;
            self.m_in = new_m_in;
            self.m_lab = new_m_lab;
            self.loglik = new_loglik;
            self.accepted += 1;
        }
    }

    fn build_graph(&self) -> Graph {
        Graph::from_indexed_edges(self.node_ids.clone(), &self.edges, false)
            .expect("swap chain preserves simplicity")
    }
}

impl Iterator for NullSampler {
    type Item = NullSample;

    fn next(&mut self) -> Option<NullSample> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        for _ in 0..self.swaps_per_sample {
            self.propose();
        }
        Some(NullSample {
            graph: self.build_graph(),
            m_in: self.m_in,
            loglik: self.loglik,
            accepted: self.accepted,
            proposed: self.proposed,
        })
    }
}

/// Run statistics of a pooled null-distribution computation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NullRunStats {
    pub n_samples: usize,
    pub acceptance_rate: f64,
    pub m_in_trace: Vec<usize>,
    pub note: Option<String>,
}

/// Pools the multiscale local assortativity over null samples into a
/// z-weighted histogram.
pub fn null_distribution(
    graph: &Graph,
    column: &Column,
    config: &NullModelConfig,
    walker_config: &WalkerConfig,
    n_bins: usize,
) -> Result<(WeightedHistogram, NullRunStats)> {
    if config.n_samples == 0 {
        return Ok((
            WeightedHistogram::from_weighted(&[], n_bins),
            NullRunStats {
                n_samples: 0,
                acceptance_rate: 0.0,
                m_in_trace: Vec::new(),
                note: Some("no samples requested; histogram is empty".into()),
            },
        ));
    }
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut m_in_trace = Vec::with_capacity(config.n_samples);
    let mut sampler = sample_null(graph, column, config)?;
    let mut count = 0;
    while let Some(sample) = sampler.next() {
        m_in_trace.push(sample.m_in);
        let locals = local_assort_all(&sample.graph, column, Weighting::Multiscale, walker_config)?;
        for res in locals {
            if let Some(r) = res.r {
                pooled.push((r, res.z));
            }
        }
        count += 1;
    }
    let stats = NullRunStats {
        n_samples: count,
        acceptance_rate: sampler.acceptance_rate(),
        m_in_trace,
        note: None,
    };
    Ok((WeightedHistogram::from_weighted(&pooled, n_bins), stats))
}
