//! Sparse graph representation, edge-list parsing and basic derived
//! quantities (degrees, weakly connected components, stationary
//! distribution).
//!
//! Graphs are simple (no self-loops, no parallel edges) and immutable after
//! construction. Node ids are arbitrary strings externally and dense `usize`
//! indices internally.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{AssortError, Result};

/// Immutable simple graph with adjacency stored in both orientations for
/// directed graphs.
#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>, // empty when undirected
    n_edges: usize,
    component_id: Vec<u32>,
    n_components: usize,
}

impl Graph {
    /// Builds a graph from dense-index edges. `node_ids[i]` is the external
    /// name of node `i`. Rejects self-loops and duplicates.
    pub fn from_indexed_edges(
        node_ids: Vec<String>,
        edges: &[(u32, u32)],
        directed: bool,
    ) -> Result<Self> {
        let n = node_ids.len();
        let mut index = HashMap::with_capacity(n);
        for (i, id) in node_ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(AssortError::InvalidConfig(format!(
                    "duplicate node id `{id}`"
                )));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = if directed { vec![Vec::new(); n] } else { Vec::new() };
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (line, &(u, v)) in edges.iter().enumerate() {
            let line = line + 1;
            if u as usize >= n || v as usize >= n {
                return Err(AssortError::InvalidNode(u.max(v) as usize));
            }
            if u == v {
                return Err(AssortError::SelfLoop { line });
            }
            let key = if directed || u < v { (u, v) } else { (v, u) };
            if !seen.insert(key) {
                return Err(AssortError::DuplicateEdge { line });
            }
            out_adj[u as usize].push(v);
            if directed {
                in_adj[v as usize].push(u);
            } else {
                out_adj[v as usize].push(u);
            }
        }
        let (component_id, n_components) = weak_components(n, &out_adj, &in_adj, directed);
        Ok(Graph {
            directed,
            node_ids,
            index,
            out_adj,
            in_adj,
            n_edges: edges.len(),
            component_id,
            n_components,
        })
    }

    /// Parses whitespace-separated edge-list text. Lines starting with `#`
    /// and blank lines are ignored. In strict mode (`lenient = false`)
    /// self-loops and duplicate edges are rejected with their line number;
    /// in lenient mode they are dropped.
    pub fn load_edge_list(text: &str, directed: bool, lenient: bool) -> Result<Self> {
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut node_ids: Vec<String> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut it = trimmed.split_whitespace();
            let (a, b) = match (it.next(), it.next()) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(AssortError::ParseEdge {
                        line,
                        msg: "expected two node ids".into(),
                    })
                }
            };
            if it.next().is_some() {
                return Err(AssortError::ParseEdge {
                    line,
                    msg: "expected exactly two fields".into(),
                });
            }
            let mut intern = |id: &str| -> u32 {
                *index.entry(id.to_string()).or_insert_with(|| {
                    node_ids.push(id.to_string());
                    (node_ids.len() - 1) as u32
                })
            };
            let u = intern(a);
            let v = intern(b);
            if u == v {
                if lenient {
                    continue;
                }
                return Err(AssortError::SelfLoop { line });
            }
            let key = if directed || u < v { (u, v) } else { (v, u) };
            if !seen.insert(key) {
                if lenient {
                    continue;
                }
                return Err(AssortError::DuplicateEdge { line });
            }
            edges.push((u, v));
        }
        Self::from_indexed_edges(node_ids, &edges, directed)
    }

    pub fn n_nodes(&self) -> usize {
        self.node_ids.len()
    }

    /// Number of undirected edges, or directed arcs.
    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Degree for undirected graphs, out-degree for directed.
    pub fn out_degree(&self, i: usize) -> usize {
        self.out_adj[i].len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        if self.directed {
            self.in_adj[i].len()
        } else {
            self.out_adj[i].len()
        }
    }

    pub fn out_neighbors(&self, i: usize) -> &[u32] {
        &self.out_adj[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[u32] {
        if self.directed {
            &self.in_adj[i]
        } else {
            &self.out_adj[i]
        }
    }

    pub fn node_id(&self, i: usize) -> &str {
        &self.node_ids[i]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Weakly connected component label of node `i`.
    pub fn component(&self, i: usize) -> u32 {
        self.component_id[i]
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.component_id[i] == self.component_id[j]
    }

    /// Iterates edges as index pairs (one entry per undirected edge / arc).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n_edges);
        for u in 0..self.n_nodes() {
            for &v in &self.out_adj[u] {
                if self.directed || (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Serializes the graph back to edge-list text.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(
                s,
                "{} {}",
                self.node_ids[u as usize], self.node_ids[v as usize]
            );
        }
        s
    }
}

fn weak_components(
    n: usize,
    out_adj: &[Vec<u32>],
    in_adj: &[Vec<u32>],
    directed: bool,
) -> (Vec<u32>, usize) {
    let mut comp = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..n {
        if comp[start] != u32::MAX {
            continue;
        }
        comp[start] = next;
        stack.push(start);
        while let Some(u) = stack.pop() {
            let mut visit = |v: u32| {
                if comp[v as usize] == u32::MAX {
                    comp[v as usize] = next;
                    stack.push(v as usize);
                }
            };
            for &v in &out_adj[u] {
                visit(v);
            }
            if directed {
                for &v in &in_adj[u] {
                    visit(v);
                }
            }
        }
        next += 1;
    }
    (comp, next as usize)
}

/// Kind of node-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    Stationary,
    Ppr { alpha: f64 },
    Multiscale,
}

/// Convergence diagnostics attached to computed weight vectors.
#[derive(Debug, Clone, Copy, Default)]
pub struct WalkDiagnostics {
    pub iterations: usize,
    /// True when the multiscale series hit its truncation cap.
    pub truncated: bool,
    /// First-omitted-term bound on the truncation error (L1).
    pub residual: f64,
}

/// A probability distribution over nodes: the stationary distribution, a
/// personalized-PageRank vector, or the multiscale weighting.
#[derive(Debug, Clone)]
pub struct WeightVector {
    pub weights: Vec<f64>,
    pub seed: Option<usize>,
    pub kind: WeightKind,
    pub diagnostics: WalkDiagnostics,
}

impl WeightVector {
    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Degree-proportional stationary distribution `k_i / 2m` of the simple
/// random walk. Undirected graphs only.
pub fn stationary_distribution(graph: &Graph) -> Result<WeightVector> {
    if graph.is_directed() {
        return Err(AssortError::DirectedUnsupported(
            "stationary distribution is only defined here for undirected graphs".into(),
        ));
    }
    if graph.n_edges() == 0 {
        return Err(AssortError::InvalidConfig("graph has no edges".into()));
    }
    let two_m = (2 * graph.n_edges()) as f64;
    let weights = (0..graph.n_nodes())
        .map(|i| graph.out_degree(i) as f64 / two_m)
        .collect();
    Ok(WeightVector {
        weights,
        seed: None,
        kind: WeightKind::Stationary,
        diagnostics: WalkDiagnostics::default(),
    })
}
