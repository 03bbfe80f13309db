//! Per-node attribute columns with explicit missing-value support.
//!
//! Attributes arrive as RFC-4180 CSV with a header row `node,col1,col2,...`.
//! Empty fields are missing. A column whose non-empty fields all parse as
//! numbers is inferred as scalar unless overridden.

use std::collections::HashMap;

use crate::error::{AssortError, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Categorical,
    Scalar,
}

/// One attribute column aligned to the graph's dense node index.
#[derive(Debug, Clone)]
pub enum Column {
    Categorical {
        /// Per-node category index in `[0, G)`, `None` = missing.
        values: Vec<Option<u32>>,
        /// Category-name dictionary, dense in first-appearance order.
        categories: Vec<String>,
    },
    Scalar {
        values: Vec<Option<f64>>,
    },
}

impl Column {
    pub fn kind(&self) -> ColumnKind {
        match self {
            Column::Categorical { .. } => ColumnKind::Categorical,
            Column::Scalar { .. } => ColumnKind::Scalar,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Column::Categorical { values, .. } => values.len(),
            Column::Scalar { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_missing(&self) -> usize {
        match self {
            Column::Categorical { values, .. } => values.iter().filter(|v| v.is_none()).count(),
            Column::Scalar { values } => values.iter().filter(|v| v.is_none()).count(),
        }
    }

    pub fn as_categorical(&self) -> Result<(&[Option<u32>], &[String])> {
        match self {
            Column::Categorical { values, categories } => Ok((values, categories)),
            _ => Err(AssortError::WrongColumnKind {
                expected: "categorical",
            }),
        }
    }

    pub fn as_scalar(&self) -> Result<&[Option<f64>]> {
        match self {
            Column::Scalar { values } => Ok(values),
            _ => Err(AssortError::WrongColumnKind { expected: "scalar" }),
        }
    }
}

/// Named attribute columns for one graph.
#[derive(Debug, Clone)]
pub struct AttributeTable {
    n_nodes: usize,
    columns: Vec<(String, Column)>,
}

impl AttributeTable {
    pub fn new(n_nodes: usize, columns: Vec<(String, Column)>) -> Result<Self> {
        for (name, col) in &columns {
            if col.len() != n_nodes {
                return Err(AssortError::AttributeFormat(format!(
                    "column `{name}` has length {} but graph has {n_nodes} nodes",
                    col.len()
                )));
            }
        }
        Ok(AttributeTable { n_nodes, columns })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// Parses attribute CSV and aligns it to the graph's node index. Nodes
/// absent from the file get missing in every column. `overrides` forces the
/// type of named columns; everything else is inferred (all-numeric => scalar).
pub fn load_attributes(
    text: &str,
    graph: &Graph,
    overrides: &HashMap<String, ColumnKind>,
) -> Result<AttributeTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| AssortError::AttributeFormat(e.to_string()))?
        .clone();
    if headers.is_empty() || headers.get(0).map(str::trim) != Some("node") {
        return Err(AssortError::AttributeFormat(
            "header must start with `node`".into(),
        ));
    }
    let names: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
    let n_cols = names.len();
    let n = graph.n_nodes();
    // raw string cells, None = missing
    let mut raw: Vec<Vec<Option<String>>> = vec![vec![None; n]; n_cols];
    for (recno, record) in reader.records().enumerate() {
        let line = recno + 2; // header is line 1
        let record = record.map_err(|e| AssortError::AttributeFormat(e.to_string()))?;
        if record.len() != n_cols + 1 {
            return Err(AssortError::RaggedRow {
                line,
                expected: n_cols + 1,
                got: record.len(),
            });
        }
        let id = record.get(0).unwrap().trim();
        let node = graph.node_index(id).ok_or_else(|| AssortError::UnknownNode {
            line,
            id: id.to_string(),
        })?;
        for c in 0..n_cols {
            let field = record.get(c + 1).unwrap().trim();
            if !field.is_empty() {
                raw[c][node] = Some(field.to_string());
            }
        }
    }
    let mut columns = Vec::with_capacity(n_cols);
    for (c, name) in names.into_iter().enumerate() {
        let kind = overrides.get(&name).copied().unwrap_or_else(|| {
            let all_numeric = raw[c]
                .iter()
                .flatten()
                .all(|s| s.parse::<f64>().is_ok());
            let any_value = raw[c].iter().any(|v| v.is_some());
            if all_numeric && any_value {
                ColumnKind::Scalar
            } else {
                ColumnKind::Categorical
            }
        });
        let col = match kind {
            ColumnKind::Scalar => {
                let mut values = Vec::with_capacity(n);
                for v in &raw[c] {
                    match v {
                        None => values.push(None),
                        Some(s) => {
                            let x = s.parse::<f64>().map_err(|_| {
                                AssortError::AttributeFormat(format!(
                                    "column `{name}`: `{s}` is not numeric"
                                ))
                            })?;
                            values.push(Some(x));
                        }
                    }
                }
                Column::Scalar { values }
            }
            ColumnKind::Categorical => {
                let mut dict: HashMap<&str, u32> = HashMap::new();
                let mut categories = Vec::new();
                let mut values = Vec::with_capacity(n);
                for v in &raw[c] {
                    match v {
                        None => values.push(None),
                        Some(s) => {
                            let idx = *dict.entry(s.as_str()).or_insert_with(|| {
                                categories.push(s.clone());
                                (categories.len() - 1) as u32
                            });
                            values.push(Some(idx));
                        }
                    }
                }
                Column::Categorical { values, categories }
            }
        };
        columns.push((name, col));
    }
    AttributeTable::new(n, columns)
}
