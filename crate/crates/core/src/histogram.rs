//! Weighted histograms and summary statistics for distributions of local
//! assortativity values.

use serde::Serialize;

/// Weighted mean, standard deviation and percentiles {10, 25, 50, 75, 90}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub percentiles: [f64; 5],
}

pub const PERCENTILE_LEVELS: [f64; 5] = [0.10, 0.25, 0.50, 0.75, 0.90];

/// Histogram of z-weighted values; bin masses sum to 1.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedHistogram {
    /// `n_bins + 1` monotone edges; empty when no weighted data was supplied.
    pub bin_edges: Vec<f64>,
    pub mass: Vec<f64>,
    pub summary: Option<Summary>,
    /// Total weight pooled into the histogram.
    pub total_weight: f64,
}

impl WeightedHistogram {
    /// Builds a histogram from `(value, weight)` pairs. Zero-weight entries
    /// drop out. The default range is [-1, 1] clamped to the data range;
    /// out-of-range values land in the boundary bins.
    pub fn from_weighted(values: &[(f64, f64)], n_bins: usize) -> Self {
        let data: Vec<(f64, f64)> = values
            .iter()
            .copied()
            .filter(|&(v, w)| w > 0.0 && v.is_finite())
            .collect();
        let total_weight: f64 = data.iter().map(|p| p.1).sum();
        if data.is_empty() || total_weight <= 0.0 || n_bins == 0 {
            return WeightedHistogram {
                bin_edges: Vec::new(),
                mass: Vec::new(),
                summary: None,
                total_weight: 0.0,
            };
        }
        let data_min = data.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let data_max = data.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let mut lo = (-1.0f64).max(data_min);
        let mut hi = 1.0f64.min(data_max);
        if !(lo < hi) {
            // constant data or data entirely outside [-1, 1]
            lo = data_min - 0.5;
            hi = data_max + 0.5;
        }
        let width = (hi - lo) / n_bins as f64;
        let bin_edges: Vec<f64> = (0..=n_bins).map(|b| lo + b as f64 * width).collect();
        let mut mass = vec![0.0; n_bins];
        for &(v, w) in &data {
            let mut b = ((v - lo) / width).floor() as i64;
            b = b.clamp(0, n_bins as i64 - 1);
            mass[b as usize] += w / total_weight;
        }
        let mean = data.iter().map(|&(v, w)| v * w).sum::<f64>() / total_weight;
        let var = data
            .iter()
            .map(|&(v, w)| w * (v - mean) * (v - mean))
            .sum::<f64>()
            / total_weight;
        let percentiles = weighted_percentiles(&data, &PERCENTILE_LEVELS);
        WeightedHistogram {
            bin_edges,
            mass,
            summary: Some(Summary {
                mean,
                std: var.sqrt(),
                percentiles,
            }),
            total_weight,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }
}

/// Weighted percentiles by cumulative mass over the sorted values.
fn weighted_percentiles(data: &[(f64, f64)], levels: &[f64; 5]) -> [f64; 5] {
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let total: f64 = sorted.iter().map(|p| p.1).sum();
    let mut out = [0.0; 5];
    for (idx, &q) in levels.iter().enumerate() {
        let target = q * total;
        let mut acc = 0.0;
        let mut val = sorted.last().unwrap().0;
        for &(v, w) in &sorted {
            acc += w;
            if acc >= target {
                val = v;
                break;
            }
        }
        out[idx] = val;
    }
    out
}
