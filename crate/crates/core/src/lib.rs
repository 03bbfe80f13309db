//! Multiscale assortativity of node attributes on networks.
//!
//! The global assortativity coefficient summarizes how often edges join
//! nodes of the same type. This crate localizes that measure: per-node
//! assortativity is computed by reweighting edges with a random walk that
//! restarts at the node of interest, either at a fixed restart parameter or
//! averaged over all of them (the multiscale weighting). It also ships a
//! degree- and assortativity-preserving null-model sampler and planted
//! block-mixing generators for validation.
//!
//! Per-seed computations run in parallel with rayon when the `parallel`
//! feature (default) is enabled; disabling it yields a dependency-free
//! sequential build with identical results.

pub mod attr;
pub mod error;
pub mod graph;
pub mod histogram;
pub mod mixing;
pub mod nullmodel;
pub mod par;
pub mod synthgen;
pub mod walker;

pub use attr::{load_attributes, AttributeTable, Column, ColumnKind};
pub use error::{AssortError, Result};
pub use graph::{stationary_distribution, Graph, WeightKind, WeightVector};
pub use histogram::{Summary, WeightedHistogram};
pub use mixing::{
    assort_correlation, global_assort_cat, global_assort_scalar, local_assort_all,
    local_assort_all_sequential, local_assort_cat, local_assort_multiscale, local_assort_scalar,
    mixing_matrix, r_min, standardize_scalar, LocalKind, LocalMixingResult, MixingMatrix,
    ScalarStandardization, Weighting,
};
pub use nullmodel::{
    loglik_m_in, null_distribution, sample_null, NullModelConfig, NullRunStats, NullSample,
    NullSampler,
};
pub use synthgen::{generate_block_network, list_presets, preset_by_name, BlockSpec, Preset};
pub use walker::{multiscale_weights, ppr, simulate_walk_autocorrelation, WalkerConfig};
