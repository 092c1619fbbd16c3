//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use steiner_core::{Solution, SolveOptions};

/// One solve, flattened for harness consumption. Serializes losslessly:
/// `serde_json::from_str(&serde_json::to_string(&r))` reproduces the report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub instance: String,
    pub scheme: String,
    pub length: f64,
    /// Dash-joined topology vector; empty for three terminals.
    pub topology: String,
    pub steiner_points: Vec<Vec<f64>>,
    /// Node id pairs of zero-length edges in the winning tree.
    pub degenerate_pairs: Vec<[usize; 2]>,
    pub options: OptionsEcho,
    pub stats: StatsReport,
}

/// The configuration the run actually used.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OptionsEcho {
    pub scheme: String,
    pub lower_bound_prune: bool,
    pub twin_prune: bool,
    pub error_figure_prune: bool,
    pub conv_eps: f64,
    pub collision_eps: f64,
    pub max_iters: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StatsReport {
    pub topologies_built: u64,
    pub optimizations: u64,
    pub lower_bounds_computed: u64,
    pub reorganizations_taken: u64,
    pub nodes_cut: u64,
    pub steps_to_first_leaf: u64,
    pub jacobi_fallbacks: u64,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(instance: &str, solution: &Solution, opts: &SolveOptions) -> Self {
        let s = &solution.stats;
        RunReport {
            instance: instance.to_string(),
            scheme: opts.scheme.to_string(),
            length: solution.length,
            topology: solution.topology.to_string(),
            steiner_points: solution
                .steiner_points
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
            degenerate_pairs: solution
                .degenerate_pairs
                .iter()
                .map(|&(a, b)| [a, b])
                .collect(),
            options: OptionsEcho {
                scheme: opts.scheme.to_string(),
                lower_bound_prune: opts.lower_bound_prune,
                twin_prune: opts.twin_prune,
                error_figure_prune: opts.error_figure_prune,
                conv_eps: opts.optimizer.conv_eps,
                collision_eps: opts.optimizer.collision_eps,
                max_iters: opts.optimizer.max_iters,
            },
            stats: StatsReport {
                topologies_built: s.topologies_built,
                optimizations: s.optimizations,
                lower_bounds_computed: s.lower_bounds_computed,
                reorganizations_taken: s.reorganizations_taken,
                nodes_cut: s.nodes_cut,
                steps_to_first_leaf: s.steps_to_first_leaf,
                jacobi_fallbacks: s.jacobi_fallbacks,
                wall_time_s: s.wall_time_s,
            },
        }
    }
}
