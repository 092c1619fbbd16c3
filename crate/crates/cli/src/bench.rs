//! Benchmark harness: runs both search schemes on a batch of instances and
//! reports per-instance and aggregate ratios (enhanced over original) for
//! CPU time and for lower bounds computed. A ratio below 1.0 means the
//! enhanced scheme did less work.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use steiner_core::{Point, Scheme, SolveOptions, Solution};

use crate::instance::Instance;

/// Published reference ratios (CPU, topology) on random instances, indexed
/// by (dimension, point count).
const REFERENCE_RATIOS: [(usize, usize, f64, f64); 10] = [
    (2, 8, 0.7228, 0.7261),
    (2, 9, 0.7760, 0.7672),
    (2, 10, 0.7853, 0.7727),
    (2, 11, 0.7967, 0.7788),
    (2, 12, 0.7760, 0.7561),
    (3, 8, 0.8682, 0.8565),
    (3, 9, 0.8544, 0.8527),
    (3, 10, 0.8304, 0.8409),
    (3, 11, 0.8005, 0.8168),
    (3, 12, 0.7656, 0.7877),
];

/// Published reference counts (bounds original, bounds enhanced,
/// reorganizations) for the named corpus instances.
const REFERENCE_COUNTS: [(&str, u64, u64, u64); 5] = [
    ("paper-01", 14, 14, 1),
    ("paper-02", 14, 14, 0),
    ("paper-03", 546, 522, 54),
    ("paper-04", 11441, 11434, 493),
    ("paper-05", 146598, 145840, 7336),
];

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub dim: usize,
    pub length_original: f64,
    pub length_enhanced: f64,
    pub wall_time_original_s: f64,
    pub wall_time_enhanced_s: f64,
    pub lower_bounds_original: u64,
    pub lower_bounds_enhanced: u64,
    pub reorganizations: u64,
    /// Enhanced wall time over original wall time.
    pub cpu_ratio: f64,
    /// Enhanced lower-bound count over original; the per-topology work
    /// proxy. Absent when neither scheme computed a bound.
    pub topology_ratio: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct BenchSummary {
    pub instances: Vec<BenchRow>,
    pub mean_cpu_ratio: f64,
    /// Mean of the defined per-instance topology ratios.
    pub mean_topology_ratio: Option<f64>,
    pub seed: Option<u64>,
}

/// Draw `count` instances of `n` points uniformly from the cube with
/// corners at -1 and 1 in `dim` coordinates.
pub fn random_instances(n: usize, dim: usize, count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Uniform::new_inclusive(-1.0f64, 1.0);
    (0..count)
        .map(|k| {
            let points = (0..n)
                .map(|_| {
                    let coords: Vec<f64> = (0..dim).map(|_| unit.sample(&mut rng)).collect();
                    Point::new(coords).expect("samples are finite")
                })
                .collect();
            Instance {
                name: format!("random-{:03}", k + 1),
                dim,
                points,
            }
        })
        .collect()
}

fn solve_scheme(instance: &Instance, scheme: Scheme) -> Solution {
    let opts = SolveOptions {
        scheme,
        ..SolveOptions::default()
    };
    crate::solve_on_worker(instance.points.clone(), opts).expect("benchmark instances are valid")
}

/// Run both schemes over the batch and assemble the comparison.
pub fn run(instances: &[Instance], seed: Option<u64>) -> BenchSummary {
    let mut rows = Vec::with_capacity(instances.len());
    for inst in instances {
        let original = solve_scheme(inst, Scheme::Original);
        let enhanced = solve_scheme(inst, Scheme::Enhanced);
        let cpu_ratio = if original.stats.wall_time_s > 0.0 {
            enhanced.stats.wall_time_s / original.stats.wall_time_s
        } else {
            1.0
        };
        let topology_ratio = if original.stats.lower_bounds_computed > 0 {
            Some(
                enhanced.stats.lower_bounds_computed as f64
                    / original.stats.lower_bounds_computed as f64,
            )
        } else {
            None
        };
        rows.push(BenchRow {
            instance: inst.name.clone(),
            n: inst.points.len(),
            dim: inst.dim,
            length_original: original.length,
            length_enhanced: enhanced.length,
            wall_time_original_s: original.stats.wall_time_s,
            wall_time_enhanced_s: enhanced.stats.wall_time_s,
            lower_bounds_original: original.stats.lower_bounds_computed,
            lower_bounds_enhanced: enhanced.stats.lower_bounds_computed,
            reorganizations: enhanced.stats.reorganizations_taken,
            cpu_ratio,
            topology_ratio,
        });
    }
    let mean_cpu_ratio = rows.iter().map(|r| r.cpu_ratio).sum::<f64>() / rows.len().max(1) as f64;
    let defined: Vec<f64> = rows.iter().filter_map(|r| r.topology_ratio).collect();
    let mean_topology_ratio = if defined.is_empty() {
        None
    } else {
        Some(defined.iter().sum::<f64>() / defined.len() as f64)
    };
    BenchSummary {
        instances: rows,
        mean_cpu_ratio,
        mean_topology_ratio,
        seed,
    }
}

fn rat(r: Option<f64>) -> String {
    match r {
        Some(v) => format!("{v:.4}"),
        None => "-".to_string(),
    }
}

/// Render the comparison as a text table with the published reference
/// values beside anything they cover.
pub fn format_table(summary: &BenchSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<14} {:>3} {:>2} {:>14} {:>14} {:>9} {:>9} {:>8} {:>8} {:>7} {:>9} {:>9}\n",
        "instance",
        "N",
        "d",
        "len original",
        "len enhanced",
        "cpu orig",
        "cpu enh",
        "lb orig",
        "lb enh",
        "reorg",
        "cpu rat",
        "topo rat"
    ));
    for r in &summary.instances {
        out.push_str(&format!(
            "{:<14} {:>3} {:>2} {:>14.9} {:>14.9} {:>9.4} {:>9.4} {:>8} {:>8} {:>7} {:>9.4} {:>9}\n",
            r.instance,
            r.n,
            r.dim,
            r.length_original,
            r.length_enhanced,
            r.wall_time_original_s,
            r.wall_time_enhanced_s,
            r.lower_bounds_original,
            r.lower_bounds_enhanced,
            r.reorganizations,
            r.cpu_ratio,
            rat(r.topology_ratio),
        ));
        if let Some(&(_, bo, be, rg)) = REFERENCE_COUNTS.iter().find(|(n, ..)| *n == r.instance) {
            out.push_str(&format!(
                "{:<14} reference lower bounds {}/{}, reorganizations {}\n",
                "", bo, be, rg
            ));
        }
    }
    out.push_str(&format!(
        "\naggregate: mean cpu ratio {:.4}, mean topology ratio {}\n",
        summary.mean_cpu_ratio,
        rat(summary.mean_topology_ratio),
    ));
    let mut keys: Vec<(usize, usize)> = summary
        .instances
        .iter()
        .map(|r| (r.dim, r.n))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (dim, n) in keys {
        if let Some(&(_, _, cpu, topo)) = REFERENCE_RATIOS
            .iter()
            .find(|&&(d, m, _, _)| d == dim && m == n)
        {
            out.push_str(&format!(
                "reference (random, d={dim}, N={n}): cpu ratio {cpu:.4}, topology ratio {topo:.4}\n"
            ));
        }
    }
    out
}
