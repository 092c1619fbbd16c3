//! Exact solver for the Euclidean Steiner minimal tree problem in d-space.

pub mod bounds;
pub mod engine;
pub mod geometry;
pub mod optimizer;
pub mod topology;

pub use bounds::lower_bound;
pub use engine::{
    enumerate_all, solve, EngineError, EnumerationReport, Scheme, SearchStats, SolveOptions,
    Solution, ENUMERATION_CAP,
};

pub use geometry::{
    equilateral_point, fermat_point, segments_intersect_2d, EquilateralPoint, GeometryError, Point,
};
pub use optimizer::{
    detect_collision, error_figure, iterate_once, optimize, optimize_suppressed, optimize_traced,
    tree_length, OptimizeOptions, OptimizeOutcome, Optimizer, OutcomeKind,
};
pub use topology::{
    build_tree, count_full_topologies, root_tree, NodeId, Reorganization, TopologyError,
    TopologyTree, TopologyVector, Triplet,
};
