//! Command line front end for the exact Steiner tree solver: solve single
//! instances, enumerate full topologies, benchmark the two search schemes
//! against each other, and inspect the built-in instance corpus.

mod bench;
mod instance;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use steiner_core::{
    count_full_topologies, enumerate_all, solve, EngineError, OptimizeOptions, Point, Scheme,
    Solution, SolveOptions,
};

use instance::Instance;

/// Deep topologies recurse one stack frame per tree node, so searches run
/// on a worker thread with room to spare.
const WORKER_STACK_BYTES: usize = 64 * 1024 * 1024;

#[derive(Debug, thiserror::Error)]
enum CliError {
    /// Bad input (file, flags, instance shape): exit code 2.
    #[error("{0}")]
    Input(String),
    /// Failure after a valid run started (output files): exit code 1.
    #[error("{0}")]
    Runtime(String),
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "steiner",
    version,
    about = "Exact Euclidean Steiner minimal trees in any dimension"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance to proven optimality.
    Solve(SolveArgs),
    /// Optimize every full topology of a small instance, or just count them.
    Enumerate(EnumerateArgs),
    /// Run both schemes over a batch of instances and compare the work done.
    Bench(BenchArgs),
    /// List the built-in corpus or dump one instance as an input file.
    Instances(InstancesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Original,
    Enhanced,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Original => Scheme::Original,
            SchemeArg::Enhanced => Scheme::Enhanced,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file path, or builtin:NAME for a built-in instance.
    input: String,
    /// Search scheme.
    #[arg(long, value_enum, default_value_t = SchemeArg::Enhanced)]
    scheme: SchemeArg,
    /// Disable lower-bound pruning of fresh topologies.
    #[arg(long)]
    no_lower_bound: bool,
    /// Also cut crossing sibling topologies of pruned trees (plane only).
    #[arg(long)]
    twin_prune: bool,
    /// Diagnostic: screen topologies by current length minus angle error.
    /// Unsound; can change the reported optimum depending on input order.
    #[arg(long)]
    error_figure_prune: bool,
    /// Collision threshold, relative to the bounding box diameter.
    #[arg(long, value_name = "R")]
    collision_eps: Option<f64>,
    /// Convergence threshold on the relative error figure.
    #[arg(long, value_name = "R")]
    conv_eps: Option<f64>,
    /// Iteration budget per topology optimization.
    #[arg(long, value_name = "K")]
    max_iters: Option<usize>,
    /// Also write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Also write a drawing of the solution to this path.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Instance file path, or builtin:NAME for a built-in instance.
    input: String,
    /// Print only the number of full topologies, without optimizing them.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files (every regular file is one instance).
    dir: Option<PathBuf>,
    /// Generate COUNT random instances of N points in D dimensions,
    /// drawn uniformly from the cube with corners at -1 and 1.
    #[arg(long, num_args = 3, value_names = ["N", "D", "COUNT"], conflicts_with = "dir")]
    random: Option<Vec<usize>>,
    /// Seed for random instance generation.
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Also write the comparison as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct InstancesArgs {
    /// List the built-in instance names (the default action).
    #[arg(long)]
    list: bool,
    /// Print one built-in instance in the input file format.
    #[arg(long, value_name = "NAME", conflicts_with = "list")]
    dump: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve(args) => run_solve(args),
        Cmd::Enumerate(args) => run_enumerate(args),
        Cmd::Bench(args) => run_bench(args),
        Cmd::Instances(args) => run_instances(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Runtime(_) => ExitCode::from(1),
            }
        }
    }
}

/// Resolve an input argument: an explicit builtin:NAME reference, an
/// existing file path, or a bare built-in name.
fn load_instance(arg: &str) -> Result<Instance, CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return instance::builtin(name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown built-in instance {name:?}; see `steiner instances --list`"
            ))
        });
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        return instance::parse_instance(&name, &text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())));
    }
    if let Some(found) = instance::builtin(arg) {
        return Ok(found);
    }
    Err(CliError::Input(format!(
        "no such file or built-in instance: {arg}"
    )))
}

/// Run one search on a thread with a deep stack; the exploration recursion
/// holds one frame per node of the topology tree.
pub(crate) fn solve_on_worker(
    points: Vec<Point>,
    opts: SolveOptions,
) -> Result<Solution, EngineError> {
    std::thread::Builder::new()
        .name("steiner-solve".into())
        .stack_size(WORKER_STACK_BYTES)
        .spawn(move || solve(&points, &opts))
        .expect("worker thread spawns")
        .join()
        .expect("search does not panic")
}

fn optimizer_options(
    conv_eps: Option<f64>,
    collision_eps: Option<f64>,
    max_iters: Option<usize>,
) -> OptimizeOptions {
    let mut o = OptimizeOptions::default();
    if let Some(v) = conv_eps {
        o.conv_eps = v;
    }
    if let Some(v) = collision_eps {
        o.collision_eps = v;
    }
    if let Some(v) = max_iters {
        o.max_iters = v;
    }
    o
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.input)?;
    let opts = SolveOptions {
        scheme: args.scheme.into(),
        optimizer: optimizer_options(args.conv_eps, args.collision_eps, args.max_iters),
        lower_bound_prune: !args.no_lower_bound,
        twin_prune: args.twin_prune,
        error_figure_prune: args.error_figure_prune,
    };
    let solution = solve_on_worker(inst.points.clone(), opts.clone())?;
    print!("{}", format_solution(&inst, &solution));
    if let Some(path) = &args.json {
        let rep = report::RunReport::new(&inst.name, &solution, &opts);
        let body = serde_json::to_string_pretty(&rep)
            .map_err(|e| CliError::Runtime(format!("serialize report: {e}")))?;
        std::fs::write(path, body + "\n")
            .map_err(|e| CliError::Runtime(format!("write {}: {e}", path.display())))?;
    }
    if let Some(path) = &args.svg {
        let body = svg::render_svg(&inst, &solution);
        std::fs::write(path, body)
            .map_err(|e| CliError::Runtime(format!("write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn format_solution(inst: &Instance, s: &Solution) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "instance {} ({} points, d={})\n",
        inst.name,
        inst.points.len(),
        inst.dim
    ));
    out.push_str(&format!("length   {:.12}\n", s.length));
    let topo = s.topology.to_string();
    if topo.is_empty() {
        out.push_str("topology (three-terminal star)\n");
    } else {
        out.push_str(&format!("topology {topo}\n"));
    }
    for (i, p) in s.steiner_points.iter().enumerate() {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c:.12}")).collect();
        out.push_str(&format!("steiner {:>2}  {}\n", i, row.join(" ")));
    }
    if !s.degenerate_pairs.is_empty() {
        let pairs: Vec<String> = s
            .degenerate_pairs
            .iter()
            .map(|&(a, b)| format!("{a}-{b}"))
            .collect();
        out.push_str(&format!(
            "degenerate: {} zero-length edge(s) between nodes {}\n",
            pairs.len(),
            pairs.join(", ")
        ));
    }
    let st = &s.stats;
    out.push_str(&format!(
        "stats    topologies built {}, optimizations {}, lower bounds {}, \
         reorganizations {}, nodes cut {}, steps to first leaf {}, \
         stalled restarts {}\n",
        st.topologies_built,
        st.optimizations,
        st.lower_bounds_computed,
        st.reorganizations_taken,
        st.nodes_cut,
        st.steps_to_first_leaf,
        st.jacobi_fallbacks,
    ));
    out.push_str(&format!("time     {:.3}s\n", st.wall_time_s));
    out
}

fn run_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.input)?;
    if args.count_only {
        println!("{}", count_full_topologies(inst.points.len()));
        return Ok(());
    }
    let points = inst.points.clone();
    let report = std::thread::Builder::new()
        .stack_size(WORKER_STACK_BYTES)
        .spawn(move || enumerate_all(&points, &OptimizeOptions::default()))
        .expect("worker thread spawns")
        .join()
        .expect("enumeration does not panic")?;
    println!(
        "instance {} ({} points, d={})",
        inst.name,
        inst.points.len(),
        inst.dim
    );
    println!("full topologies {}", report.leaves);
    println!("minimum length  {:.12}", report.min_length);
    let topo = report.min_topology.to_string();
    if topo.is_empty() {
        println!("minimum topology (three-terminal star)");
    } else {
        println!("minimum topology {topo}");
    }
    println!("time {:.3}s", report.stats.wall_time_s);
    Ok(())
}

fn instances_from_dir(dir: &Path) -> Result<Vec<Instance>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!(
            "no instance files in {}",
            dir.display()
        )));
    }
    files
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string());
            instance::parse_instance(&name, &text)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        })
        .collect()
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    let (batch, seed) = match (&args.dir, &args.random) {
        (Some(dir), None) => (instances_from_dir(dir)?, None),
        (None, Some(shape)) => {
            let (n, d, count) = (shape[0], shape[1], shape[2]);
            if n < 3 || d < 2 || count == 0 {
                return Err(CliError::Input(
                    "--random needs N >= 3, D >= 2, COUNT >= 1".to_string(),
                ));
            }
            (
                bench::random_instances(n, d, count, args.seed),
                Some(args.seed),
            )
        }
        _ => {
            return Err(CliError::Input(
                "give an instance directory or --random N D COUNT".to_string(),
            ))
        }
    };
    let summary = bench::run(&batch, seed);
    print!("{}", bench::format_table(&summary));
    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&summary)
            .map_err(|e| CliError::Runtime(format!("serialize summary: {e}")))?;
        std::fs::write(path, body + "\n")
            .map_err(|e| CliError::Runtime(format!("write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_instances(args: InstancesArgs) -> Result<(), CliError> {
    if let Some(name) = &args.dump {
        let inst = instance::builtin(name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown built-in instance {name:?}; see `steiner instances --list`"
            ))
        })?;
        print!("{}", instance::print_instance(&inst));
        return Ok(());
    }
    for inst in instance::builtin_instances() {
        println!(
            "{:<20} {:>2} points  d={}",
            inst.name,
            inst.points.len(),
            inst.dim
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_references_resolve_with_and_without_prefix() {
        assert_eq!(load_instance("builtin:paper-02").unwrap().dim, 4);
        assert_eq!(load_instance("paper-02").unwrap().points.len(), 5);
        assert!(matches!(
            load_instance("builtin:nope"),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            load_instance("no/such/file.txt"),
            Err(CliError::Input(_))
        ));
    }

    #[test]
    fn files_override_builtin_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tri.txt");
        std::fs::write(&path, "# demo\n0 0\n1 0\n0 1\n").unwrap();
        let inst = load_instance(path.to_str().unwrap()).unwrap();
        assert_eq!(inst.name, "tri");
        assert_eq!(inst.points.len(), 3);
    }

    #[test]
    fn solution_summary_reads_well() {
        let inst = load_instance("paper-02").unwrap();
        let solution = solve_on_worker(inst.points.clone(), SolveOptions::default()).unwrap();
        let text = format_solution(&inst, &solution);
        assert!(text.contains("instance paper-02 (5 points, d=4)"));
        assert!(text.contains("length   8.86712"));
        assert!(text.contains("topology "));
        assert!(text.contains("steiner  0"));
        assert!(text.contains("stats    topologies built"));
    }

    #[test]
    fn cli_grammar_parses_the_documented_forms() {
        Cli::try_parse_from(["steiner", "solve", "builtin:paper-01", "--scheme", "original"])
            .unwrap();
        Cli::try_parse_from([
            "steiner",
            "solve",
            "in.txt",
            "--no-lower-bound",
            "--twin-prune",
            "--error-figure-prune",
            "--collision-eps",
            "1e-5",
            "--conv-eps",
            "1e-12",
            "--max-iters",
            "500",
            "--json",
            "out.json",
            "--svg",
            "out.svg",
        ])
        .unwrap();
        Cli::try_parse_from(["steiner", "enumerate", "builtin:paper-01", "--count-only"]).unwrap();
        Cli::try_parse_from(["steiner", "bench", "--random", "8", "2", "20", "--seed", "7"])
            .unwrap();
        Cli::try_parse_from(["steiner", "bench", "some-dir"]).unwrap();
        Cli::try_parse_from(["steiner", "instances", "--dump", "paper-03"]).unwrap();
        assert!(Cli::try_parse_from(["steiner", "solve", "x", "--scheme", "bogus"]).is_err());
        assert!(
            Cli::try_parse_from(["steiner", "bench", "dir", "--random", "8", "2", "20"]).is_err()
        );
    }
}
