use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddwalk::decomposition::{decompose_with, DecompositionConfig};
use oddwalk::edgelist::{parse_edge_list, write_edge_list};
use oddwalk::exact::{
    distance_to_bipartite_exact_with_limit, packing_lower_bound, EXACT_DISTANCE_LIMIT,
};
use oddwalk::experiment::{run_experiment, ExperimentConfig, Family};
use oddwalk::generators;
use oddwalk::harvest::{degree_prune, harvest_odd_cycles_with};
use oddwalk::reduction::{trace_reduction, ReductionConfig};
use oddwalk::tester::{
    bipartiteness_explorer, default_f, default_g, estimate_detection_probability, trial_rng,
};
use oddwalk::{Error, Graph, OracleHandle};

#[derive(Parser)]
#[command(
    name = "oddwalk",
    version,
    about = "Random-walk bipartiteness testing for planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as an edge list
    Gen(GenArgs),
    /// Run the bipartiteness explorer once; exit 1 on reject
    Test(TestArgs),
    /// Estimate single-walk detection probability
    Estimate(EstimateArgs),
    /// Harvest short edge-disjoint odd cycles
    Harvest(HarvestArgs),
    /// Low-diameter decomposition
    Decompose(DecomposeArgs),
    /// Harvest, prune, and reduce the cycles to self-loops; prints a CSV audit
    Reduce(ReduceArgs),
    /// Exact distance to bipartiteness
    Distance(DistanceArgs),
    /// Detection probability across instance sizes
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    EvenCycle,
    Cycle,
    Complete,
    Path,
    Petersen,
    Grid,
    TriangleChain,
    DisjointTriangles,
    ParallelCycles,
    ExpanderTriangles,
    RandomPlanar,
}

#[derive(Args)]
struct FamilyParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, default_value_t = 2)]
    hubs: usize,
    #[arg(long)]
    paths: Option<usize>,
    #[arg(long, default_value_t = 1)]
    path_len: usize,
    #[arg(long, default_value_t = 12)]
    degree: usize,
    #[arg(long, default_value_t = 5)]
    girth: usize,
    #[arg(long, default_value_t = 0.7)]
    keep: f64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: FamilyName,
    #[command(flatten)]
    params: FamilyParams,
    /// Apply the degree-3 splitting transform
    #[arg(long)]
    split: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    /// Walk length; defaults to 8 * ceil(1/eps)^2
    #[arg(long)]
    t: Option<usize>,
    /// Number of walks; defaults to ceil(64/eps)
    #[arg(long)]
    f: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 8)]
    t: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct HarvestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 54.0)]
    c_diameter: f64,
    #[arg(long, default_value_t = 16)]
    retries: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(long, default_value_t = 54.0)]
    c_diameter: f64,
    #[arg(long, default_value_t = 16)]
    retries: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    /// Random draws of the thinning rule per main step
    #[arg(long, default_value_t = 64)]
    retries: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    input: PathBuf,
    /// Largest vertex count enumerated exactly
    #[arg(long, default_value_t = EXACT_DISTANCE_LIMIT)]
    limit: usize,
    /// Print the greedy odd-cycle packing lower bound instead
    #[arg(long)]
    packing: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[command(flatten)]
    params: FamilyParams,
    /// Comma-separated sizes
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 8)]
    t: usize,
    #[arg(long)]
    f: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Record wall-clock time per row
    #[arg(long)]
    timing: bool,
    /// Output prefix; writes <out>.csv and <out>.json
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn load(path: &Path) -> Result<Graph, Error> {
    parse_edge_list(&fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Error> {
    v.ok_or_else(|| Error::Domain(format!("this family needs --{flag}")))
}

fn generate(family: FamilyName, p: &FamilyParams, seed: u64) -> Result<Graph, Error> {
    let mut rng = trial_rng(seed, 0);
    match family {
        FamilyName::EvenCycle => generators::even_cycle(need(p.n, "n")?),
        FamilyName::Cycle => generators::cycle(need(p.n, "n")?),
        FamilyName::Complete => Ok(generators::complete(need(p.n, "n")?)),
        FamilyName::Path => Ok(generators::path(need(p.n, "n")?)),
        FamilyName::Petersen => Ok(generators::petersen()),
        FamilyName::Grid => generators::grid(need(p.rows, "rows")?, need(p.cols, "cols")?),
        FamilyName::TriangleChain => generators::triangle_chain(need(p.m, "m")?),
        FamilyName::DisjointTriangles => Ok(generators::disjoint_triangles(need(p.m, "m")?)),
        FamilyName::ParallelCycles => {
            generators::parallel_cycles(p.hubs, need(p.paths, "paths")?, p.path_len)
        }
        FamilyName::ExpanderTriangles => {
            let seed_graph =
                generators::random_regular(need(p.n, "n")?, p.degree, p.girth, &mut rng)?;
            Ok(generators::expander_triangles(&seed_graph))
        }
        FamilyName::RandomPlanar => generators::random_planar(
            need(p.rows, "rows")?,
            need(p.cols, "cols")?,
            p.keep,
            &mut rng,
        ),
    }
}

fn experiment_family(family: FamilyName, p: &FamilyParams) -> Result<Family, Error> {
    Ok(match family {
        FamilyName::TriangleChain => Family::TriangleChain,
        FamilyName::Grid => Family::Grid {
            cols: need(p.cols, "cols")?,
        },
        FamilyName::EvenCycle => Family::EvenCycle,
        FamilyName::DisjointTriangles => Family::DisjointTriangles,
        FamilyName::ParallelCycles => Family::ParallelCycles {
            hubs: p.hubs,
            path_len: p.path_len,
        },
        FamilyName::ExpanderTriangles => Family::ExpanderTriangles {
            degree: p.degree,
            girth: p.girth,
        },
        FamilyName::RandomPlanar => Family::RandomPlanar {
            cols: need(p.cols, "cols")?,
            keep: p.keep,
        },
        FamilyName::Cycle | FamilyName::Complete | FamilyName::Path | FamilyName::Petersen => {
            return Err(Error::Domain(
                "this family has no size parameter for experiments".into(),
            ))
        }
    })
}

fn decomposition_config(c_diameter: f64, retries: usize) -> DecompositionConfig {
    DecompositionConfig {
        c_diameter,
        retries,
        ..DecompositionConfig::default()
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gen(a) => {
            let seed = seed_or_entropy(a.seed);
            let mut g = generate(a.family, &a.params, seed)?;
            if a.split {
                g = generators::split_to_degree3(&g);
            }
            let family = a.family.to_possible_value().expect("no skipped variants");
            let p = &a.params;
            let header = format!(
                "family={} n={:?} m={:?} rows={:?} cols={:?} hubs={} paths={:?} path_len={} degree={} girth={} keep={} split={} seed={seed}",
                family.get_name(),
                p.n,
                p.m,
                p.rows,
                p.cols,
                p.hubs,
                p.paths,
                p.path_len,
                p.degree,
                p.girth,
                p.keep,
                a.split
            );
            emit(a.out.as_deref(), &write_edge_list(&g, &[header]))?;
        }
        Command::Test(a) => {
            let g = load(&a.input)?;
            let seed = seed_or_entropy(a.seed);
            let t = a.t.unwrap_or_else(|| default_g(a.epsilon));
            let f = a.f.unwrap_or_else(|| default_f(a.epsilon));
            let mut h = OracleHandle::new(&g);
            let out = bipartiteness_explorer(&mut h, f, t, &mut trial_rng(seed, 0))?;
            println!("{}", if out.accept { "accept" } else { "reject" });
            let json = serde_json::json!({
                "instance": a.input.display().to_string(),
                "t": t,
                "f": f,
                "trials": out.walks_run,
                "detections": usize::from(!out.accept),
                "p_hat": if out.accept { 0.0 } else { 1.0 / out.walks_run as f64 },
                "ci_low": serde_json::Value::Null,
                "ci_high": serde_json::Value::Null,
                "queries_total": out.tally.total(),
                "seed": seed,
            });
            println!("{json}");
            if !out.accept {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Estimate(a) => {
            let g = load(&a.input)?;
            let seed = seed_or_entropy(a.seed);
            let est = estimate_detection_probability(&g, a.t, a.trials, seed)?;
            let json = serde_json::json!({
                "instance": a.input.display().to_string(),
                "t": est.t,
                "f": serde_json::Value::Null,
                "trials": est.trials,
                "detections": est.detections,
                "p_hat": est.p_hat,
                "ci_low": est.ci_low,
                "ci_high": est.ci_high,
                "queries_total": est.queries_total,
                "seed": seed,
            });
            println!("{json}");
        }
        Command::Harvest(a) => {
            let g = load(&a.input)?;
            let seed = seed_or_entropy(a.seed);
            let cfg = decomposition_config(a.c_diameter, a.retries);
            let h = harvest_odd_cycles_with(&g, a.epsilon, &cfg, &mut trial_rng(seed, 0))?;
            let mut text = format!(
                "# cycles={} target={} achieved_k={} shortfall={} rounds={} seed={seed}\n",
                h.cycles.len(),
                h.target,
                h.achieved_k,
                h.shortfall,
                h.rounds
            );
            for c in h.cycles.cycles() {
                let line: Vec<String> = c.iter().map(usize::to_string).collect();
                let _ = writeln!(text, "{}", line.join(" "));
            }
            emit(a.out.as_deref(), &text)?;
        }
        Command::Decompose(a) => {
            let g = load(&a.input)?;
            let seed = seed_or_entropy(a.seed);
            let cfg = decomposition_config(a.c_diameter, a.retries);
            let d = decompose_with(&g, a.delta, &cfg, &mut trial_rng(seed, 0))?;
            let mut text = format!(
                "# components={} cut={} cut_budget={} diameter_bound={} max_diameter_upper={} seed={seed}\n",
                d.component_count(),
                d.cut_edges.len(),
                d.cut_budget,
                d.diameter_bound,
                d.diameter_upper.iter().max().copied().unwrap_or(0)
            );
            for (v, c) in d.component_of.iter().enumerate() {
                let _ = writeln!(text, "vertex {v} {c}");
            }
            for (u, v) in &d.cut_edges {
                let _ = writeln!(text, "cut {u} {v}");
            }
            emit(a.out.as_deref(), &text)?;
        }
        Command::Reduce(a) => {
            let g = load(&a.input)?;
            let seed = seed_or_entropy(a.seed);
            let mut rng = trial_rng(seed, 0);
            let h =
                harvest_odd_cycles_with(&g, a.epsilon, &DecompositionConfig::default(), &mut rng)?;
            let pruned = degree_prune(&h.cycles);
            let cfg = ReductionConfig {
                thinning_retries: a.retries,
            };
            let (chain, err) = trace_reduction(Arc::new(pruned), &cfg, &mut rng);
            let mut text = String::from("step,cycles,max_len,retention,self_loops\n");
            let first = &chain.states[0];
            let _ = writeln!(
                text,
                "0,{},{},1,{}",
                first.len(),
                first.max_image_len(),
                first.self_loop_count()
            );
            for (i, s) in chain.steps.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{}",
                    i + 1,
                    s.cycles_out,
                    s.max_len_out,
                    s.retention,
                    s.self_loops_out
                );
            }
            emit(a.out.as_deref(), &text)?;
            if let Some(e) = err {
                return Err(e);
            }
        }
        Command::Distance(a) => {
            let g = load(&a.input)?;
            if a.packing {
                println!("{}", packing_lower_bound(&g, None).0);
            } else {
                println!("{}", distance_to_bipartite_exact_with_limit(&g, a.limit)?);
            }
        }
        Command::Experiment(a) => {
            let seed = seed_or_entropy(a.seed);
            let cfg = ExperimentConfig {
                family: experiment_family(a.family, &a.params)?,
                sizes: a.sizes,
                epsilon: a.epsilon,
                t: a.t,
                f: a.f.unwrap_or_else(|| default_f(a.epsilon)),
                trials: a.trials,
                seed,
                timing: a.timing,
            };
            let report = run_experiment(&cfg)?;
            match a.out {
                Some(prefix) => {
                    fs::write(prefix.with_extension("csv"), report.to_csv())?;
                    fs::write(prefix.with_extension("json"), report.to_json())?;
                }
                None => print!("{}", report.to_csv()),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
