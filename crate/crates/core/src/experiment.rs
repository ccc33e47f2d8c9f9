//! Detection-probability experiments across instance sizes, with CSV and
//! JSON reports that are byte-identical for identical configurations.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;
use crate::tester::{estimate_detection_probability, query_bound, trial_rng};

/// Generator family of an experiment. Each size is mapped to the family's
/// natural size parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Family {
    /// Size `n` gives `(n - 1) / 2` triangles.
    TriangleChain,
    /// Size `n` gives `ceil(n / cols)` rows.
    Grid { cols: usize },
    /// Size `n`, rounded up to even.
    EvenCycle,
    /// Size `n` gives `n / 3` triangles.
    DisjointTriangles,
    /// Size is the number of paths.
    ParallelCycles { hubs: usize, path_len: usize },
    /// Size is the vertex count of the regular seed graph.
    ExpanderTriangles { degree: usize, girth: usize },
    /// Size `n` gives `ceil(n / cols)` rows.
    RandomPlanar { cols: usize, keep: f64 },
}

impl Family {
    pub fn generate(&self, size: usize, seed: u64) -> Result<Graph> {
        let rows = |cols: usize| {
            if cols == 0 {
                Err(Error::Domain("cols must be positive".into()))
            } else {
                Ok(size.div_ceil(cols))
            }
        };
        match *self {
            Family::TriangleChain => generators::triangle_chain(size.saturating_sub(1) / 2),
            Family::Grid { cols } => generators::grid(rows(cols)?, cols),
            Family::EvenCycle => generators::even_cycle(size + size % 2),
            Family::DisjointTriangles => Ok(generators::disjoint_triangles(size / 3)),
            Family::ParallelCycles { hubs, path_len } => {
                generators::parallel_cycles(hubs, size, path_len)
            }
            Family::ExpanderTriangles { degree, girth } => {
                let seed_graph = generators::random_regular(
                    size,
                    degree,
                    girth,
                    &mut trial_rng(seed, u64::MAX),
                )?;
                Ok(generators::expander_triangles(&seed_graph))
            }
            Family::RandomPlanar { cols, keep } => {
                generators::random_planar(rows(cols)?, cols, keep, &mut trial_rng(seed, u64::MAX))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub epsilon: f64,
    /// Walk length.
    pub t: usize,
    /// Walks per explorer run; only enters the reported query budget.
    pub f: usize,
    pub trials: usize,
    pub seed: u64,
    /// Record wall-clock time per row. Off by default, since timings break
    /// byte-identical reports.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::Domain("sizes must be nonempty".into()));
        }
        if self.trials < 100 {
            return Err(Error::Domain(format!(
                "need at least 100 trials, got {}",
                self.trials
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Domain(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub size: usize,
    pub n: usize,
    pub edges: usize,
    pub t: usize,
    pub trials: usize,
    pub detections: usize,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub queries_total: u64,
    pub queries_mean: f64,
    /// `f * (2t + 1)`.
    pub query_bound: u64,
    /// Probability that at least one of `f` walks detects, `1 - (1 - p)^f`.
    pub explorer_reject: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ExperimentRow>,
    pub environment: Environment,
}

/// Generates each instance and estimates its detection probability. Row `i`
/// uses seed `cfg.seed + i` for both generation and walks.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for (i, &size) in cfg.sizes.iter().enumerate() {
        let seed = cfg.seed.wrapping_add(i as u64);
        let started = Instant::now();
        let g = cfg.family.generate(size, seed).map_err(|e| match e {
            Error::Domain(m) => Error::Domain(format!("size {size}: {m}")),
            other => other,
        })?;
        if g.vertex_count() == 0 {
            return Err(Error::Domain(format!(
                "size {size}: generated an empty graph"
            )));
        }
        let est = estimate_detection_probability(&g, cfg.t, cfg.trials, seed)?;
        rows.push(ExperimentRow {
            size,
            n: g.vertex_count(),
            edges: g.edge_count(),
            t: cfg.t,
            trials: est.trials,
            detections: est.detections,
            p_hat: est.p_hat,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            queries_total: est.queries_total,
            queries_mean: est.queries_total as f64 / est.trials as f64,
            query_bound: query_bound(cfg.f, cfg.t),
            explorer_reject: 1.0 - (1.0 - est.p_hat).powi(cfg.f as i32),
            wall_time_ms: cfg.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
        });
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        rows,
        environment: Environment {
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
        },
    })
}

pub const CSV_HEADER: &str =
    "size,n,edges,t,trials,detections,p_hat,ci_low,ci_high,queries_total,queries_mean,query_bound,explorer_reject,wall_time_ms";

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.size,
                r.n,
                r.edges,
                r.t,
                r.trials,
                r.detections,
                r.p_hat,
                r.ci_low,
                r.ci_high,
                r.queries_total,
                r.queries_mean,
                r.query_bound,
                r.explorer_reject,
                r.wall_time_ms.map(|w| w.to_string()).unwrap_or_default()
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
