//! The random-walk tester on base graphs and on contracted multigraphs, and
//! Monte-Carlo estimation of its single-walk detection probability.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsu::SparseParityDsu;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{GraphAccess, OracleHandle, QueryTally};
use crate::reduction::ContractedMultigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkStep {
    pub from: usize,
    pub to: usize,
    pub parity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTrace {
    pub start_vertex: usize,
    pub steps: Vec<WalkStep>,
    /// Index into `steps` of the first edge that closed an odd cycle.
    pub detected_at: Option<usize>,
}

impl WalkTrace {
    pub fn detected(&self) -> bool {
        self.detected_at.is_some()
    }
}

/// One random walk of `t` steps from a uniform start vertex. Every traversed
/// edge has parity 1; the walk detects once the traversed edges are no
/// longer 2-colorable. The walk always runs all `t` steps.
pub fn random_walk_test<A: GraphAccess + ?Sized, R: Rng + ?Sized>(
    h: &mut OracleHandle<'_, A>,
    t: usize,
    rng: &mut R,
) -> Result<WalkTrace> {
    let n = h.vertex_count();
    if n == 0 {
        return Err(Error::Domain("cannot walk on an empty graph".into()));
    }
    let start = rng.gen_range(0..n);
    let mut trace = WalkTrace {
        start_vertex: start,
        steps: Vec::with_capacity(t),
        detected_at: None,
    };
    if t == 0 || h.degree(start)? == 0 {
        return Ok(trace);
    }
    let mut dsu = SparseParityDsu::new();
    let mut at = start;
    for i in 0..t {
        let next = h.random_neighbor(at, rng)?;
        if dsu.add_edge(at, next, 1) && trace.detected_at.is_none() {
            trace.detected_at = Some(i);
        }
        trace.steps.push(WalkStep {
            from: at,
            to: next,
            parity: 1,
        });
        at = next;
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorerOutcome {
    pub accept: bool,
    pub walks_run: usize,
    /// Index of the walk that found an odd cycle.
    pub rejecting_walk: Option<usize>,
    pub tally: QueryTally,
}

/// Runs up to `f` walks of length `g` and rejects as soon as one finds an
/// odd cycle. Uses at most `f * (2g + 1)` queries whatever the graph size.
pub fn bipartiteness_explorer<A: GraphAccess + ?Sized, R: Rng + ?Sized>(
    h: &mut OracleHandle<'_, A>,
    f: usize,
    g: usize,
    rng: &mut R,
) -> Result<ExplorerOutcome> {
    if f == 0 || g == 0 {
        return Err(Error::Domain("f and g must be at least 1".into()));
    }
    for i in 0..f {
        if random_walk_test(h, g, rng)?.detected() {
            return Ok(ExplorerOutcome {
                accept: false,
                walks_run: i + 1,
                rejecting_walk: Some(i),
                tally: h.tally(),
            });
        }
    }
    Ok(ExplorerOutcome {
        accept: true,
        walks_run: f,
        rejecting_walk: None,
        tally: h.tally(),
    })
}

/// Query budget of the explorer.
pub fn query_bound(f: usize, g: usize) -> u64 {
    f as u64 * (2 * g as u64 + 1)
}

/// Default walk count `ceil(64 / eps)`.
pub fn default_f(epsilon: f64) -> usize {
    (64.0 / epsilon - 1e-9).ceil() as usize
}

/// Default walk length `8 * ceil(1 / eps)^2`.
pub fn default_g(epsilon: f64) -> usize {
    let c = (1.0 / epsilon - 1e-9).ceil() as usize;
    8 * c * c
}

/// A `t`-step walk on a contracted multigraph. The start head is that of a
/// uniform base vertex, so head `u` is chosen with probability
/// `|P^{-1}(u)| / |V|`; each step follows a uniform incident edge record and
/// feeds its stored parity to the union-find.
pub fn multigraph_random_walk<R: Rng + ?Sized>(
    m: &ContractedMultigraph,
    t: usize,
    rng: &mut R,
) -> Result<WalkTrace> {
    let n = m.base_vertex_count();
    if n == 0 {
        return Err(Error::Domain("cannot walk on an empty multigraph".into()));
    }
    let start = m.head(rng.gen_range(0..n));
    let mut trace = WalkTrace {
        start_vertex: start,
        steps: Vec::with_capacity(t),
        detected_at: None,
    };
    if m.degree(start) == 0 {
        return Ok(trace);
    }
    let mut dsu = SparseParityDsu::new();
    let mut at = start;
    for i in 0..t {
        let inc = m.incident(at);
        let e = m.edges()[inc[rng.gen_range(0..inc.len())]];
        let next = if e.a == at { e.b } else { e.a };
        if dsu.add_edge(at, next, e.parity) && trace.detected_at.is_none() {
            trace.detected_at = Some(i);
        }
        trace.steps.push(WalkStep {
            from: at,
            to: next,
            parity: e.parity,
        });
        at = next;
    }
    Ok(trace)
}

/// Something a single walk can run on.
pub trait WalkTarget: Sync {
    /// Runs one walk; returns the trace and the queries it used.
    fn walk(&self, t: usize, rng: &mut ChaCha8Rng) -> Result<(WalkTrace, u64)>;
}

impl WalkTarget for Graph {
    fn walk(&self, t: usize, rng: &mut ChaCha8Rng) -> Result<(WalkTrace, u64)> {
        let mut h = OracleHandle::new(self);
        let trace = random_walk_test(&mut h, t, rng)?;
        Ok((trace, h.tally().total()))
    }
}

impl WalkTarget for ContractedMultigraph {
    fn walk(&self, t: usize, rng: &mut ChaCha8Rng) -> Result<(WalkTrace, u64)> {
        let trace = multigraph_random_walk(self, t, rng)?;
        let queries = trace.steps.len() as u64;
        Ok((trace, queries))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionEstimate {
    pub t: usize,
    pub trials: usize,
    pub detections: usize,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub queries_total: u64,
    pub seed: u64,
}

/// Normal quantile of the 95% interval.
pub const Z95: f64 = 1.96;

/// Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Random stream of trial `i` under `seed`.
pub fn trial_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Runs `trials` independent walks of length `t` in parallel. Trial `i` uses
/// stream `i` of a generator seeded with `seed`, so the result does not
/// depend on scheduling.
pub fn estimate_detection_probability<T: WalkTarget + ?Sized>(
    instance: &T,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<DetectionEstimate> {
    if trials < 100 {
        return Err(Error::Domain(format!(
            "need at least 100 trials, got {trials}"
        )));
    }
    let (detections, queries_total) = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let (trace, q) = instance.walk(t, &mut trial_rng(seed, i))?;
            Ok::<_, Error>((usize::from(trace.detected()), q))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let (ci_low, ci_high) = wilson_interval(detections, trials, Z95);
    Ok(DetectionEstimate {
        t,
        trials,
        detections,
        p_hat: detections as f64 / trials as f64,
        ci_low,
        ci_high,
        queries_total,
        seed,
    })
}
