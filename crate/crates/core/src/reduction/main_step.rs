use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harvest::prune_by_degree;

use super::chain::ReductionConfig;
use super::contracted::{well_contractible, ContractedState, CycleImage, ImageIndex};
use super::levels::assigning_levels;
use super::thinning::thin_well_contractible;

/// Sizes after each stage of one main step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainStepStats {
    pub cycles_in: usize,
    pub self_loops_in: usize,
    /// The self-loop cycles outnumbered the rest and were kept alone.
    pub kept_self_loops: bool,
    pub after_levels: usize,
    pub after_thinning: usize,
    pub after_prune: usize,
    pub thinning_draws: usize,
    pub thinning_derandomized: bool,
    /// `(|C''|, |V|)`: the density used by the degree prune.
    pub alpha: (usize, usize),
    pub q_size: usize,
}

#[derive(Debug, Clone)]
pub struct MainStepOutcome {
    pub state: ContractedState,
    /// Independent set of well-contractible vertices, ascending.
    pub q: Vec<usize>,
    pub stats: MainStepStats,
}

/// One main step: keeps the self-loop cycles if they are at least half of
/// the input; otherwise assigns levels, thins to well-contractible cycles
/// and prunes by image degree, then picks `Q` greedily by ascending id among
/// the surviving well-contractible low-degree vertices.
pub fn main_step<R: Rng + ?Sized>(
    state: &ContractedState,
    cfg: &ReductionConfig,
    rng: &mut R,
) -> Result<MainStepOutcome> {
    let (c1, c2): (Vec<usize>, Vec<usize>) =
        (0..state.len()).partition(|&p| state.images()[p].is_self_loop());
    let mut stats = MainStepStats {
        cycles_in: state.len(),
        self_loops_in: c1.len(),
        kept_self_loops: false,
        after_levels: 0,
        after_thinning: 0,
        after_prune: 0,
        thinning_draws: 0,
        thinning_derandomized: false,
        alpha: (0, state.vertex_count()),
        q_size: 0,
    };
    if c1.len() >= c2.len() {
        stats.kept_self_loops = true;
        let out = state.restrict(&c1);
        stats.after_levels = out.len();
        stats.after_thinning = out.len();
        stats.after_prune = out.len();
        return Ok(MainStepOutcome {
            state: out,
            q: Vec::new(),
            stats,
        });
    }

    let levelled = assigning_levels(&state.restrict(&c2))?;
    stats.after_levels = levelled.len();
    let thinned = thin_well_contractible(&levelled, cfg.thinning_retries, rng)?;
    stats.after_thinning = thinned.state.len();
    stats.thinning_draws = thinned.draws;
    stats.thinning_derandomized = thinned.derandomized;

    let reference = ImageIndex::new(state.vertex_count(), state.images());
    let reference: Vec<usize> = (0..state.vertex_count())
        .map(|v| reference.degree(v))
        .collect();
    let contributions: Vec<Vec<(usize, usize)>> =
        thinned.state.images().iter().map(image_degree).collect();
    stats.alpha = (thinned.state.len(), state.vertex_count());
    let kept = prune_by_degree(&contributions, &reference, stats.alpha);
    let out = thinned.state.restrict(&kept);
    stats.after_prune = out.len();

    let index = ImageIndex::new(out.vertex_count(), out.images());
    let mut in_q = vec![false; out.vertex_count()];
    let mut q = Vec::new();
    for v in thinned.q_prime {
        if index.nbr[v].is_empty() || !well_contractible(&index, out.images(), v) {
            continue;
        }
        if index.nbr[v].keys().any(|&u| in_q[u]) {
            continue;
        }
        in_q[v] = true;
        q.push(v);
    }
    stats.q_size = q.len();
    Ok(MainStepOutcome {
        state: out,
        q,
        stats,
    })
}

/// Contribution of one image to the image degrees: a self-loop adds 1 to
/// its vertex, any other image adds 2 to each of its heads.
fn image_degree(im: &CycleImage) -> Vec<(usize, usize)> {
    if im.is_self_loop() {
        vec![(im.heads[0], 1)]
    } else {
        im.heads.iter().map(|&h| (h, 2)).collect()
    }
}

/// The neighbor `u` is contracted into: the one joined to it by the most
/// parallel edges, ties to the smallest id.
fn gamma(index: &ImageIndex, u: usize) -> usize {
    index.nbr[u]
        .iter()
        .map(|(&x, &m)| (std::cmp::Reverse(m), x))
        .min()
        .map(|(_, x)| x)
        .expect("Q-vertices are not isolated")
}

/// Contracts every vertex of `q` into `gamma(u)`, shortening each image
/// through `q` by one head per `q`-vertex on it.
pub fn contract_step(state: &ContractedState, q: &[usize]) -> Result<ContractedState> {
    let n = state.vertex_count();
    let index = ImageIndex::new(n, state.images());
    let mut in_q = vec![false; n];
    for &u in q {
        if u >= n || index.nbr[u].is_empty() {
            return Err(Error::Validation(format!(
                "{u} is not a vertex of the contracted multigraph"
            )));
        }
        if !well_contractible(&index, state.images(), u) {
            return Err(Error::Validation(format!("{u} is not well-contractible")));
        }
        in_q[u] = true;
    }
    for &u in q {
        if let Some(&x) = index.nbr[u].keys().find(|&&x| in_q[x]) {
            return Err(Error::Validation(format!(
                "Q is not independent: {u} and {x} are adjacent"
            )));
        }
    }

    let target: Vec<(usize, usize)> = q.iter().map(|&u| (u, gamma(&index, u))).collect();
    let mut partition = state.partition().clone();
    let mut redirect: Vec<usize> = (0..n).collect();
    for &(u, g) in &target {
        redirect[u] = g;
    }
    for h in partition.heads_mut() {
        *h = redirect[*h];
    }
    let images = state
        .images()
        .iter()
        .map(|im| im.contract(|h| in_q[h]))
        .collect();
    Ok(ContractedState::from_parts(
        state.root().clone(),
        state.active().to_vec(),
        partition,
        images,
    ))
}

/// Checks the five properties of a main step's output against its input:
/// re-fixing of isolated vertices, independence of `Q`, well-contractibility
/// of `Q`, a `Q`-vertex on every non-self-loop image, and (when the
/// non-self-loop branch ran) the degree-prune fixpoint relative to the input
/// image degrees.
pub fn audit_main_step(input: &ContractedState, out: &MainStepOutcome) -> Result<()> {
    let state = &out.state;
    state.audit()?;
    let n = state.vertex_count();
    let mut on_cycle = vec![false; n];
    for &id in state.active() {
        for &v in state.root().cycle(id) {
            on_cycle[v] = true;
        }
    }
    for (v, &on) in on_cycle.iter().enumerate() {
        let expect = if on { input.partition().head(v) } else { v };
        if state.partition().head(v) != expect {
            return Err(Error::Reduction(format!(
                "P'({v}) = {} but should be {expect}",
                state.partition().head(v)
            )));
        }
    }
    let index = ImageIndex::new(n, state.images());
    let mut in_q = vec![false; n];
    for &u in &out.q {
        in_q[u] = true;
    }
    for &u in &out.q {
        if index.nbr[u].keys().any(|&x| in_q[x]) {
            return Err(Error::Reduction(format!(
                "Q-vertex {u} has a neighbor in Q"
            )));
        }
        if index.nbr[u].is_empty() || !well_contractible(&index, state.images(), u) {
            return Err(Error::Reduction(format!(
                "Q-vertex {u} is not well-contractible"
            )));
        }
    }
    for (im, &id) in state.images().iter().zip(state.active()) {
        if !im.is_self_loop() && !im.heads.iter().any(|&h| in_q[h]) {
            return Err(Error::Reduction(format!("cycle {id} has no Q-vertex")));
        }
    }
    if !out.stats.kept_self_loops {
        let before = ImageIndex::new(n, input.images());
        let (num, den) = out.stats.alpha;
        for v in 0..n {
            let d = index.degree(v);
            if d > 0 && 12 * d * den <= num * before.degree(v) {
                return Err(Error::Reduction(format!(
                    "vertex {v} kept image degree {d} of {}",
                    before.degree(v)
                )));
            }
        }
    }
    Ok(())
}
