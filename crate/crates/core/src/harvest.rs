//! Harvesting many short edge-disjoint odd cycles, and the degree-pruning
//! transformation that makes every surviving vertex keep a constant fraction
//! of its degree.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use rand::Rng;

use crate::cycles::{cycle_edges, CycleSet};
use crate::decomposition::{decompose_with, DecompositionConfig};
use crate::error::Result;
use crate::exact::tree_cycle;
use crate::graph::{edge_key, Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleRecord {
    /// Harvest round that produced the cycle (from 1).
    pub round: usize,
    /// BFS depth of the closing same-level edge; the cycle has length at
    /// most `2 * depth + 1`.
    pub depth: usize,
    /// Certified weak diameter bound of the component it came from.
    pub component_diameter: usize,
}

#[derive(Debug, Clone)]
pub struct Harvest {
    pub cycles: CycleSet,
    /// One record per cycle, aligned with `cycles`.
    pub records: Vec<CycleRecord>,
    /// Longest harvested cycle (0 when none were found).
    pub achieved_k: usize,
    /// `ceil(eps * n / (2k))` with `k = max(achieved_k, 3)`.
    pub target: usize,
    /// How many cycles short of `target` the harvest stopped.
    pub shortfall: usize,
    pub rounds: usize,
}

/// Repeatedly decomposes the residual graph with `delta = epsilon / 2` and
/// extracts one odd cycle from every non-bipartite component, closing a
/// same-level component edge through a BFS tree of the residual graph.
/// Cycles of one round are taken greedily while edge-disjoint; conflicting
/// components wait for the next round. Stops after the first round that
/// brings the count to `eps * n / (2k)`, or once every component is
/// bipartite.
pub fn harvest_odd_cycles<R: Rng + ?Sized>(
    g: &Graph,
    epsilon: f64,
    rng: &mut R,
) -> Result<Harvest> {
    harvest_odd_cycles_with(g, epsilon, &DecompositionConfig::default(), rng)
}

pub fn harvest_odd_cycles_with<R: Rng + ?Sized>(
    g: &Graph,
    epsilon: f64,
    cfg: &DecompositionConfig,
    rng: &mut R,
) -> Result<Harvest> {
    let n = g.vertex_count();
    let base = Arc::new(g.clone());
    let mut residual = g.clone();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut records = Vec::new();
    let mut achieved_k = 0;
    let mut rounds = 0;
    let reached =
        |count: usize, k: usize| count > 0 && count as f64 >= epsilon * n as f64 / (2 * k) as f64;

    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    loop {
        rounds += 1;
        let d = decompose_with(&residual, epsilon / 2.0, cfg, rng)?;
        let mut used: HashSet<Edge> = HashSet::new();
        let mut found_any = false;
        for (c, members) in d.components().into_iter().enumerate() {
            let Some((cyc, level)) = component_cycle(
                &residual,
                &members,
                &d.component_of,
                c,
                &mut depth,
                &mut parent,
            ) else {
                continue;
            };
            found_any = true;
            let edges: Vec<Edge> = cycle_edges(&cyc).map(|(u, v)| edge_key(u, v)).collect();
            if edges.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(edges);
            achieved_k = achieved_k.max(cyc.len());
            cycles.push(cyc);
            records.push(CycleRecord {
                round: rounds,
                depth: level,
                component_diameter: d.diameter_upper[c],
            });
        }
        if !found_any || reached(cycles.len(), achieved_k) {
            break;
        }
        residual = residual.without_edges(&used);
    }

    let target = (epsilon * n as f64 / (2 * achieved_k.max(3)) as f64 - 1e-9)
        .ceil()
        .max(0.0) as usize;
    let cycles =
        CycleSet::new(base, cycles).expect("harvested cycles are edge-disjoint odd cycles");
    Ok(Harvest {
        shortfall: target.saturating_sub(cycles.len()),
        cycles,
        records,
        achieved_k,
        target,
        rounds,
    })
}

/// Odd cycle for component `c`, if it is not bipartite: BFS in `g` from its
/// smallest member, then the shallowest same-level edge inside the component
/// closed through the BFS tree.
fn component_cycle(
    g: &Graph,
    members: &[usize],
    component_of: &[usize],
    c: usize,
    depth: &mut [usize],
    parent: &mut [usize],
) -> Option<(Vec<usize>, usize)> {
    if members.len() < 3 {
        return None;
    }
    let root = members[0];
    let mut touched = vec![root];
    depth[root] = 0;
    let mut remaining = members.len() - 1;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        if remaining == 0 {
            break;
        }
        for &y in g.neighbors(x) {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = x;
                touched.push(y);
                queue.push_back(y);
                if component_of[y] == c {
                    remaining -= 1;
                }
            }
        }
    }
    let mut best: Option<(usize, Edge)> = None;
    for &u in members {
        for &v in g.neighbors(u) {
            if u < v
                && component_of[v] == c
                && depth[u] == depth[v]
                && best.is_none_or(|(d, e)| (depth[u], (u, v)) < (d, e))
            {
                best = Some((depth[u], (u, v)));
            }
        }
    }
    let out = best.map(|(d, (u, v))| (tree_cycle(parent, depth, u, v), d));
    for v in touched {
        depth[v] = usize::MAX;
        parent[v] = usize::MAX;
    }
    out
}

/// Degree pruning on the base graph: with `alpha = |C| / |V|`, repeatedly
/// takes the smallest-id non-isolated vertex whose degree in `G(C')` is at
/// most `(alpha / 12) * deg_G(v)` and deletes every cycle through it.
pub fn degree_prune(cs: &CycleSet) -> CycleSet {
    cs.subset(&degree_prune_ids(cs))
}

/// Ids of the cycles [`degree_prune`] keeps, ascending.
pub fn degree_prune_ids(cs: &CycleSet) -> Vec<usize> {
    let contributions: Vec<Vec<(usize, usize)>> = cs
        .cycles()
        .iter()
        .map(|c| c.iter().map(|&v| (v, 2)).collect())
        .collect();
    let reference: Vec<usize> = (0..cs.vertex_count())
        .map(|v| cs.base().degree(v))
        .collect();
    prune_by_degree(&contributions, &reference, (cs.len(), cs.vertex_count()))
}

/// The pruning rule over arbitrary degree bookkeeping. Cycle `i` adds
/// `amount` to the current degree of each `(vertex, amount)` in
/// `contributions[i]`. With `alpha = num / den`, a vertex violates the rule
/// when `0 < current <= (alpha / 12) * reference`. Returns the kept indices.
pub fn prune_by_degree(
    contributions: &[Vec<(usize, usize)>],
    reference: &[usize],
    (num, den): (usize, usize),
) -> Vec<usize> {
    let n = reference.len();
    let mut current = vec![0usize; n];
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, contrib) in contributions.iter().enumerate() {
        for &(v, amount) in contrib {
            current[v] += amount;
            through[v].push(i);
        }
    }
    let violates = |v: usize, cur: usize| cur > 0 && 12 * cur * den <= num * reference[v];
    let mut alive = vec![true; contributions.len()];
    let mut pending: BTreeSet<usize> = (0..n).filter(|&v| violates(v, current[v])).collect();
    while let Some(v) = pending.pop_first() {
        for &i in &through[v] {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            for &(w, amount) in &contributions[i] {
                current[w] -= amount;
                if violates(w, current[w]) {
                    pending.insert(w);
                } else {
                    pending.remove(&w);
                }
            }
        }
    }
    (0..contributions.len()).filter(|&i| alive[i]).collect()
}
