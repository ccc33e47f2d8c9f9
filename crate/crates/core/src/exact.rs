//! Ground-truth baselines: 2-coloring with odd-cycle witnesses, shortest odd
//! cycles, exact distance to bipartiteness by enumeration, and a greedy
//! odd-cycle packing that lower-bounds that distance.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::cycles::{cycle_edges, CycleSet};
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph};

/// Enumeration bound used by [`distance_to_bipartite_exact`].
pub const EXACT_DISTANCE_LIMIT: usize = 26;
/// Hard ceiling for [`distance_to_bipartite_exact_with_limit`].
pub const EXACT_DISTANCE_CEILING: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteCheck {
    /// 0/1 color per vertex when the graph is bipartite.
    pub coloring: Option<Vec<u8>>,
    /// A simple odd cycle when it is not.
    pub odd_cycle: Option<Vec<usize>>,
}

impl BipartiteCheck {
    pub fn is_bipartite(&self) -> bool {
        self.coloring.is_some()
    }
}

/// BFS 2-coloring per component. On failure, returns the odd cycle closed by
/// the first same-color edge through the BFS tree.
pub fn is_bipartite(g: &Graph) -> BipartiteCheck {
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if depth[y] % 2 == depth[x] % 2 {
                    return BipartiteCheck {
                        coloring: None,
                        odd_cycle: Some(tree_cycle(&parent, &depth, x, y)),
                    };
                }
            }
        }
    }
    BipartiteCheck {
        coloring: Some(depth.iter().map(|d| (d % 2) as u8).collect()),
        odd_cycle: None,
    }
}

/// Closes the edge `(u, v)` through a BFS tree: climbs from both endpoints
/// to their last common ancestor and returns `u .. lca .. v` as a simple
/// cycle. With equal-depth endpoints the cycle has odd length
/// `2 * (depth - depth(lca)) + 1`.
pub(crate) fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let mut up_u = vec![u];
    let mut up_v = vec![v];
    let (mut a, mut b) = (u, v);
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            up_u.push(a);
        } else {
            b = parent[b];
            up_v.push(b);
        }
    }
    // both lists now end at the common ancestor
    up_v.pop();
    up_u.extend(up_v.into_iter().rev());
    up_u
}

/// A minimum-length odd cycle, or `None` iff `g` is bipartite.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        let mut touched = vec![s];
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(x) = queue.pop_front() {
            if let Some(b) = &best {
                if 2 * depth[x] + 1 >= b.len() {
                    break;
                }
            }
            for &y in g.neighbors(x) {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if depth[y] == depth[x] && x < y {
                    let cyc = tree_cycle(&parent, &depth, x, y);
                    if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                        let done = cyc.len() == 3;
                        best = Some(cyc);
                        if done {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        for v in touched {
            depth[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best.as_ref().is_some_and(|b| b.len() == 3) {
            break;
        }
    }
    best
}

/// Number of edges with both endpoints of the same color.
pub fn monochromatic_edges(g: &Graph, coloring: &[u8]) -> usize {
    g.edges()
        .filter(|&(u, v)| coloring[u] == coloring[v])
        .count()
}

/// Minimum number of edge deletions that make `g` bipartite, i.e.
/// `|E| - maxcut(g)`, by enumerating all bipartitions. Vertex 0 is pinned
/// to one side, so `2^(n-1)` assignments are visited in Gray-code order.
pub fn distance_to_bipartite_exact(g: &Graph) -> Result<usize> {
    distance_to_bipartite_exact_with_limit(g, EXACT_DISTANCE_LIMIT)
}

/// [`distance_to_bipartite_exact`] with a caller-chosen vertex limit, capped
/// at [`EXACT_DISTANCE_CEILING`].
pub fn distance_to_bipartite_exact_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    let limit = limit.min(EXACT_DISTANCE_CEILING);
    if n > limit {
        return Err(Error::Capacity { vertices: n, limit });
    }
    if n <= 1 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let mut colors: u64 = 0;
    let mut mono = g.edge_count();
    let mut best = mono;
    let steps: u64 = 1 << (n - 1);
    for k in 1..steps {
        // Gray code: flip vertex 1 + trailing_zeros(k)
        let v = 1 + k.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let same_side = if colors & bit != 0 { colors } else { !colors };
        let same = (adj[v] & same_side).count_ones() as usize;
        let diff = adj[v].count_ones() as usize - same;
        mono = mono + diff - same;
        colors ^= bit;
        if mono < best {
            best = mono;
            if best == 0 {
                break;
            }
        }
    }
    Ok(best)
}

/// Greedy packing of edge-disjoint odd cycles: repeatedly removes a shortest
/// odd cycle of the residual graph until it is bipartite or its shortest odd
/// cycle is longer than `max_len`. The packing size certifies a lower bound
/// on the distance to bipartiteness.
pub fn packing_lower_bound(g: &Graph, max_len: Option<usize>) -> (usize, CycleSet) {
    let base = Arc::new(g.clone());
    let mut residual = g.clone();
    let mut cycles = Vec::new();
    while let Some(c) = shortest_odd_cycle(&residual) {
        if max_len.is_some_and(|cap| c.len() > cap) {
            break;
        }
        let used: HashSet<_> = cycle_edges(&c).map(|(u, v)| edge_key(u, v)).collect();
        residual = residual.without_edges(&used);
        cycles.push(c);
    }
    let set = CycleSet::new(base, cycles).expect("greedy packing yields edge-disjoint odd cycles");
    (set.len(), set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn assert_simple_odd_cycle(g: &Graph, c: &[usize]) {
        assert_eq!(c.len() % 2, 1);
        let distinct: HashSet<_> = c.iter().collect();
        assert_eq!(distinct.len(), c.len());
        for (u, v) in cycle_edges(c) {
            assert!(g.has_edge(u, v), "({u}, {v}) missing");
        }
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&even_cycle(4).unwrap()).is_bipartite());
        let c5 = cycle(5).unwrap();
        let check = is_bipartite(&c5);
        let w = check.odd_cycle.unwrap();
        assert_eq!(w.len(), 5);
        assert_simple_odd_cycle(&c5, &w);
        let p = petersen();
        let w = is_bipartite(&p).odd_cycle.unwrap();
        assert_simple_odd_cycle(&p, &w);
    }

    #[test]
    fn coloring_is_proper() {
        let g = grid(4, 5).unwrap();
        let col = is_bipartite(&g).coloring.unwrap();
        assert_eq!(monochromatic_edges(&g, &col), 0);
    }

    #[test]
    fn shortest_odd_cycles() {
        assert!(shortest_odd_cycle(&grid(3, 3).unwrap()).is_none());
        assert_eq!(shortest_odd_cycle(&cycle(5).unwrap()).unwrap().len(), 5);
        assert_eq!(shortest_odd_cycle(&complete(4)).unwrap().len(), 3);
        assert_eq!(shortest_odd_cycle(&petersen()).unwrap().len(), 5);
        // C9 with a long chord pattern: a 9-cycle plus a pendant path
        let g = Graph::from_edges(
            11,
            (0..9).map(|i| (i, (i + 1) % 9)).chain([(0, 9), (9, 10)]),
        )
        .unwrap();
        let c = shortest_odd_cycle(&g).unwrap();
        assert_eq!(c.len(), 9);
        assert_simple_odd_cycle(&g, &c);
    }

    #[test]
    fn exact_distances() {
        assert_eq!(distance_to_bipartite_exact(&cycle(5).unwrap()).unwrap(), 1);
        assert_eq!(
            distance_to_bipartite_exact(&even_cycle(6).unwrap()).unwrap(),
            0
        );
        assert_eq!(distance_to_bipartite_exact(&Graph::empty(1)).unwrap(), 0);
        let big = path(27);
        assert!(matches!(
            distance_to_bipartite_exact(&big),
            Err(Error::Capacity {
                vertices: 27,
                limit: 26
            })
        ));
        assert_eq!(distance_to_bipartite_exact_with_limit(&big, 27).unwrap(), 0);
    }

    #[test]
    fn k4_distance_matches_subset_enumeration() {
        // independent oracle: all 16 colorings of K4
        let g = complete(4);
        let brute = (0u8..16)
            .map(|mask| {
                let col: Vec<u8> = (0..4).map(|i| (mask >> i) & 1).collect();
                monochromatic_edges(&g, &col)
            })
            .min()
            .unwrap();
        assert_eq!(brute, 2);
        assert_eq!(distance_to_bipartite_exact(&g).unwrap(), brute);
    }

    #[test]
    fn packing() {
        let (k, set) = packing_lower_bound(&triangle_chain(5).unwrap(), None);
        assert_eq!(k, 5);
        assert!(set.cycles().iter().all(|c| c.len() == 3));
        assert_eq!(packing_lower_bound(&grid(4, 4).unwrap(), None).0, 0);
        assert_eq!(packing_lower_bound(&cycle(9).unwrap(), None).0, 1);
        assert_eq!(packing_lower_bound(&cycle(9).unwrap(), Some(7)).0, 0);
    }
}
