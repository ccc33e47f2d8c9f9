//! Collections of edge-disjoint odd cycles over a base graph.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{edge_key, Edge, Graph};

/// Edge-disjoint simple odd cycles of `base`. A cycle is a vertex sequence
/// `v0 v1 .. v(L-1)` with edges `(v_i, v_{i+1})` and the closing edge
/// `(v_{L-1}, v0)`. Cycle ids are positions in `cycles()`.
#[derive(Debug, Clone)]
pub struct CycleSet {
    base: Arc<Graph>,
    cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn new(base: Arc<Graph>, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let set = CycleSet { base, cycles };
        set.validate()?;
        Ok(set)
    }

    pub fn empty(base: Arc<Graph>) -> Self {
        CycleSet {
            base,
            cycles: Vec::new(),
        }
    }

    pub fn base(&self) -> &Arc<Graph> {
        &self.base
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle(&self, id: usize) -> &[usize] {
        &self.cycles[id]
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.cycles.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    /// Sub-collection keeping the listed cycle ids (in the given order).
    pub fn subset(&self, ids: &[usize]) -> CycleSet {
        CycleSet {
            base: Arc::clone(&self.base),
            cycles: ids.iter().map(|&i| self.cycles[i].clone()).collect(),
        }
    }

    /// Degree of every vertex in the graph formed by the cycles' edges.
    pub fn induced_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for c in &self.cycles {
            for &v in c {
                deg[v] += 2;
            }
        }
        deg
    }

    /// The graph formed by the union of the cycles' edges.
    pub fn induced_graph(&self) -> Graph {
        Graph::from_edges(
            self.vertex_count(),
            self.cycles.iter().flat_map(|c| cycle_edges(c)),
        )
        .expect("cycle edges come from a simple base graph")
    }

    pub fn validate(&self) -> Result<()> {
        let mut used: HashSet<Edge> = HashSet::new();
        for (id, c) in self.cycles.iter().enumerate() {
            if c.len() < 3 || c.len() % 2 == 0 {
                return Err(Error::Validation(format!(
                    "cycle {id} has length {}, expected odd length >= 3",
                    c.len()
                )));
            }
            let distinct: HashSet<usize> = c.iter().copied().collect();
            if distinct.len() != c.len() {
                return Err(Error::Validation(format!("cycle {id} repeats a vertex")));
            }
            for (u, v) in cycle_edges(c) {
                if !self.base.has_edge(u, v) {
                    return Err(Error::Validation(format!(
                        "cycle {id} uses ({u}, {v}) which is not an edge of the base graph"
                    )));
                }
                if !used.insert(edge_key(u, v)) {
                    return Err(Error::Validation(format!(
                        "cycle {id} reuses edge ({u}, {v})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Consecutive vertex pairs of a cycle, including the closing pair.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    let len = cycle.len();
    (0..len).map(move |i| (cycle[i], cycle[(i + 1) % len]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_contract() {
        let g = Arc::new(
            Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 3)]).unwrap(),
        );
        let ok = CycleSet::new(Arc::clone(&g), vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(ok.induced_degrees()[2], 4);
        assert!(CycleSet::new(Arc::clone(&g), vec![vec![0, 1, 2], vec![0, 1, 2]]).is_err());
        assert!(CycleSet::new(Arc::clone(&g), vec![vec![0, 1, 2, 3]]).is_err());
        assert!(CycleSet::new(g, vec![vec![0, 1, 4]]).is_err());
    }
}
