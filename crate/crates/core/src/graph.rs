//! Immutable simple undirected graphs in compressed adjacency form.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an edge so the smaller endpoint comes first.
#[inline]
pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph. Adjacency lists are sorted by neighbor id, so
/// the i-th neighbor of a vertex is well defined and reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicates and reversed duplicates
    /// collapse to one edge; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            list.push(edge_key(u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, &list))
    }

    fn from_sorted_unique(n: usize, edges: &[Edge]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, neighbors }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count()
            && v < self.vertex_count()
            && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &HashSet<Edge>) -> Graph {
        let kept: Vec<Edge> = self.edges().filter(|e| !removed.contains(e)).collect();
        Self::from_sorted_unique(self.vertex_count(), &kept)
    }

    /// Checks the structural invariants: symmetry, sortedness, no loops or
    /// parallel edges.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        for u in 0..n {
            let adj = self.neighbors(u);
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Validation(format!(
                        "adjacency of {u} not strictly sorted"
                    )));
                }
            }
            for &v in adj {
                if v == u {
                    return Err(Error::Validation(format!("self-loop at {u}")));
                }
                if v >= n || self.neighbors(v).binary_search(&u).is_err() {
                    return Err(Error::Validation(format!("edge ({u}, {v}) not symmetric")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_and_sorts() {
        let g = Graph::from_edges(4, [(2, 0), (0, 2), (3, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(matches!(
            Graph::from_edges(2, [(1, 1)]),
            Err(Error::Validation(_))
        ));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn residual_graph() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.without_edges(&HashSet::from([(0, 2)]));
        assert_eq!(h.edge_count(), 2);
        assert!(!h.has_edge(2, 0));
        assert!(h.has_edge(1, 2));
    }
}
