//! Query access to a graph with per-kind accounting.
//!
//! Testers never see a [`Graph`] directly. They hold an [`OracleHandle`],
//! which answers degree, i-th neighbor and random-neighbor queries and counts
//! each one. The vertex count is part of the access model and is not a query.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Raw structure reads the oracle is allowed to make on its target.
pub trait GraphAccess {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    fn neighbor(&self, v: usize, i: usize) -> usize;
}

impl GraphAccess for Graph {
    fn vertex_count(&self) -> usize {
        Graph::vertex_count(self)
    }
    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }
    fn neighbor(&self, v: usize, i: usize) -> usize {
        self.neighbors(v)[i]
    }
}

/// Query totals for one handle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct QueryTally {
    pub degree: u64,
    pub neighbor: u64,
    pub random_neighbor: u64,
}

impl QueryTally {
    pub fn total(&self) -> u64 {
        self.degree + self.neighbor + self.random_neighbor
    }
}

impl std::ops::AddAssign for QueryTally {
    fn add_assign(&mut self, rhs: Self) {
        self.degree += rhs.degree;
        self.neighbor += rhs.neighbor;
        self.random_neighbor += rhs.random_neighbor;
    }
}

pub struct OracleHandle<'a, A: GraphAccess + ?Sized = Graph> {
    target: &'a A,
    tally: QueryTally,
}

impl<'a, A: GraphAccess + ?Sized> OracleHandle<'a, A> {
    pub fn new(target: &'a A) -> Self {
        OracleHandle {
            target,
            tally: QueryTally::default(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.target.vertex_count()
    }

    pub fn tally(&self) -> QueryTally {
        self.tally
    }

    pub fn degree(&mut self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.tally.degree += 1;
        Ok(self.target.degree(v))
    }

    /// The i-th entry of `v`'s sorted adjacency list.
    pub fn neighbor(&mut self, v: usize, i: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let d = self.target.degree(v);
        if i >= d {
            return Err(Error::Domain(format!(
                "neighbor index {i} out of range for vertex {v} of degree {d}"
            )));
        }
        self.tally.neighbor += 1;
        Ok(self.target.neighbor(v, i))
    }

    /// A neighbor of `v` drawn uniformly and independently per call.
    pub fn random_neighbor<R: Rng + ?Sized>(&mut self, v: usize, rng: &mut R) -> Result<usize> {
        self.check_vertex(v)?;
        let d = self.target.degree(v);
        if d == 0 {
            return Err(Error::Domain(format!("vertex {v} is isolated")));
        }
        self.tally.random_neighbor += 1;
        Ok(self.target.neighbor(v, rng.gen_range(0..d)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        let n = self.target.vertex_count();
        if v >= n {
            return Err(Error::Domain(format!(
                "vertex {v} out of range for {n} vertices"
            )));
        }
        Ok(())
    }
}
