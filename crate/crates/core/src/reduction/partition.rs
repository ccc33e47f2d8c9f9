use std::collections::{HashMap, HashSet};

use crate::cycles::CycleSet;
use crate::error::{Error, Result};

/// A vertex contraction map `P`: every vertex points at the head of its
/// class. Goodness is relative to a set of cycles and is checked by
/// [`GoodPartition::audit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPartition {
    head_of: Vec<usize>,
}

impl GoodPartition {
    pub fn identity(n: usize) -> Self {
        GoodPartition {
            head_of: (0..n).collect(),
        }
    }

    /// Wraps a raw head map without checking anything.
    pub fn from_heads(head_of: Vec<usize>) -> Self {
        GoodPartition { head_of }
    }

    pub fn vertex_count(&self) -> usize {
        self.head_of.len()
    }

    #[inline]
    pub fn head(&self, v: usize) -> usize {
        self.head_of[v]
    }

    pub fn heads(&self) -> &[usize] {
        &self.head_of
    }

    pub fn is_head(&self, v: usize) -> bool {
        self.head_of[v] == v
    }

    /// `|P^{-1}(u)|` for every vertex id (0 for non-heads).
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut size = vec![0; self.head_of.len()];
        for &h in &self.head_of {
            size[h] += 1;
        }
        size
    }

    /// Sets `P(v) = v` for every vertex not on any of the given cycles.
    pub fn refix_isolated<'a>(&mut self, cycles: impl IntoIterator<Item = &'a [usize]>) {
        let mut on_cycle = vec![false; self.head_of.len()];
        for c in cycles {
            for &v in c {
                on_cycle[v] = true;
            }
        }
        for (v, on) in on_cycle.into_iter().enumerate() {
            if !on {
                self.head_of[v] = v;
            }
        }
    }

    pub(crate) fn heads_mut(&mut self) -> &mut [usize] {
        &mut self.head_of
    }

    /// Checks the four goodness properties against the cycles `active` of
    /// `cs`: heads are fixed points, vertices on no cycle are fixed, a class
    /// meeting a cycle has its head on that cycle, and a class meets each
    /// cycle in nothing, everything, or one contiguous path.
    pub fn audit(&self, cs: &CycleSet, active: &[usize]) -> Result<()> {
        let n = self.head_of.len();
        if n != cs.vertex_count() {
            return Err(Error::Partition {
                property: "domain",
                witness: format!(
                    "partition covers {n} vertices, graph has {}",
                    cs.vertex_count()
                ),
            });
        }
        for v in 0..n {
            let h = self.head_of[v];
            if h >= n || self.head_of[h] != h {
                return Err(Error::Partition {
                    property: "idempotence",
                    witness: format!("P({v}) = {h} but P({h}) != {h}"),
                });
            }
        }
        let mut on_cycle = vec![false; n];
        for &id in active {
            for &v in cs.cycle(id) {
                on_cycle[v] = true;
            }
        }
        if let Some(v) = (0..n).find(|&v| !on_cycle[v] && self.head_of[v] != v) {
            return Err(Error::Partition {
                property: "isolated-fixed",
                witness: format!(
                    "vertex {v} lies on no cycle but P({v}) = {}",
                    self.head_of[v]
                ),
            });
        }
        for &id in active {
            let c = cs.cycle(id);
            let members: HashSet<usize> = c.iter().copied().collect();
            if let Some(&v) = c.iter().find(|&&v| !members.contains(&self.head_of[v])) {
                return Err(Error::Partition {
                    property: "head-on-cycle",
                    witness: format!(
                        "cycle {id} meets the class of {} at {v} but does not contain {}",
                        self.head_of[v], self.head_of[v]
                    ),
                });
            }
            let len = c.len();
            let mut runs: HashMap<usize, usize> = HashMap::new();
            for i in 0..len {
                let h = self.head_of[c[i]];
                if h != self.head_of[c[(i + len - 1) % len]] {
                    *runs.entry(h).or_default() += 1;
                }
            }
            if let Some((&h, _)) = runs.iter().filter(|(_, &k)| k > 1).min() {
                return Err(Error::Partition {
                    property: "contiguous-class",
                    witness: format!("the class of {h} meets cycle {id} in a non-contiguous set"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle;
    use std::sync::Arc;

    fn c5() -> CycleSet {
        CycleSet::new(Arc::new(cycle(5).unwrap()), vec![vec![0, 1, 2, 3, 4]]).unwrap()
    }

    fn property(r: Result<()>) -> &'static str {
        match r {
            Err(Error::Partition { property, .. }) => property,
            other => panic!("expected a partition error, got {other:?}"),
        }
    }

    #[test]
    fn identity_is_good() {
        assert!(GoodPartition::identity(5).audit(&c5(), &[0]).is_ok());
    }

    #[test]
    fn contiguous_contraction_is_good() {
        let p = GoodPartition::from_heads(vec![0, 0, 0, 3, 3]);
        assert!(p.audit(&c5(), &[0]).is_ok());
        let full = GoodPartition::from_heads(vec![2; 5]);
        assert!(full.audit(&c5(), &[0]).is_ok());
    }

    #[test]
    fn each_property_has_a_witness() {
        let cs = c5();
        assert_eq!(
            property(GoodPartition::from_heads(vec![1, 2, 2, 3, 4]).audit(&cs, &[0])),
            "idempotence"
        );
        assert_eq!(
            property(GoodPartition::from_heads(vec![1, 1, 2, 3, 4]).audit(&cs, &[])),
            "isolated-fixed"
        );
        assert_eq!(
            property(GoodPartition::from_heads(vec![0, 0, 2, 0, 4]).audit(&cs, &[0])),
            "contiguous-class"
        );
        let two = CycleSet::new(
            Arc::new(crate::generators::disjoint_triangles(2)),
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        )
        .unwrap();
        assert_eq!(
            property(GoodPartition::from_heads(vec![0, 1, 2, 0, 4, 5]).audit(&two, &[0, 1])),
            "head-on-cycle"
        );
    }

    #[test]
    fn refixing() {
        let mut p = GoodPartition::from_heads(vec![0, 0, 0, 3, 3]);
        p.refix_isolated(std::iter::empty());
        assert_eq!(p, GoodPartition::identity(5));
    }
}
