//! Union-find with parity, for incremental odd-cycle detection.
//!
//! Each element stores its 2-coloring parity relative to its parent. Adding
//! an edge `(u, v, p)` asserts `color(u) xor color(v) == p`; a conflict means
//! the edges seen so far admit no consistent 2-coloring, i.e. they contain a
//! cycle of odd total parity.

use std::collections::HashMap;

#[derive(Debug, Clone, Default)]
pub struct ParityDsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity_to_parent: Vec<u8>,
}

impl ParityDsu {
    pub fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
            parity_to_parent: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Registers a fresh singleton and returns its index.
    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.rank.push(0);
        self.parity_to_parent.push(0);
        id
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut root = x;
        let mut parity = 0u8;
        while self.parent[root] != root {
            parity ^= self.parity_to_parent[root];
            root = self.parent[root];
        }
        // Second pass: point everything on the path at the root, keeping the
        // parity each node has relative to it.
        let mut cur = x;
        let mut cur_parity = parity;
        while self.parent[cur] != root && self.parent[cur] != cur {
            let next = self.parent[cur];
            let next_parity = cur_parity ^ self.parity_to_parent[cur];
            self.parent[cur] = root;
            self.parity_to_parent[cur] = cur_parity;
            cur = next;
            cur_parity = next_parity;
        }
        (root, parity)
    }

    /// Adds the constraint `color(u) xor color(v) == parity`. Returns `true`
    /// iff it contradicts the constraints already present; a conflicting
    /// edge leaves the structure untouched.
    pub fn add_edge(&mut self, u: usize, v: usize, parity: u8) -> bool {
        let parity = parity & 1;
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return (pu ^ pv) != parity;
        }
        let link = pu ^ pv ^ parity;
        let (child, root) = match self.rank[ru].cmp(&self.rank[rv]) {
            std::cmp::Ordering::Less => (ru, rv),
            std::cmp::Ordering::Greater => (rv, ru),
            std::cmp::Ordering::Equal => {
                self.rank[ru] += 1;
                (rv, ru)
            }
        };
        self.parent[child] = root;
        self.parity_to_parent[child] = link;
        false
    }
}

/// [`ParityDsu`] over arbitrary vertex ids, registering them on first use.
/// Memory is proportional to the number of distinct ids touched, which keeps
/// a walk's bookkeeping independent of the graph size.
#[derive(Debug, Clone, Default)]
pub struct SparseParityDsu {
    index: HashMap<usize, usize>,
    inner: ParityDsu,
}

impl SparseParityDsu {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&mut self, id: usize) -> usize {
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = self.inner.push();
        self.index.insert(id, i);
        i
    }

    pub fn add_edge(&mut self, u: usize, v: usize, parity: u8) -> bool {
        let a = self.slot(u);
        let b = self.slot(v);
        self.inner.add_edge(a, b, parity)
    }

    pub fn touched(&self) -> usize {
        self.index.len()
    }
}
