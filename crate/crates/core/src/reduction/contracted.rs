use std::collections::HashMap;
use std::sync::Arc;

use crate::cycles::CycleSet;
use crate::error::{Error, Result};

use super::partition::GoodPartition;

/// The contracted image `P(c)` of one cycle: its distinct heads in cycle
/// order, rotated to start at the smallest head, and the parity of the edge
/// from each head to the next. One head is a self-loop; two heads are a pair
/// of parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleImage {
    pub heads: Vec<usize>,
    pub parities: Vec<u8>,
}

impl CycleImage {
    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn is_self_loop(&self) -> bool {
        self.heads.len() == 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.heads.contains(&v)
    }

    /// Image edges `(from, to, parity)` in cycle order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        let r = self.heads.len();
        (0..r).map(move |i| (self.heads[i], self.heads[(i + 1) % r], self.parities[i]))
    }

    pub fn parity_sum(&self) -> u8 {
        self.parities.iter().fold(0, |acc, p| acc ^ p)
    }

    /// The two edges at `v`, as `(neighbor, parity)`: the one entering `v`
    /// and the one leaving it. `None` if `v` is not on the image.
    pub fn edges_at(&self, v: usize) -> Option<[(usize, u8); 2]> {
        let r = self.heads.len();
        let i = self.heads.iter().position(|&h| h == v)?;
        let prev = (i + r - 1) % r;
        Some([
            (self.heads[prev], self.parities[prev]),
            (self.heads[(i + 1) % r], self.parities[i]),
        ])
    }

    fn canonical(mut heads: Vec<usize>, mut parities: Vec<u8>) -> Self {
        if let Some(start) = heads
            .iter()
            .enumerate()
            .min_by_key(|(_, &h)| h)
            .map(|(i, _)| i)
        {
            heads.rotate_left(start);
            parities.rotate_left(start);
        }
        CycleImage { heads, parities }
    }

    /// Contracts the heads in `q` into their neighbors. The parity of the
    /// merged edge is the sum of the two edges it replaces.
    pub(crate) fn contract(&self, in_q: impl Fn(usize) -> bool) -> CycleImage {
        let r = self.heads.len();
        let Some(start) = (0..r).find(|&i| !in_q(self.heads[i])) else {
            return self.clone();
        };
        let mut heads = Vec::with_capacity(r);
        let mut parities: Vec<u8> = Vec::with_capacity(r);
        for k in 0..r {
            let i = (start + k) % r;
            if in_q(self.heads[i]) {
                *parities.last_mut().expect("first head is kept") ^= self.parities[i];
            } else {
                heads.push(self.heads[i]);
                parities.push(self.parities[i]);
            }
        }
        CycleImage::canonical(heads, parities)
    }
}

/// Image of one base cycle under `p`. Assumes `p` is good for the cycle.
pub fn cycle_image(cycle: &[usize], p: &GoodPartition) -> CycleImage {
    let len = cycle.len();
    let h = |i: usize| p.head(cycle[i % len]);
    let Some(first) = (0..len).find(|&i| h(i) != h(i + len - 1)) else {
        return CycleImage {
            heads: vec![h(0)],
            parities: vec![(len % 2) as u8],
        };
    };
    // position of each head vertex on the cycle
    let pos: HashMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut heads = Vec::new();
    for k in 0..len {
        let i = first + k;
        if h(i) != h(i + len - 1) {
            heads.push(h(i));
        }
    }
    let r = heads.len();
    let parities = (0..r)
        .map(|j| {
            let a = pos[&heads[j]];
            let b = pos[&heads[(j + 1) % r]];
            (((b + len - a) % len) % 2) as u8
        })
        .collect();
    CycleImage::canonical(heads, parities)
}

/// A cycle collection `C_i` (as ids into the original collection), a
/// partition good for it, and the contracted image of every cycle.
#[derive(Debug, Clone)]
pub struct ContractedState {
    root: Arc<CycleSet>,
    active: Vec<usize>,
    partition: GoodPartition,
    images: Vec<CycleImage>,
}

/// Computes the images of the `active` cycles of `root` under `p`, after
/// checking that `p` is good for them.
pub fn build_contracted(
    root: &Arc<CycleSet>,
    active: Vec<usize>,
    p: GoodPartition,
) -> Result<ContractedState> {
    p.audit(root, &active)?;
    let images = active
        .iter()
        .map(|&id| cycle_image(root.cycle(id), &p))
        .collect();
    Ok(ContractedState {
        root: Arc::clone(root),
        active,
        partition: p,
        images,
    })
}

impl ContractedState {
    /// All cycles of `root` under the identity partition.
    pub fn identity(root: Arc<CycleSet>) -> Self {
        let p = GoodPartition::identity(root.vertex_count());
        let active: Vec<usize> = (0..root.len()).collect();
        build_contracted(&root, active, p).expect("the identity partition is good")
    }

    pub(crate) fn from_parts(
        root: Arc<CycleSet>,
        active: Vec<usize>,
        partition: GoodPartition,
        images: Vec<CycleImage>,
    ) -> Self {
        ContractedState {
            root,
            active,
            partition,
            images,
        }
    }

    pub fn root(&self) -> &Arc<CycleSet> {
        &self.root
    }

    /// Ids (into the root collection) of the current cycles, ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn partition(&self) -> &GoodPartition {
        &self.partition
    }

    /// Images aligned with [`active`](Self::active).
    pub fn images(&self) -> &[CycleImage] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.root.vertex_count()
    }

    pub fn cycle_set(&self) -> CycleSet {
        self.root.subset(&self.active)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(CycleImage::len).max().unwrap_or(0)
    }

    pub fn self_loop_count(&self) -> usize {
        self.images.iter().filter(|im| im.is_self_loop()).count()
    }

    pub fn all_self_loops(&self) -> bool {
        self.images.iter().all(CycleImage::is_self_loop)
    }

    /// Keeps the cycles at the given positions (ascending) and re-fixes the
    /// vertices that became isolated. Images are unaffected by re-fixing.
    pub fn restrict(&self, positions: &[usize]) -> ContractedState {
        let active: Vec<usize> = positions.iter().map(|&i| self.active[i]).collect();
        let images = positions.iter().map(|&i| self.images[i].clone()).collect();
        let mut partition = self.partition.clone();
        partition.refix_isolated(active.iter().map(|&id| self.root.cycle(id)));
        ContractedState {
            root: Arc::clone(&self.root),
            active,
            partition,
            images,
        }
    }

    pub fn multigraph(&self) -> ContractedMultigraph {
        let edges = self
            .images
            .iter()
            .zip(&self.active)
            .flat_map(|(im, &id)| {
                im.edges().map(move |(a, b, parity)| MultiEdge {
                    a,
                    b,
                    parity,
                    origin: id,
                })
            })
            .collect();
        ContractedMultigraph::new(self.partition.heads().to_vec(), edges)
            .expect("images of odd cycles form a valid multigraph")
    }

    /// Goodness of the partition, the per-cycle parity law, and agreement of
    /// the stored images with a recomputation from the base cycles.
    pub fn audit(&self) -> Result<()> {
        self.partition.audit(&self.root, &self.active)?;
        for (im, &id) in self.images.iter().zip(&self.active) {
            if im.parity_sum() != 1 {
                return Err(Error::Reduction(format!(
                    "image of cycle {id} has even parity"
                )));
            }
            if *im != cycle_image(self.root.cycle(id), &self.partition) {
                return Err(Error::Reduction(format!(
                    "stored image of cycle {id} disagrees with the partition"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiEdge {
    pub a: usize,
    /// Equal to `a` for a self-loop.
    pub b: usize,
    pub parity: u8,
    /// Id of the base cycle this edge comes from.
    pub origin: usize,
}

/// The multigraph `G_P(C)` on the image of `P`. Vertices keep their base
/// ids; non-heads simply have no edges and class size 0.
#[derive(Debug, Clone)]
pub struct ContractedMultigraph {
    head_of: Vec<usize>,
    class_size: Vec<usize>,
    edges: Vec<MultiEdge>,
    incident: Vec<Vec<usize>>,
}

impl ContractedMultigraph {
    /// Validates that endpoints are heads and that self-loops are odd.
    pub fn new(head_of: Vec<usize>, edges: Vec<MultiEdge>) -> Result<Self> {
        let n = head_of.len();
        if let Some(v) = (0..n).find(|&v| head_of[v] >= n || head_of[head_of[v]] != head_of[v]) {
            return Err(Error::Validation(format!(
                "head map is not idempotent at {v}"
            )));
        }
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for x in [e.a, e.b] {
                if x >= n || head_of[x] != x {
                    return Err(Error::Validation(format!(
                        "edge endpoint {x} is not an image vertex"
                    )));
                }
            }
            if e.a == e.b && e.parity & 1 == 0 {
                return Err(Error::Validation(format!(
                    "self-loop at {} has even parity",
                    e.a
                )));
            }
            incident[e.a].push(i);
            if e.b != e.a {
                incident[e.b].push(i);
            }
        }
        let mut class_size = vec![0; n];
        for &h in &head_of {
            class_size[h] += 1;
        }
        Ok(ContractedMultigraph {
            head_of,
            class_size,
            edges,
            incident,
        })
    }

    /// Size of the base vertex set.
    pub fn base_vertex_count(&self) -> usize {
        self.head_of.len()
    }

    pub fn head(&self, v: usize) -> usize {
        self.head_of[v]
    }

    pub fn class_size(&self, u: usize) -> usize {
        self.class_size[u]
    }

    pub fn image_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.head_of.len()).filter(|&v| self.head_of[v] == v)
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    /// Ids of the edges at `u`; a self-loop is listed once.
    pub fn incident(&self, u: usize) -> &[usize] {
        &self.incident[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.incident[u].len()
    }

    /// Fraction of base vertices whose head carries a self-loop.
    pub fn self_loop_mass(&self) -> f64 {
        let looped: usize = self
            .image_vertices()
            .filter(|&u| {
                self.incident[u]
                    .iter()
                    .any(|&i| self.edges[i].a == self.edges[i].b)
            })
            .map(|u| self.class_size[u])
            .sum();
        looped as f64 / self.head_of.len().max(1) as f64
    }
}

/// Adjacency bookkeeping over a subset of images: per vertex, the distinct
/// neighbors with edge multiplicities (a self-loop makes a vertex its own
/// neighbor) and the images through it.
pub(crate) struct ImageIndex {
    pub nbr: Vec<HashMap<usize, usize>>,
    pub through: Vec<Vec<usize>>,
}

impl ImageIndex {
    pub fn new(n: usize, images: &[CycleImage]) -> Self {
        let mut index = ImageIndex {
            nbr: vec![HashMap::new(); n],
            through: vec![Vec::new(); n],
        };
        for (pos, im) in images.iter().enumerate() {
            for &h in &im.heads {
                index.through[h].push(pos);
            }
            index.add(im);
        }
        index
    }

    pub fn add(&mut self, im: &CycleImage) {
        for (a, b, _) in im.edges() {
            *self.nbr[a].entry(b).or_default() += 1;
            if a != b {
                *self.nbr[b].entry(a).or_default() += 1;
            }
        }
    }

    /// Removes an image's edges; returns the touched heads.
    pub fn remove<'a>(&mut self, im: &'a CycleImage) -> &'a [usize] {
        for (a, b, _) in im.edges() {
            Self::dec(&mut self.nbr[a], b);
            if a != b {
                Self::dec(&mut self.nbr[b], a);
            }
        }
        &im.heads
    }

    fn dec(map: &mut HashMap<usize, usize>, key: usize) {
        if let Some(m) = map.get_mut(&key) {
            *m -= 1;
            if *m == 0 {
                map.remove(&key);
            }
        }
    }

    pub fn distinct_neighbors(&self, v: usize) -> usize {
        self.nbr[v].len()
    }

    pub fn sorted_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.nbr[v].keys().copied().collect();
        out.sort_unstable();
        out
    }

    /// Image degree of `v`: each self-loop counts once, other edges once per
    /// endpoint.
    pub fn degree(&self, v: usize) -> usize {
        self.nbr[v].values().sum()
    }
}

/// Whether `v` is well-contractible in the multigraph of `images`: it has
/// exactly one distinct neighbor, or two neighbors `x, y` such that every
/// image through `v` contains both and all `(x, v)` edges share a parity,
/// as do all `(v, y)` edges. A vertex with a self-loop never qualifies.
pub(crate) fn well_contractible(index: &ImageIndex, images: &[CycleImage], v: usize) -> bool {
    let nbrs = &index.nbr[v];
    if nbrs.contains_key(&v) {
        return false;
    }
    match nbrs.len() {
        1 => true,
        2 => {
            let mut seen: HashMap<usize, u8> = HashMap::new();
            for &pos in &index.through[v] {
                let Some(at) = images[pos].edges_at(v) else {
                    continue;
                };
                if at[0].0 == at[1].0 {
                    // a two-head image misses the second neighbor
                    return false;
                }
                for (x, p) in at {
                    if *seen.entry(x).or_insert(p) != p {
                        return false;
                    }
                }
            }
            true
        }
        _ => false,
    }
}

/// Heads with at least one image edge that are well-contractible.
pub fn well_contractible_vertices(state: &ContractedState) -> Vec<usize> {
    let index = ImageIndex::new(state.vertex_count(), state.images());
    (0..state.vertex_count())
        .filter(|&v| !index.nbr[v].is_empty() && well_contractible(&index, state.images(), v))
        .collect()
}

/// Public form of the well-contractibility test for a state.
pub fn is_well_contractible(state: &ContractedState, v: usize) -> bool {
    let index = ImageIndex::new(state.vertex_count(), state.images());
    !index.nbr[v].is_empty() && well_contractible(&index, state.images(), v)
}
