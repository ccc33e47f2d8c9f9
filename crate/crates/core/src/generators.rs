//! Instance families: bipartite controls, far-from-bipartite planar families,
//! the triangle-substituted expander control, and the degree-3 splitting
//! transform.
//!
//! Every generator is a pure function of its parameters (and of the random
//! stream, where one is taken).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{edge_key, Edge, Graph};

/// Per-vertex neighbor order, e.g. the rotation system of a planar embedding.
pub type Rotation = Vec<Vec<usize>>;

/// Cycle `C_n` for even `n >= 4`.
pub fn even_cycle(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Domain(format!(
            "even cycle needs an even length >= 4, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Cycle `C_n` of any length `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Domain(format!("cycle needs length >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen is simple")
}

/// `rows x cols` grid, vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::Domain(format!(
            "grid dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// `m` triangles glued in a path at shared cut vertices: triangle `i` is
/// `{2i, 2i+1, 2i+2}`, so `n = 2m + 1` and the triangles are edge-disjoint.
pub fn triangle_chain(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::Domain("triangle chain needs m >= 1".into()));
    }
    let edges = (0..m).flat_map(|i| {
        let (a, b, c) = (2 * i, 2 * i + 1, 2 * i + 2);
        [(a, b), (b, c), (a, c)]
    });
    Graph::from_edges(2 * m + 1, edges)
}

/// Rotation system of a planar embedding of [`triangle_chain`] in which each
/// triangle is drawn inside its predecessor. Around a shared vertex `2i+2`
/// the order is `2i, 2i+3, 2i+4, 2i+1`, so the inner triangle's two edges sit
/// between the outer triangle's two edges.
pub fn triangle_chain_nested_rotation(m: usize) -> Result<Rotation> {
    let g = triangle_chain(m)?;
    let mut rot: Rotation = (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_vec())
        .collect();
    for i in 0..m.saturating_sub(1) {
        rot[2 * i + 2] = vec![2 * i, 2 * i + 3, 2 * i + 4, 2 * i + 1];
    }
    Ok(rot)
}

/// `m` vertex-disjoint triangles.
pub fn disjoint_triangles(m: usize) -> Graph {
    Graph::from_edges(
        3 * m,
        (0..m).flat_map(|i| {
            let b = 3 * i;
            [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
        }),
    )
    .expect("disjoint triangles are simple")
}

/// Parallel cycles through few high-degree vertices.
///
/// * `hubs == 2`: hubs `0` and `1` joined by `paths` internally disjoint
///   paths whose lengths alternate `path_len`, `path_len + 1`, so adjacent
///   paths close odd cycles. With `path_len == 1` every odd-indexed path is
///   the single hub edge, which a simple graph holds once; the instance is
///   then a book of triangles sharing that edge.
/// * `hubs == 1`: `paths` petals, each a cycle of length `2 * path_len + 1`
///   through hub `0`.
pub fn parallel_cycles(hubs: usize, paths: usize, path_len: usize) -> Result<Graph> {
    if paths < 2 || path_len < 1 {
        return Err(Error::Domain(format!(
            "parallel cycles need paths >= 2 and path_len >= 1, got paths={paths}, path_len={path_len}"
        )));
    }
    let mut edges = Vec::new();
    let mut next = hubs;
    let mut add_path = |from: usize, to: usize, len: usize, edges: &mut Vec<Edge>| {
        let mut prev = from;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, to));
    };
    match hubs {
        1 => {
            for _ in 0..paths {
                add_path(0, 0, 2 * path_len + 1, &mut edges);
            }
        }
        2 => {
            for p in 0..paths {
                let len = if p % 2 == 0 { path_len } else { path_len + 1 };
                add_path(0, 1, len, &mut edges);
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "parallel cycles support 1 or 2 hubs, got {hubs}"
            )))
        }
    }
    Graph::from_edges(next, edges)
}

/// Replaces every edge `(u, v)` of `seed` by the triangle `{u, v, w_uv}` with
/// a fresh vertex `w_uv`. Vertex ids of `seed` are kept; the new vertices
/// follow in edge order.
pub fn expander_triangles(seed: &Graph) -> Graph {
    let n = seed.vertex_count();
    let mut edges = Vec::with_capacity(3 * seed.edge_count());
    for (k, (u, v)) in seed.edges().enumerate() {
        let w = n + k;
        edges.extend([(u, v), (u, w), (w, v)]);
    }
    Graph::from_edges(n + seed.edge_count(), edges).expect("triangle substitution is simple")
}

/// Random `degree`-regular graph on `n` vertices with girth at least
/// `min_girth`, built by a pairing process that rejects pairs closing a short
/// cycle, followed by edge switches for the stubs left over.
pub fn random_regular<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    min_girth: usize,
    rng: &mut R,
) -> Result<Graph> {
    if degree >= n || (n * degree) % 2 == 1 {
        return Err(Error::Domain(format!(
            "no {degree}-regular graph on {n} vertices"
        )));
    }
    // An edge (u, v) closes a cycle of length dist(u, v) + 1.
    let min_dist = min_girth.saturating_sub(1).max(2);
    for _attempt in 0..8 {
        if let Some(adj) = try_random_regular(n, degree, min_dist, rng) {
            let g = Graph::from_edges(
                n,
                adj.iter()
                    .enumerate()
                    .flat_map(|(u, ns)| ns.iter().map(move |&v| (u, v))),
            )?;
            return Ok(g);
        }
    }
    Err(Error::Domain(format!(
        "could not realize a {degree}-regular graph on {n} vertices with girth >= {min_girth}"
    )))
}

fn within_distance(adj: &[Vec<usize>], u: usize, v: usize, limit: usize) -> bool {
    // Bidirectional ball intersection: dist(u, v) <= limit.
    if u == v {
        return true;
    }
    let r_u = limit / 2;
    let r_v = limit - r_u;
    let ball = |s: usize, r: usize| {
        let mut seen: HashSet<usize> = HashSet::from([s]);
        let mut frontier = vec![s];
        for _ in 0..r {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &adj[x] {
                    if seen.insert(y) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        seen
    };
    let small = ball(u, r_u);
    let large = ball(v, r_v);
    small.iter().any(|x| large.contains(x))
}

fn try_random_regular<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    min_dist: usize,
    rng: &mut R,
) -> Option<Vec<Vec<usize>>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(degree); n];
    let mut pool: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    pool.shuffle(rng);
    let too_close =
        |adj: &[Vec<usize>], u: usize, v: usize| within_distance(adj, u, v, min_dist - 1);

    let mut failures = 0usize;
    while pool.len() >= 2 && failures < 50 * pool.len() + 1000 {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len() - 1);
        if j >= i {
            j += 1;
        }
        let (u, v) = (pool[i], pool[j]);
        if too_close(&adj, u, v) {
            failures += 1;
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        pool.swap_remove(hi);
        pool.swap_remove(lo);
        failures = 0;
    }

    // Switch repair: for leftover stubs u, v remove a random far edge (a, b)
    // and add (u, a), (v, b).
    let mut budget = 200 * (pool.len() + 1);
    while let Some(&u) = pool.last() {
        if pool.len() < 2 || budget == 0 {
            return None;
        }
        budget -= 1;
        let v = pool[pool.len() - 2];
        let a = rng.gen_range(0..n);
        if adj[a].is_empty() {
            continue;
        }
        let b = adj[a][rng.gen_range(0..adj[a].len())];
        if [a, b].contains(&u) || [a, b].contains(&v) {
            continue;
        }
        remove_edge(&mut adj, a, b);
        if too_close(&adj, u, a) {
            add_edge(&mut adj, a, b);
            continue;
        }
        add_edge(&mut adj, u, a);
        if too_close(&adj, v, b) {
            remove_edge(&mut adj, u, a);
            add_edge(&mut adj, a, b);
            continue;
        }
        add_edge(&mut adj, v, b);
        pool.pop();
        pool.pop();
    }
    Some(adj)
}

fn add_edge(adj: &mut [Vec<usize>], u: usize, v: usize) {
    adj[u].push(v);
    adj[v].push(u);
}

fn remove_edge(adj: &mut [Vec<usize>], u: usize, v: usize) {
    adj[u].retain(|&x| x != v);
    adj[v].retain(|&x| x != u);
}

/// Length of a shortest cycle, or `None` for a forest. Only cycles of length
/// at most `limit` are searched for.
pub fn girth_up_to(g: &Graph, limit: usize) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        let mut touched = vec![s];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 > limit.min(best.unwrap_or(usize::MAX)) {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if len <= limit && best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                    if best == Some(3) {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    best
}

/// Random subgraph of a triangulated `rows x cols` grid (each cell split by
/// one diagonal); every edge is kept with probability `keep`. Planar.
pub fn random_planar<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    keep: f64,
    rng: &mut R,
) -> Result<Graph> {
    let base = grid(rows, cols)?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges: Vec<Edge> = base.edges().collect();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            edges.push(if rng.gen_bool(0.5) {
                (id(r, c), id(r + 1, c + 1))
            } else {
                (id(r, c + 1), id(r + 1, c))
            });
        }
    }
    let kept = edges.into_iter().filter(|_| rng.gen_bool(keep));
    Graph::from_edges(rows * cols, kept)
}

/// [`split_to_degree3_with_rotation`] using each vertex's sorted adjacency
/// order.
pub fn split_to_degree3(g: &Graph) -> Graph {
    let rotation: Rotation = (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_vec())
        .collect();
    split_to_degree3_with_rotation(g, &rotation).expect("sorted adjacency is a valid order")
}

/// Replaces every vertex of degree `d > 3` by a path of `d` gadget vertices,
/// one per incident edge in `rotation` order, and subdivides each gadget path
/// edge once. Gadget vertices of one original vertex are then pairwise at
/// even distance, so the output is bipartite iff the input is. Maximum
/// degree of the output is at most 3; the output is planar when `rotation`
/// is the rotation system of a planar embedding.
///
/// Unsplit vertices keep their ids, and the first gadget vertex of a split
/// vertex reuses the original id.
pub fn split_to_degree3_with_rotation(g: &Graph, rotation: &Rotation) -> Result<Graph> {
    let n = g.vertex_count();
    if rotation.len() != n {
        return Err(Error::Domain("rotation must list every vertex".into()));
    }
    let mut next = n;
    let mut edges = Vec::new();
    // port[v] maps a neighbor u to the gadget vertex of v that carries (v, u).
    let mut port: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        let order = &rotation[v];
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(Error::Domain(format!(
                "rotation at {v} is not a permutation of its neighbors"
            )));
        }
        if order.len() <= 3 {
            port[v] = order.iter().map(|&u| (u, v)).collect();
            continue;
        }
        let mut prev = v;
        for (i, &u) in order.iter().enumerate() {
            let gadget = if i == 0 {
                v
            } else {
                let sub = next;
                let gadget = next + 1;
                next += 2;
                edges.push((prev, sub));
                edges.push((sub, gadget));
                gadget
            };
            port[v].push((u, gadget));
            prev = gadget;
        }
    }
    for (u, v) in g.edges() {
        let find = |x: usize, y: usize| {
            port[x]
                .iter()
                .find(|(nb, _)| *nb == y)
                .map(|p| p.1)
                .unwrap()
        };
        edges.push(edge_key(find(u, v), find(v, u)));
    }
    Graph::from_edges(next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycles_and_grids() {
        assert_eq!(even_cycle(4).unwrap().edge_count(), 4);
        assert!(even_cycle(5).is_err());
        assert!(even_cycle(2).is_err());
        assert_eq!(grid(1, 2).unwrap().edge_count(), 1);
        let sq = grid(2, 2).unwrap();
        assert_eq!(sq.edge_count(), 4);
        assert!((0..4).all(|v| sq.degree(v) == 2));
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn grid_edge_count_formula() {
        for (r, c) in [(10, 10), (3, 7), (1, 5)] {
            let g = grid(r, c).unwrap();
            let direct: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum::<usize>() / 2;
            assert_eq!(direct, 2 * r * c - r - c);
            assert_eq!(g.edge_count(), direct);
        }
        assert_eq!(grid(10, 10).unwrap().edge_count(), 180);
        assert_eq!(grid(10, 10).unwrap().max_degree(), 4);
    }

    #[test]
    fn triangle_chain_shape() {
        let k3 = triangle_chain(1).unwrap();
        assert_eq!(k3, complete(3));
        let g = triangle_chain(4).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(2), 4);
    }

    #[test]
    fn parallel_cycle_shapes() {
        let bowtie = parallel_cycles(1, 2, 1).unwrap();
        assert_eq!(bowtie.vertex_count(), 5);
        assert_eq!(bowtie.edge_count(), 6);
        assert_eq!(bowtie.degree(0), 4);
        let tri = parallel_cycles(2, 2, 1).unwrap();
        assert_eq!(tri, complete(3));
        let g = parallel_cycles(2, 4, 2).unwrap();
        // lengths 2, 3, 2, 3: 1 + 2 + 1 + 2 internal vertices
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(0), 4);
        assert!(parallel_cycles(3, 4, 1).is_err());
        assert!(parallel_cycles(2, 1, 1).is_err());
        assert!(parallel_cycles(2, 4, 0).is_err());
    }

    #[test]
    fn expander_triangle_counts() {
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(expander_triangles(&edge), complete(3));
        let c4 = even_cycle(4).unwrap();
        let t = expander_triangles(&c4);
        assert_eq!(t.vertex_count(), 8);
        assert_eq!(t.edge_count(), 12);
    }

    #[test]
    fn random_regular_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_regular(200, 4, 5, &mut rng).unwrap();
        assert!((0..200).all(|v| g.degree(v) == 4));
        assert!(girth_up_to(&g, 4).is_none());
    }

    #[test]
    fn girth_detection() {
        assert_eq!(girth_up_to(&complete(4), 10), Some(3));
        assert_eq!(girth_up_to(&even_cycle(8).unwrap(), 10), Some(8));
        assert_eq!(girth_up_to(&petersen(), 10), Some(5));
        assert_eq!(girth_up_to(&path(5), 10), None);
    }

    #[test]
    fn split_leaves_low_degree_graphs_alone() {
        let g = petersen();
        assert_eq!(split_to_degree3(&g), g);
    }

    #[test]
    fn split_bounds_degree() {
        let star = Graph::from_edges(7, (1..7).map(|i| (0, i))).unwrap();
        let s = split_to_degree3(&star);
        assert!(s.max_degree() <= 3);
        // 6 gadget vertices (one reuses 0), 5 subdivisions, 6 leaves
        assert_eq!(s.vertex_count(), 7 + 5 + 5);
        assert_eq!(s.edge_count(), 6 + 10);
    }

    #[test]
    fn nested_rotation_is_a_permutation() {
        let g = triangle_chain(4).unwrap();
        let rot = triangle_chain_nested_rotation(4).unwrap();
        let s = split_to_degree3_with_rotation(&g, &rot).unwrap();
        assert!(s.max_degree() <= 3);
        let mut bad = rot.clone();
        bad[2] = vec![0, 1, 3, 5];
        assert!(split_to_degree3_with_rotation(&g, &bad).is_err());
    }
}
