#![allow(dead_code)]

use std::sync::Arc;

use oddwalk::exact::packing_lower_bound;
use oddwalk::generators::*;
use oddwalk::harvest::{degree_prune, harvest_odd_cycles};
use oddwalk::tester::trial_rng;
use oddwalk::{CycleSet, Graph};

pub struct Fixture {
    pub name: &'static str,
    pub cycles: Arc<CycleSet>,
}

fn fixture(name: &'static str, g: Graph, cycles: Vec<Vec<usize>>) -> Fixture {
    Fixture {
        name,
        cycles: Arc::new(CycleSet::new(Arc::new(g), cycles).unwrap()),
    }
}

fn packed(name: &'static str, g: Graph) -> Fixture {
    let (_, cs) = packing_lower_bound(&g, None);
    Fixture {
        name,
        cycles: Arc::new(cs),
    }
}

fn triangles(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect()
}

fn chain_triangles(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect()
}

/// Hub 0 adjacent to 1..=100, triangle (0, 1, 2) and a chain of triangles
/// hanging off vertex 2.
fn hub_with_chain() -> Fixture {
    let mut edges: Vec<(usize, usize)> = (1..=100).map(|i| (0, i)).collect();
    edges.push((1, 2));
    let mut cycles = vec![vec![0, 1, 2]];
    for i in 1..50 {
        let (a, b, c) = (2 * i, 2 * i + 1, 2 * i + 2);
        edges.extend([(a, b), (b, c), (a, c)]);
        cycles.push(vec![a, b, c]);
    }
    fixture(
        "hub-with-chain",
        Graph::from_edges(101, edges).unwrap(),
        cycles,
    )
}

/// A triangle, a 5-cycle and a 7-cycle sharing vertex 0.
fn mixed_petals() -> Fixture {
    let mut edges = Vec::new();
    let mut cycles = Vec::new();
    let mut next = 1;
    for len in [3, 5, 7] {
        let mut c = vec![0];
        for _ in 1..len {
            c.push(next);
            next += 1;
        }
        for i in 0..len {
            edges.push((c[i], c[(i + 1) % len]));
        }
        cycles.push(c);
    }
    fixture(
        "mixed-petals",
        Graph::from_edges(next, edges).unwrap(),
        cycles,
    )
}

/// Wheel with an odd rim of 9 vertices.
fn wheel() -> Graph {
    let rim = 9;
    let mut edges: Vec<(usize, usize)> = (1..=rim).map(|i| (0, i)).collect();
    edges.extend((1..=rim).map(|i| (i, i % rim + 1)));
    Graph::from_edges(rim + 1, edges).unwrap()
}

/// The bundled cycle-collection fixtures. All are planar.
pub fn fixtures() -> Vec<Fixture> {
    let chain200 = triangle_chain(200).unwrap();
    let harvested = harvest_odd_cycles(&chain200, 0.3, &mut trial_rng(5, 0))
        .unwrap()
        .cycles;
    let pruned_planar = {
        let g = random_planar(25, 25, 0.8, &mut trial_rng(9, 0)).unwrap();
        degree_prune(
            &harvest_odd_cycles(&g, 0.3, &mut trial_rng(9, 1))
                .unwrap()
                .cycles,
        )
    };
    vec![
        fixture("triangle", disjoint_triangles(1), triangles(1)),
        fixture("disjoint-triangles-5", disjoint_triangles(5), triangles(5)),
        fixture(
            "disjoint-triangles-100",
            disjoint_triangles(100),
            triangles(100),
        ),
        fixture("c5", cycle(5).unwrap(), vec![(0..5).collect()]),
        fixture("c7", cycle(7).unwrap(), vec![(0..7).collect()]),
        fixture(
            "triangle-chain-3",
            triangle_chain(3).unwrap(),
            chain_triangles(3),
        ),
        fixture(
            "triangle-chain-100",
            triangle_chain(100).unwrap(),
            chain_triangles(100),
        ),
        Fixture {
            name: "harvested-triangle-chain",
            cycles: Arc::new(harvested),
        },
        hub_with_chain(),
        packed("friendship-10", parallel_cycles(1, 10, 1).unwrap()),
        packed("friendship-50", parallel_cycles(1, 50, 1).unwrap()),
        packed("pentagon-petals-6", parallel_cycles(1, 6, 2).unwrap()),
        packed("heptagon-petals-30", parallel_cycles(1, 30, 3).unwrap()),
        packed("two-hub-pentagons", parallel_cycles(2, 20, 2).unwrap()),
        packed("two-hub-book", parallel_cycles(2, 50, 1).unwrap()),
        packed(
            "random-planar-a",
            random_planar(20, 20, 0.8, &mut trial_rng(1, 0)).unwrap(),
        ),
        packed(
            "random-planar-b",
            random_planar(30, 30, 0.6, &mut trial_rng(2, 0)).unwrap(),
        ),
        Fixture {
            name: "random-planar-harvest-pruned",
            cycles: Arc::new(pruned_planar),
        },
        packed("petersen", petersen()),
        packed("odd-wheel", wheel()),
        mixed_petals(),
        packed(
            "split-triangle-chain",
            split_to_degree3(&triangle_chain(20).unwrap()),
        ),
        packed(
            "split-friendship",
            split_to_degree3(&parallel_cycles(1, 8, 1).unwrap()),
        ),
    ]
}

/// Small graphs for exact distance checks, with known distances where
/// they are fixed by construction.
pub fn small_graphs() -> Vec<(&'static str, Graph, Option<usize>)> {
    vec![
        ("c5", cycle(5).unwrap(), Some(1)),
        ("c7", cycle(7).unwrap(), Some(1)),
        ("k4", complete(4), Some(2)),
        ("k5", complete(5), Some(4)),
        ("triangle-chain-4", triangle_chain(4).unwrap(), Some(4)),
        ("triangle-chain-12", triangle_chain(12).unwrap(), Some(12)),
        ("disjoint-triangles-8", disjoint_triangles(8), Some(8)),
        ("petersen", petersen(), None),
        ("odd-wheel", wheel(), None),
        ("grid-4x6", grid(4, 6).unwrap(), Some(0)),
        ("even-cycle-26", even_cycle(26).unwrap(), Some(0)),
        (
            "pentagon-petals-6",
            parallel_cycles(1, 6, 2).unwrap(),
            Some(6),
        ),
        ("two-hub-pentagons", parallel_cycles(2, 6, 2).unwrap(), None),
        (
            "random-planar-5x5",
            random_planar(5, 5, 0.8, &mut trial_rng(3, 0)).unwrap(),
            None,
        ),
        (
            "random-planar-4x6",
            random_planar(4, 6, 0.9, &mut trial_rng(4, 0)).unwrap(),
            None,
        ),
    ]
}
