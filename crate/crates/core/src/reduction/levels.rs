use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::contracted::{ContractedState, ImageIndex};

/// Distinct-neighbor bound used when assigning levels.
pub const SMALL_DEGREE: usize = 6;

/// Trace of one run of the level assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    /// The vertex `u_j` chosen for each level `j` (index `j - 1`).
    pub pivots: Vec<usize>,
    /// Level of each cycle, aligned with the input state's positions.
    pub level: Vec<usize>,
    /// Positions kept after the second phase, ascending.
    pub kept: Vec<usize>,
    /// `k` of the 1/(2k) comparison: the longest input image.
    pub k: usize,
}

/// Keeps a subset of at least `|C| / (4k + 2)` cycles in which every image
/// has a vertex with at most 6 distinct neighbors.
///
/// Phase 1 repeatedly picks the smallest-id non-isolated image vertex with
/// at most 6 distinct neighbors (a self-loop makes a vertex its own
/// neighbor) and assigns all remaining cycles through it to the next level.
/// Phase 2 walks the levels downwards; at level `j` with pivot `u_j` it
/// compares the surviving level-`j` cycles `A` against the surviving
/// lower-level cycles through `u_j`, `B`, and drops `B` when
/// `2k |A| >= |B|`, otherwise `A`.
pub fn assigning_levels(state: &ContractedState) -> Result<ContractedState> {
    let trace = assigning_levels_trace(state)?;
    Ok(state.restrict(&trace.kept))
}

pub fn assigning_levels_trace(state: &ContractedState) -> Result<LevelTrace> {
    let images = state.images();
    let k = state.max_image_len();
    let mut index = ImageIndex::new(state.vertex_count(), images);
    let small = |index: &ImageIndex, v: usize| {
        let d = index.distinct_neighbors(v);
        d > 0 && d <= SMALL_DEGREE
    };

    let mut candidates: BTreeSet<usize> = (0..state.vertex_count())
        .filter(|&v| small(&index, v))
        .collect();
    let mut alive = vec![true; images.len()];
    let mut remaining = images.len();
    let mut level = vec![0; images.len()];
    let mut pivots = Vec::new();
    while remaining > 0 {
        let Some(&u) = candidates.first() else {
            return Err(Error::Reduction(format!(
                "no image vertex with at most {SMALL_DEGREE} distinct neighbors among {remaining} cycles; \
                 the contracted multigraph is not planar"
            )));
        };
        pivots.push(u);
        let j = pivots.len();
        let through: Vec<usize> = index.through[u]
            .iter()
            .copied()
            .filter(|&p| alive[p])
            .collect();
        for pos in through {
            alive[pos] = false;
            remaining -= 1;
            level[pos] = j;
            for &h in index.remove(&images[pos]) {
                if small(&index, h) {
                    candidates.insert(h);
                } else {
                    candidates.remove(&h);
                }
            }
        }
    }

    let mut alive = vec![true; images.len()];
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); pivots.len() + 1];
    for (pos, &l) in level.iter().enumerate() {
        by_level[l].push(pos);
    }
    for j in (1..=pivots.len()).rev() {
        let u = pivots[j - 1];
        let a: Vec<usize> = by_level[j].iter().copied().filter(|&p| alive[p]).collect();
        let b: Vec<usize> = index.through[u]
            .iter()
            .copied()
            .filter(|&p| alive[p] && level[p] < j)
            .collect();
        let drop = if 2 * k * a.len() >= b.len() { b } else { a };
        for p in drop {
            alive[p] = false;
        }
    }
    Ok(LevelTrace {
        pivots,
        level,
        kept: (0..images.len()).filter(|&p| alive[p]).collect(),
        k,
    })
}

/// Checks that every image has a vertex with at most 6 distinct neighbors in
/// the multigraph of the state's own images. Returns the first offending
/// cycle id on failure.
pub fn audit_small_vertices(state: &ContractedState) -> std::result::Result<(), usize> {
    let index = ImageIndex::new(state.vertex_count(), state.images());
    for (im, &id) in state.images().iter().zip(state.active()) {
        if !im
            .heads
            .iter()
            .any(|&h| index.distinct_neighbors(h) <= SMALL_DEGREE)
        {
            return Err(id);
        }
    }
    Ok(())
}
