use rand::Rng;

use crate::error::{Error, Result};

use super::contracted::{well_contractible, ContractedState, CycleImage, ImageIndex};
use super::levels::SMALL_DEGREE;

/// Result of thinning a state down to cycles that each carry a
/// well-contractible low-degree vertex.
#[derive(Debug, Clone)]
pub struct ThinningOutcome {
    pub state: ContractedState,
    /// Vertices with at most 6 distinct neighbors in the input that are
    /// well-contractible (and non-isolated) among the survivors, ascending.
    pub q_prime: Vec<usize>,
    /// Fraction of input cycles that survived.
    pub survivors_fraction: f64,
    /// Random draws made.
    pub draws: usize,
    /// Whether the deterministic fallback produced the result.
    pub derandomized: bool,
}

/// The choice made at one low-degree vertex `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    /// `x = y`: keep cycles through `v` whose image lies inside `{v, x}`.
    Same(usize),
    /// `x != y`: keep cycles through `v` whose image has edge `(v, x)` of
    /// parity `px` and edge `(v, y)` of parity `py`.
    Pair { x: usize, y: usize, px: u8, py: u8 },
}

impl Choice {
    fn keeps(self, im: &CycleImage, v: usize) -> bool {
        match self {
            Choice::Same(x) => im.heads.iter().all(|&h| h == v || h == x),
            Choice::Pair { x, y, px, py } => match im.edges_at(v) {
                Some([a, b]) => {
                    a.0 != b.0 && ((a == (x, px) && b == (y, py)) || (a == (y, py) && b == (x, px)))
                }
                None => true,
            },
        }
    }
}

/// Every choice at a vertex with the given distinct neighbors, with its
/// probability under the random rule.
fn choices(nbrs: &[usize]) -> Vec<(Choice, f64)> {
    let d = nbrs.len() as f64;
    let mut out = Vec::new();
    for &x in nbrs {
        for &y in nbrs {
            if x == y {
                out.push((Choice::Same(x), 1.0 / (d * d)));
            } else {
                for px in 0..2 {
                    for py in 0..2 {
                        out.push((Choice::Pair { x, y, px, py }, 1.0 / (4.0 * d * d)));
                    }
                }
            }
        }
    }
    out
}

fn sample<R: Rng + ?Sized>(nbrs: &[usize], rng: &mut R) -> Choice {
    let x = nbrs[rng.gen_range(0..nbrs.len())];
    let y = nbrs[rng.gen_range(0..nbrs.len())];
    if x == y {
        Choice::Same(x)
    } else {
        Choice::Pair {
            x,
            y,
            px: rng.gen_range(0..2),
            py: rng.gen_range(0..2),
        }
    }
}

struct Setup {
    index: ImageIndex,
    /// Low-degree vertices `Q`, ascending, with their sorted neighbors.
    q: Vec<(usize, Vec<usize>)>,
}

fn setup(state: &ContractedState) -> Result<Setup> {
    if let Some(pos) = state.images().iter().position(CycleImage::is_self_loop) {
        return Err(Error::Validation(format!(
            "thinning needs an image without self-loops; cycle {} is one",
            state.active()[pos]
        )));
    }
    let index = ImageIndex::new(state.vertex_count(), state.images());
    let q: Vec<(usize, Vec<usize>)> = (0..state.vertex_count())
        .filter(|&v| {
            let d = index.distinct_neighbors(v);
            d > 0 && d <= SMALL_DEGREE
        })
        .map(|v| (v, index.sorted_neighbors(v)))
        .collect();
    let mut in_q = vec![false; state.vertex_count()];
    for (v, _) in &q {
        in_q[*v] = true;
    }
    if let Some(pos) = state
        .images()
        .iter()
        .position(|im| !im.heads.iter().any(|&h| in_q[h]))
    {
        return Err(Error::Validation(format!(
            "cycle {} has no image vertex with at most {SMALL_DEGREE} distinct neighbors",
            state.active()[pos]
        )));
    }
    Ok(Setup { index, q })
}

fn survivors(state: &ContractedState, setup: &Setup, picks: &[Choice]) -> Vec<usize> {
    let mut alive = vec![true; state.len()];
    for ((v, _), &choice) in setup.q.iter().zip(picks) {
        for &pos in &setup.index.through[*v] {
            if alive[pos] && !choice.keeps(&state.images()[pos], *v) {
                alive[pos] = false;
            }
        }
    }
    (0..state.len()).filter(|&p| alive[p]).collect()
}

/// Conditional-expectation choice of every pick, in ascending vertex order.
/// The expected survivor count never drops, so the result keeps at least
/// the expectation of the random rule.
fn derandomized_picks(state: &ContractedState, setup: &Setup) -> Vec<Choice> {
    let images = state.images();
    let all: Vec<Vec<(Choice, f64)>> = setup.q.iter().map(|(_, nbrs)| choices(nbrs)).collect();
    // probability that cycle `pos` survives the random choice at Q-vertex `i`
    let prob = |i: usize, pos: usize| -> f64 {
        let v = setup.q[i].0;
        all[i]
            .iter()
            .filter(|(c, _)| c.keeps(&images[pos], v))
            .map(|(_, p)| p)
            .sum()
    };
    let q_index: std::collections::HashMap<usize, usize> = setup
        .q
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (*v, i))
        .collect();
    let mut fixed: Vec<Option<Choice>> = vec![None; setup.q.len()];
    for i in 0..setup.q.len() {
        let v = setup.q[i].0;
        // weight of each cycle through v from every other Q-vertex on it
        let weights: Vec<(usize, f64)> = setup.index.through[v]
            .iter()
            .map(|&pos| {
                let w = images[pos]
                    .heads
                    .iter()
                    .filter(|&&h| h != v)
                    .filter_map(|h| q_index.get(h))
                    .map(|&j| match fixed[j] {
                        Some(c) => f64::from(u8::from(c.keeps(&images[pos], setup.q[j].0))),
                        None => prob(j, pos),
                    })
                    .product();
                (pos, w)
            })
            .collect();
        let mut best: Option<(Choice, f64)> = None;
        for &(choice, _) in &all[i] {
            let score: f64 = weights
                .iter()
                .filter(|(pos, _)| choice.keeps(&images[*pos], v))
                .map(|(_, w)| w)
                .sum();
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((choice, score));
            }
        }
        fixed[i] = best.map(|(c, _)| c);
    }
    fixed
        .into_iter()
        .map(|c| c.expect("every Q-vertex has a neighbor"))
        .collect()
}

fn finish(
    state: &ContractedState,
    setup: &Setup,
    kept: Vec<usize>,
    draws: usize,
    derandomized: bool,
) -> ThinningOutcome {
    let out = state.restrict(&kept);
    let index = ImageIndex::new(out.vertex_count(), out.images());
    let q_prime = setup
        .q
        .iter()
        .map(|(v, _)| *v)
        .filter(|&v| !index.nbr[v].is_empty() && well_contractible(&index, out.images(), v))
        .collect();
    ThinningOutcome {
        survivors_fraction: if state.is_empty() {
            1.0
        } else {
            kept.len() as f64 / state.len() as f64
        },
        state: out,
        q_prime,
        draws,
        derandomized,
    }
}

/// One random draw of the thinning rule.
pub fn thin_once<R: Rng + ?Sized>(state: &ContractedState, rng: &mut R) -> Result<ThinningOutcome> {
    let setup = setup(state)?;
    let picks: Vec<Choice> = setup.q.iter().map(|(_, nbrs)| sample(nbrs, rng)).collect();
    let kept = survivors(state, &setup, &picks);
    Ok(finish(state, &setup, kept, 1, false))
}

/// Best of `retries` random draws of the thinning rule. When the best draw
/// keeps fewer than `12^{-2k} |C|` cycles, the choices are instead fixed one
/// vertex at a time by conditional expectation, which always reaches that
/// bound.
pub fn thin_well_contractible<R: Rng + ?Sized>(
    state: &ContractedState,
    retries: usize,
    rng: &mut R,
) -> Result<ThinningOutcome> {
    let setup = setup(state)?;
    let mut best: Vec<usize> = Vec::new();
    let mut draws = 0;
    for _ in 0..retries.max(1) {
        let picks: Vec<Choice> = setup.q.iter().map(|(_, nbrs)| sample(nbrs, rng)).collect();
        let kept = survivors(state, &setup, &picks);
        draws += 1;
        if draws == 1 || kept.len() > best.len() {
            best = kept;
        }
    }
    let floor = retention_floor(state.max_image_len()) * state.len() as f64;
    if (best.len() as f64) < floor {
        let kept = survivors(state, &setup, &derandomized_picks(state, &setup));
        if kept.len() > best.len() {
            return Ok(finish(state, &setup, kept, draws, true));
        }
    }
    Ok(finish(state, &setup, best, draws, false))
}

/// `12^{-2k}`.
pub fn retention_floor(k: usize) -> f64 {
    12f64.powi(-2 * k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::CycleSet;
    use crate::generators::{disjoint_triangles, parallel_cycles};
    use crate::reduction::contracted::is_well_contractible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn triangles(m: usize) -> ContractedState {
        let cs = CycleSet::new(
            Arc::new(disjoint_triangles(m)),
            (0..m).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect(),
        )
        .unwrap();
        ContractedState::identity(Arc::new(cs))
    }

    fn assert_covered(out: &ThinningOutcome) {
        for im in out.state.images() {
            assert!(im.heads.iter().any(|h| out.q_prime.contains(h)));
            assert!(im
                .heads
                .iter()
                .any(|&h| is_well_contractible(&out.state, h)));
        }
    }

    #[test]
    fn single_triangle_survives_some_draw() {
        let s = triangles(1);
        let out = thin_well_contractible(&s, 64, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(out.state.len(), 1);
        assert_eq!(out.q_prime, vec![0, 1, 2]);
        assert_covered(&out);
    }

    #[test]
    fn single_draw_probability_on_a_triangle() {
        // each vertex keeps the triangle with probability 2 * 1/4 * 1/4
        let s = triangles(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 20_000;
        let kept = (0..trials)
            .filter(|_| thin_once(&s, &mut rng).unwrap().state.len() == 1)
            .count();
        let p = kept as f64 / trials as f64;
        let expect = 1.0 / 512.0;
        let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
        assert!((p - expect).abs() < 4.0 * sigma, "{p}");
    }

    #[test]
    fn derandomized_meets_the_floor() {
        let s = triangles(200);
        let setup = setup(&s).unwrap();
        let kept = survivors(&s, &setup, &derandomized_picks(&s, &setup));
        assert!(kept.len() as f64 >= 200.0 / 512.0);
        // one triangle can always be kept, and disjoint triangles do not
        // interact, so every triangle is kept
        assert_eq!(kept.len(), 200);
    }

    #[test]
    fn fallback_is_used_when_draws_are_poor() {
        let s = triangles(3);
        let out = thin_well_contractible(&s, 1, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert!(!out.state.is_empty());
        assert_covered(&out);
    }

    #[test]
    fn petals_sharing_a_hub() {
        // a hub with many triangles through it: the hub has too many
        // neighbors, the petal vertices do the work
        let g = parallel_cycles(1, 10, 2).unwrap();
        let cs = CycleSet::new(
            Arc::new(g.clone()),
            crate::exact::packing_lower_bound(&g, None)
                .1
                .cycles()
                .to_vec(),
        )
        .unwrap();
        let s = ContractedState::identity(Arc::new(cs));
        let out = thin_well_contractible(&s, 64, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(!out.state.is_empty());
        assert!(!out.q_prime.contains(&0));
        assert_covered(&out);
    }

    #[test]
    fn self_loops_rejected() {
        let cs =
            Arc::new(CycleSet::new(Arc::new(disjoint_triangles(1)), vec![vec![0, 1, 2]]).unwrap());
        let s = crate::reduction::build_contracted(
            &cs,
            vec![0],
            crate::reduction::GoodPartition::from_heads(vec![0; 3]),
        )
        .unwrap();
        assert!(matches!(
            thin_once(&s, &mut ChaCha8Rng::seed_from_u64(0)),
            Err(Error::Validation(_))
        ));
    }
}
