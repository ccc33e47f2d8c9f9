use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::cycles::CycleSet;
use crate::error::{Error, Result};

use super::contracted::ContractedState;
use super::main_step::{contract_step, main_step, MainStepStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionConfig {
    /// Random draws of the thinning rule per main step.
    pub thinning_retries: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            thinning_retries: 64,
        }
    }
}

/// One main step followed by one contraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStep {
    pub main: MainStepStats,
    /// Longest image after the main step, before contracting.
    pub max_len_selected: usize,
    pub cycles_out: usize,
    pub max_len_out: usize,
    pub self_loops_out: usize,
    /// `cycles_out / cycles_in`.
    pub retention: f64,
}

/// The states `C_1, C_2, ...` of a reduction, starting from the identity
/// partition. `steps[i]` leads from `states[i]` to `states[i + 1]`.
#[derive(Debug, Clone)]
pub struct ReductionChain {
    pub states: Vec<ContractedState>,
    pub steps: Vec<ChainStep>,
}

impl ReductionChain {
    pub fn final_state(&self) -> &ContractedState {
        self.states.last().expect("a chain holds its initial state")
    }

    pub fn contract_steps(&self) -> usize {
        self.steps.len()
    }
}

/// Alternates main steps and contractions from the identity partition until
/// every image is a self-loop.
pub fn reduce_to_selfloops<R: Rng + ?Sized>(
    cs: Arc<CycleSet>,
    cfg: &ReductionConfig,
    rng: &mut R,
) -> Result<ReductionChain> {
    match trace_reduction(cs, cfg, rng) {
        (chain, None) => Ok(chain),
        (_, Some(e)) => Err(e),
    }
}

/// Like [`reduce_to_selfloops`] but also returns the partial chain when a
/// step fails.
pub fn trace_reduction<R: Rng + ?Sized>(
    cs: Arc<CycleSet>,
    cfg: &ReductionConfig,
    rng: &mut R,
) -> (ReductionChain, Option<Error>) {
    let k = cs.max_len();
    let mut chain = ReductionChain {
        states: vec![ContractedState::identity(cs)],
        steps: Vec::new(),
    };
    if chain.states[0].is_empty() {
        return (
            chain,
            Some(Error::Validation(
                "cannot reduce an empty cycle collection".into(),
            )),
        );
    }
    loop {
        let cur = chain.final_state();
        if cur.all_self_loops() {
            return (chain, None);
        }
        if chain.steps.len() + 1 > k.saturating_sub(1) {
            let e = Error::Reduction(format!(
                "images still longer than 1 after {} contractions with k = {k}",
                chain.steps.len()
            ));
            return (chain, Some(e));
        }
        let out = match main_step(cur, cfg, rng) {
            Ok(out) => out,
            Err(e) => return (chain, Some(e)),
        };
        if out.state.is_empty() {
            let steps = chain.steps.len();
            return (chain, Some(Error::ReductionCollapse { steps }));
        }
        let next = match contract_step(&out.state, &out.q) {
            Ok(next) => next,
            Err(e) => return (chain, Some(e)),
        };
        chain.steps.push(ChainStep {
            retention: next.len() as f64 / cur.len() as f64,
            main: out.stats,
            max_len_selected: out.state.max_image_len(),
            cycles_out: next.len(),
            max_len_out: next.max_image_len(),
            self_loops_out: next.self_loop_count(),
        });
        chain.states.push(next);
    }
}
