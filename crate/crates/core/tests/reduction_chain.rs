mod common;

use std::sync::Arc;

use oddwalk::generators::{parallel_cycles, triangle_chain};
use oddwalk::harvest::{degree_prune, harvest_odd_cycles};
use oddwalk::reduction::{
    assigning_levels_trace, audit_main_step, build_contracted, contract_step, main_step,
    reduce_to_selfloops, thin_well_contractible, ContractedState, ReductionConfig,
};
use oddwalk::tester::trial_rng;

#[test]
fn main_step_properties_on_every_fixture_and_state() {
    let cfg = ReductionConfig::default();
    for fx in common::fixtures() {
        let mut state = ContractedState::identity(fx.cycles.clone());
        let mut rng = trial_rng(21, 0);
        while !state.all_self_loops() {
            let out = main_step(&state, &cfg, &mut rng).unwrap();
            audit_main_step(&state, &out).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            let next = contract_step(&out.state, &out.q).unwrap();
            let rebuilt = build_contracted(
                next.root(),
                next.active().to_vec(),
                next.partition().clone(),
            )
            .unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            assert_eq!(rebuilt.images(), next.images(), "{}", fx.name);
            assert!(next.max_image_len() < state.max_image_len(), "{}", fx.name);
            state = next;
        }
    }
}

#[test]
fn thinning_covers_every_survivor() {
    for fx in common::fixtures() {
        let s = ContractedState::identity(fx.cycles.clone());
        let levelled = s.restrict(&assigning_levels_trace(&s).unwrap().kept);
        let out = thin_well_contractible(&levelled, 64, &mut trial_rng(3, 0)).unwrap();
        assert!(!out.state.is_empty(), "{}", fx.name);
        let floor = 12f64.powi(-2 * levelled.max_image_len() as i32);
        assert!(out.survivors_fraction >= floor, "{}", fx.name);
        for im in out.state.images() {
            assert!(
                im.heads.iter().any(|h| out.q_prime.contains(h)),
                "{}: survivor without a Q' vertex",
                fx.name
            );
        }
    }
}

#[test]
fn disjoint_triangles_reduce_in_two_steps() {
    let fx = common::fixtures()
        .into_iter()
        .find(|f| f.name == "disjoint-triangles-100")
        .unwrap();
    for seed in 0..10 {
        let chain = reduce_to_selfloops(
            fx.cycles.clone(),
            &ReductionConfig::default(),
            &mut trial_rng(seed, 0),
        )
        .unwrap();
        assert!(chain.contract_steps() <= 2);
        for s in &chain.steps {
            assert!(s.retention > 0.0 && s.retention <= 1.0);
        }
        assert!(!chain.final_state().is_empty());
    }
}

#[test]
fn harvest_prune_reduce_pipeline() {
    for g in [
        triangle_chain(300).unwrap(),
        parallel_cycles(1, 40, 2).unwrap(),
    ] {
        let h = harvest_odd_cycles(&g, 0.3, &mut trial_rng(1, 0)).unwrap();
        let pruned = degree_prune(&h.cycles);
        assert!(2 * pruned.len() >= h.cycles.len());
        let chain = reduce_to_selfloops(
            Arc::new(pruned),
            &ReductionConfig::default(),
            &mut trial_rng(1, 1),
        )
        .unwrap();
        let m = chain.final_state().multigraph();
        assert!(m.self_loop_mass() > 0.0);
        let sizes: usize = m.image_vertices().map(|u| m.class_size(u)).sum();
        assert_eq!(sizes, g.vertex_count());
    }
}
