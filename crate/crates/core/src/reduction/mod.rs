//! Reduction of a collection of odd cycles to odd self-loops by repeated
//! contraction of well-contractible vertices.

pub mod chain;
pub mod contracted;
pub mod levels;
pub mod main_step;
pub mod partition;
pub mod thinning;

pub use chain::{reduce_to_selfloops, trace_reduction, ChainStep, ReductionChain, ReductionConfig};
pub use contracted::{
    build_contracted, cycle_image, is_well_contractible, well_contractible_vertices,
    ContractedMultigraph, ContractedState, CycleImage, MultiEdge,
};
pub use levels::{assigning_levels, assigning_levels_trace, LevelTrace};
pub use main_step::{audit_main_step, contract_step, main_step, MainStepOutcome, MainStepStats};
pub use partition::GoodPartition;
pub use thinning::{retention_floor, thin_once, thin_well_contractible, ThinningOutcome};
