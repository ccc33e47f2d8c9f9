//! Random-walk bipartiteness testing for bounded-degree graphs, together with
//! the structural machinery behind its analysis: low-diameter decompositions,
//! odd-cycle harvesting, and the good-partition contraction chain.

pub mod cycles;
pub mod decomposition;
pub mod dsu;
pub mod edgelist;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod harvest;
pub mod oracle;
pub mod reduction;
pub mod tester;

pub use cycles::CycleSet;
pub use error::{Error, Result};
pub use graph::Graph;
pub use oracle::{OracleHandle, QueryTally};
