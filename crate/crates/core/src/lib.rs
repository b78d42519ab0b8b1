//! Genome rearrangement distance under the double-cut-and-join (DCJ)
//! operation, computed in the symmetric group.
//!
//! A genome on `n` regions is an involution on `1..=2n`: each 2-cycle is an
//! adjacency between two region extremities and each fixed point is a
//! telomere. A DCJ is a multiplication or conjugation by one transposition,
//! and the distance between two genomes has a closed form in terms of the
//! cycles of their product.

pub mod dcj;
pub mod exec;
pub mod genome;
pub mod oracle;
pub mod perm;
pub mod report;

pub use dcj::{
    apply_dcj, components, count_optimal_scenarios, count_scenarios_exhaustive, dcj_distance,
    distance, enumerate_scenarios, optimal_scenario, sorting_element, DcjError, DcjMode,
    DcjOperation, DistanceReport, Scenario,
};
pub use exec::Execution;
pub use genome::{decode, encode, Genome, GenomeError, GenomeSpec};
pub use oracle::{adjacency_distance, bfs_distance, BfsTable, OracleError};
pub use perm::{Cycle, PermError, Permutation, Transposition};
