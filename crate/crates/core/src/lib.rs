//! Recognition and generation of permutiple numbers.
//!
//! A base-`b` number is an `(n, b)`-permutiple when it equals `n` times some
//! rearrangement of its own digits. This crate builds the digit-level mother
//! graph, the carry state machine and its labeled multigraph, and decides
//! which multisets of mother-graph cycles can be ordered into permutiple
//! strings (Eulerian circuits through the zero carry state). A brute-force
//! search is provided as an independent ground truth.
//!
//! Digit vectors and strings are stored least-significant-first; everything
//! rendered for humans is most-significant-first.

pub mod digits;
pub mod dot;
pub mod error;
pub mod euler;
pub mod mothergraph;
pub mod oracle;
pub mod statemachine;

pub use digits::{
    carry_sequence, digits_of, value, verify_witness, CarrySeq, DigitVec, Params,
    PermutipleWitness, VerificationReport,
};
pub use error::{Error, Result};
pub use euler::{
    condition_report, count_circuits, count_circuits_by_search, enumerate_strings,
    eulerian_circuit, CircuitCounts, ConditionReport, DedupMode, EnumerationOptions,
    LeadingZeroPolicy,
};
pub use mothergraph::{
    build_mother_graph, cycle_decomposition, edge_allowed, enumerate_cycles, graph_of_witness,
    is_in_class, ClassGraph, Cycle, CycleInventory, DigitPair, MotherGraph,
};
pub use oracle::{brute_force_search, equivalence_check, palintiple_count, EquivalenceReport};
pub use statemachine::{
    build_hs_multigraph, cycle_multi_image, string_to_witness, transition, union_images,
    union_of_cycles, CycleMultiset, HSMultigraph, LabeledMultiedge, PermutipleString,
};
