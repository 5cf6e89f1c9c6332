//! Test generation and fault simulation for single bridging faults in
//! reversible k-CNOT circuits realized as AND-EXOR networks.
//!
//! The pipeline is: [`parse_circuit`] → [`normalize_zero_controls`] →
//! [`expand_network`] / [`derive_pprm`] → [`atpg::generate`] →
//! [`sim::evaluate_test_set`]. [`atpg::verify`] runs all of it, including
//! the oracle-backed repair of anything the constructive sets miss.

pub mod atpg;
pub mod circuit;
pub mod fault;
pub mod pattern;
pub mod report;
pub mod sim;
pub mod worked_example;

pub use circuit::{
    derive_pprm, expand_network, normalize_zero_controls, parse_circuit, AndExorNetwork, Gate, Net, ParseError,
    ParseOptions, PprmFunction, ReversibleCircuit,
};
pub use fault::{bridge_values, enumerate_faults, BridgingFault, FaultClass, FaultList, Polarity};
pub use pattern::{DcPolicy, Origin, Symbol, TestPattern};
pub use sim::{Coverage, Verdict};
