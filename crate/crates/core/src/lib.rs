//! Exact and randomized solvers for the 3-domatic number problem: can the
//! vertices of a graph be split into three dominating sets?
//!
//! - [`exact::solve_exact`] enumerates minimal dominating sets ([`mds`]),
//!   encodes each as a not-all-equal SAT instance ([`nae`]) and decides it
//!   with a DPLL solver ([`sat`]).
//! - [`walk::solve_randomized`] runs a restarting random walk over
//!   three-valued vertex assignments.
//! - [`oracle`] holds brute-force references used to certify both.

pub mod corpus;
pub mod error;
pub mod exact;
pub mod graph;
pub mod mds;
pub mod nae;
pub mod oracle;
pub mod sat;
pub mod walk;

pub use error::{Error, Result};
pub use exact::{
    decode_partition, solve_exact, solve_exact_with, Decision, ExactConfig, ExactReport,
};
pub use graph::{Graph, GraphFormat, VertexSet};
pub use mds::{count_minimal_dominating_sets, enumerate_minimal_dominating_sets, EnumerationStats};
pub use nae::{
    build_nae_formula, evaluate_nae, export_dimacs_cnf, nae_to_sat, CnfFormula, Lit, NaeFormula,
};
pub use oracle::{verify_partition, OracleLimits, Partition3, TernaryAssignment};
pub use sat::{solve_nae_direct, solve_sat, SatResult, SatStatus};
pub use walk::{
    build_csp, restart_budget, solve_randomized, CspInstance, RandomizedDecision, RandomizedReport,
    WalkConfig,
};
