//! Exact tools for approval-based sub-committee voting.
//!
//! An instance partitions the candidates into subsets `C_1..C_ℓ` with quotas
//! `k_1..k_ℓ`; a committee takes exactly `k_j` members from each subset.
//! This crate provides
//!
//! * verifiers for JR, SW-JR, IW-JR and weak-SW-JR with violation witnesses,
//!   plus a brute-force oracle over voter subsets ([`axioms`]),
//! * a polynomial greedy construction satisfying IW-JR and weak-SW-JR
//!   ([`greedy`]),
//! * exact SW-PAV / IW-PAV scoring and maximisation ([`pav`]),
//! * an exact SW-JR existence search and the Set Cover encoding ([`search`]).
//!
//! ```
//! use scv_core::{fixtures, axioms, greedy};
//!
//! let inst = fixtures::axiom_independence();
//! let (w, _trace) = greedy::solve_greedy(&inst);
//! assert!(axioms::check_iw_jr(&inst, &w).satisfied());
//! assert!(axioms::check_weak_sw_jr(&inst, &w).satisfied());
//! ```

pub mod axioms;
pub mod committee;
pub mod fixtures;
pub mod generate;
pub mod greedy;
pub mod instance;
pub mod io;
pub mod pav;
pub mod score;
pub mod search;
pub mod set_cover;

pub use axioms::{Axiom, AxiomVerdict, Evidence, Violation};
pub use committee::{BudgetExceeded, Committee, CommitteeError, DEFAULT_BUDGET};
pub use instance::{CandidateId, InstanceError, RawInstance, RawSubset, ScvInstance, VoterId};
pub use pav::PavVariant;
pub use score::Score;
pub use set_cover::SetCoverInstance;

use serde::Serialize;

/// Outcome of validating an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub voters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub committee_size: Option<usize>,
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn from_result(result: &Result<ScvInstance, io::ParseError>) -> Self {
        match result {
            Ok(inst) => ValidationReport {
                valid: true,
                voters: Some(inst.voters()),
                candidates: Some(inst.num_candidates()),
                committee_size: Some(inst.committee_size()),
                issues: Vec::new(),
            },
            Err(err) => ValidationReport {
                valid: false,
                voters: None,
                candidates: None,
                committee_size: None,
                issues: match err {
                    io::ParseError::Semantic(e) => e.issues.iter().map(|i| i.to_string()).collect(),
                    other => vec![other.to_string()],
                },
            },
        }
    }
}
