//! Sub-committee voting instances.
//!
//! An instance is a set of voters `0..n`, a partition of the candidates into
//! ordered, named subsets with a quota each, and one approval ballot per
//! voter. Candidates get global ids in declaration order, so every subset is
//! a contiguous id range.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Global candidate index, `0..m`.
pub type CandidateId = usize;
/// Voter index, `0..n`.
pub type VoterId = usize;

/// Unvalidated subset description, mirroring the instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubset {
    pub name: String,
    pub candidates: Vec<String>,
    pub quota: i64,
}

/// Unvalidated instance data. This is exactly the shape of the JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub voters: usize,
    pub subsets: Vec<RawSubset>,
    pub ballots: Vec<Vec<String>>,
}

/// One violated instance invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceIssue {
    #[error("instance has no voters")]
    NoVoters,
    #[error("instance has no candidate subsets")]
    NoSubsets,
    #[error("{declared} voters declared but {found} ballots given")]
    BallotCount { declared: usize, found: usize },
    #[error("quota {quota} of subset `{subset}` is infeasible for {size} candidates")]
    QuotaInfeasible {
        subset: String,
        quota: i64,
        size: usize,
    },
    #[error("candidate `{candidate}` breaks the partition ({reason})")]
    PartitionBroken { candidate: String, reason: String },
    #[error("subset name `{0}` is used more than once")]
    DuplicateSubset(String),
    #[error("ballot of voter {voter} names unknown candidate `{candidate}`")]
    BadBallot { voter: VoterId, candidate: String },
}

/// Every invariant an instance violates, in discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InstanceError {
    pub issues: Vec<InstanceIssue>,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid instance: ")?;
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// A validated candidate subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    name: String,
    first: CandidateId,
    len: usize,
    quota: usize,
}

impl Subset {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quota(&self) -> usize {
        self.quota
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Candidate ids of this subset.
    pub fn candidates(&self) -> Range<CandidateId> {
        self.first..self.first + self.len
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.candidates().contains(&c)
    }
}

/// A validated sub-committee voting instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScvInstance {
    voters: usize,
    subsets: Vec<Subset>,
    names: Vec<String>,
    subset_of: Vec<usize>,
    ballots: Vec<Vec<CandidateId>>,
    approvers: Vec<Vec<VoterId>>,
    by_name: HashMap<String, CandidateId>,
}

impl ScvInstance {
    /// Validates raw data, reporting every violated invariant at once.
    pub fn validate(raw: &RawInstance) -> Result<Self, InstanceError> {
        let mut issues = Vec::new();
        if raw.voters == 0 {
            issues.push(InstanceIssue::NoVoters);
        }
        if raw.subsets.is_empty() {
            issues.push(InstanceIssue::NoSubsets);
        }
        if raw.ballots.len() != raw.voters {
            issues.push(InstanceIssue::BallotCount {
                declared: raw.voters,
                found: raw.ballots.len(),
            });
        }

        let mut by_name = HashMap::new();
        let mut names = Vec::new();
        let mut subset_of = Vec::new();
        let mut subsets = Vec::with_capacity(raw.subsets.len());
        let mut subset_names = HashMap::new();
        for (j, s) in raw.subsets.iter().enumerate() {
            if subset_names.insert(s.name.as_str(), j).is_some() {
                issues.push(InstanceIssue::DuplicateSubset(s.name.clone()));
            }
            let first = names.len();
            for cand in &s.candidates {
                if cand.is_empty() {
                    issues.push(InstanceIssue::PartitionBroken {
                        candidate: cand.clone(),
                        reason: format!("empty name in subset `{}`", s.name),
                    });
                    continue;
                }
                if by_name.contains_key(cand) {
                    issues.push(InstanceIssue::PartitionBroken {
                        candidate: cand.clone(),
                        reason: "declared more than once".to_string(),
                    });
                    continue;
                }
                by_name.insert(cand.clone(), names.len());
                names.push(cand.clone());
                subset_of.push(j);
            }
            let len = names.len() - first;
            if s.quota < 1 || s.quota as u64 > len as u64 {
                issues.push(InstanceIssue::QuotaInfeasible {
                    subset: s.name.clone(),
                    quota: s.quota,
                    size: len,
                });
            }
            subsets.push(Subset {
                name: s.name.clone(),
                first,
                len,
                quota: s.quota.max(0) as usize,
            });
        }

        let mut ballots = Vec::with_capacity(raw.ballots.len());
        for (voter, ballot) in raw.ballots.iter().enumerate() {
            let mut ids = Vec::with_capacity(ballot.len());
            for cand in ballot {
                match by_name.get(cand) {
                    Some(&id) => ids.push(id),
                    None => issues.push(InstanceIssue::BadBallot {
                        voter,
                        candidate: cand.clone(),
                    }),
                }
            }
            ids.sort_unstable();
            ids.dedup();
            ballots.push(ids);
        }

        if !issues.is_empty() {
            return Err(InstanceError { issues });
        }

        let mut approvers = vec![Vec::new(); names.len()];
        for (voter, ballot) in ballots.iter().enumerate() {
            for &c in ballot {
                approvers[c].push(voter);
            }
        }

        Ok(ScvInstance {
            voters: raw.voters,
            subsets,
            names,
            subset_of,
            ballots,
            approvers,
            by_name,
        })
    }

    /// Canonical raw form: subsets in declaration order, ballot entries
    /// sorted lexicographically by name.
    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            voters: self.voters,
            subsets: self
                .subsets
                .iter()
                .map(|s| RawSubset {
                    name: s.name.clone(),
                    candidates: s.candidates().map(|c| self.names[c].clone()).collect(),
                    quota: s.quota as i64,
                })
                .collect(),
            ballots: self
                .ballots
                .iter()
                .map(|b| {
                    let mut names: Vec<String> = b.iter().map(|&c| self.names[c].clone()).collect();
                    names.sort();
                    names
                })
                .collect(),
        }
    }

    /// Number of voters `n`.
    pub fn voters(&self) -> usize {
        self.voters
    }

    /// Number of candidates `m`.
    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn subset(&self, j: usize) -> &Subset {
        &self.subsets[j]
    }

    /// Total committee size `k`, the sum of all quotas.
    pub fn committee_size(&self) -> usize {
        self.subsets.iter().map(|s| s.quota).sum()
    }

    pub fn quotas(&self) -> Vec<usize> {
        self.subsets.iter().map(|s| s.quota).collect()
    }

    /// Sorted approval ballot of voter `i`.
    pub fn ballot(&self, i: VoterId) -> &[CandidateId] {
        &self.ballots[i]
    }

    pub fn ballots(&self) -> &[Vec<CandidateId>] {
        &self.ballots
    }

    /// Voters approving `c`, ascending.
    pub fn approvers(&self, c: CandidateId) -> &[VoterId] {
        &self.approvers[c]
    }

    pub fn subset_of(&self, c: CandidateId) -> usize {
        self.subset_of[c]
    }

    pub fn candidate_name(&self, c: CandidateId) -> &str {
        &self.names[c]
    }

    pub fn candidate_id(&self, name: &str) -> Option<CandidateId> {
        self.by_name.get(name).copied()
    }

    /// Looks up a subset by name.
    pub fn subset_index(&self, name: &str) -> Option<usize> {
        self.subsets.iter().position(|s| s.name == name)
    }

    /// `|X|·divisor ≥ n`, the exact form of `|X| ≥ n / divisor`.
    pub fn meets_threshold(&self, group_size: usize, divisor: usize) -> bool {
        (group_size as u128) * (divisor as u128) >= self.voters as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(name: &str, cands: &[&str], quota: i64) -> RawSubset {
        RawSubset {
            name: name.into(),
            candidates: cands.iter().map(|s| s.to_string()).collect(),
            quota,
        }
    }

    fn ballots(b: &[&[&str]]) -> Vec<Vec<String>> {
        b.iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn two_subset_instance_is_valid() {
        let raw = RawInstance {
            voters: 2,
            subsets: vec![
                subset("C1", &["a1", "a2"], 1),
                subset("C2", &["b1", "b2"], 1),
            ],
            ballots: ballots(&[&["a1"], &["a2"]]),
        };
        let inst = ScvInstance::validate(&raw).unwrap();
        assert_eq!(inst.voters(), 2);
        assert_eq!(inst.num_candidates(), 4);
        assert_eq!(inst.committee_size(), 2);
        assert_eq!(inst.subset(1).candidates(), 2..4);
        assert_eq!(inst.approvers(1), &[1]);
        assert_eq!(inst.candidate_id("b2"), Some(3));
    }

    #[test]
    fn quota_above_subset_size_is_rejected() {
        let raw = RawInstance {
            voters: 1,
            subsets: vec![subset("C1", &["a", "b"], 3)],
            ballots: ballots(&[&[]]),
        };
        let err = ScvInstance::validate(&raw).unwrap_err();
        assert!(matches!(
            err.issues[0],
            InstanceIssue::QuotaInfeasible { quota: 3, size: 2, .. }
        ));
    }

    #[test]
    fn zero_quota_is_rejected() {
        let raw = RawInstance {
            voters: 1,
            subsets: vec![subset("C1", &["a"], 0)],
            ballots: ballots(&[&["a"]]),
        };
        let err = ScvInstance::validate(&raw).unwrap_err();
        assert!(matches!(err.issues[0], InstanceIssue::QuotaInfeasible { .. }));
    }

    #[test]
    fn single_subset_is_plain_committee_voting() {
        let raw = RawInstance {
            voters: 3,
            subsets: vec![subset("C", &["x", "y", "z"], 3)],
            ballots: ballots(&[&["x"], &[], &["y", "z"]]),
        };
        let inst = ScvInstance::validate(&raw).unwrap();
        assert_eq!(inst.num_subsets(), 1);
        assert_eq!(inst.committee_size(), 3);
    }

    #[test]
    fn every_issue_is_reported() {
        let raw = RawInstance {
            voters: 2,
            subsets: vec![
                subset("C1", &["a", "b"], 5),
                subset("C2", &["a", "c"], 1),
            ],
            ballots: ballots(&[&["zzz"]]),
        };
        let err = ScvInstance::validate(&raw).unwrap_err();
        assert!(err.issues.contains(&InstanceIssue::BallotCount {
            declared: 2,
            found: 1
        }));
        assert!(err
            .issues
            .iter()
            .any(|i| matches!(i, InstanceIssue::PartitionBroken { candidate, .. } if candidate == "a")));
        assert!(err
            .issues
            .iter()
            .any(|i| matches!(i, InstanceIssue::QuotaInfeasible { quota: 5, .. })));
        assert!(err
            .issues
            .iter()
            .any(|i| matches!(i, InstanceIssue::BadBallot { voter: 0, .. })));
    }

    #[test]
    fn duplicate_ballot_entries_collapse() {
        let raw = RawInstance {
            voters: 1,
            subsets: vec![subset("C", &["x", "y"], 1)],
            ballots: ballots(&[&["y", "x", "y"]]),
        };
        let inst = ScvInstance::validate(&raw).unwrap();
        assert_eq!(inst.ballot(0), &[0, 1]);
    }

    #[test]
    fn threshold_is_exact() {
        let raw = RawInstance {
            voters: 12,
            subsets: vec![subset("C", &["a", "b", "c", "d", "e"], 5)],
            ballots: vec![vec![]; 12],
        };
        let inst = ScvInstance::validate(&raw).unwrap();
        // 12/5 = 2.4
        assert!(!inst.meets_threshold(2, 5));
        assert!(inst.meets_threshold(3, 5));
    }
}
