//! Feasible committees and their enumeration.

use itertools::Itertools;
use thiserror::Error;

use crate::instance::{CandidateId, ScvInstance};

/// Default cap on the number of committees an exact search may cover.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommitteeError {
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("candidate `{0}` listed more than once")]
    Duplicate(String),
    #[error("subset `{subset}` needs {quota} members but {selected} were given")]
    QuotaMismatch {
        subset: String,
        quota: usize,
        selected: usize,
    },
}

/// Raised when an exact search would cover more committees than allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search space of {committees} committees exceeds budget {budget}")]
pub struct BudgetExceeded {
    pub committees: u128,
    pub budget: u128,
}

/// A feasible outcome: exactly `k_j` members from every subset `C_j`.
///
/// Members are kept sorted, so the derived ordering is the lexicographic
/// order on sorted member ids used for all tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee {
    members: Vec<CandidateId>,
}

impl Committee {
    pub fn new(
        inst: &ScvInstance,
        members: impl IntoIterator<Item = CandidateId>,
    ) -> Result<Self, CommitteeError> {
        let mut members: Vec<CandidateId> = members.into_iter().collect();
        members.sort_unstable();
        let m = inst.num_candidates();
        if let Some(&bad) = members.iter().find(|&&c| c >= m) {
            return Err(CommitteeError::UnknownCandidate(format!("#{bad}")));
        }
        if let Some((a, _)) = members.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(CommitteeError::Duplicate(inst.candidate_name(*a).to_string()));
        }
        let mut selected = vec![0usize; inst.num_subsets()];
        for &c in &members {
            selected[inst.subset_of(c)] += 1;
        }
        for (s, &got) in inst.subsets().iter().zip(&selected) {
            if got != s.quota() {
                return Err(CommitteeError::QuotaMismatch {
                    subset: s.name().to_string(),
                    quota: s.quota(),
                    selected: got,
                });
            }
        }
        Ok(Committee { members })
    }

    pub fn from_names<S: AsRef<str>>(
        inst: &ScvInstance,
        names: &[S],
    ) -> Result<Self, CommitteeError> {
        let ids = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                inst.candidate_id(n)
                    .ok_or_else(|| CommitteeError::UnknownCandidate(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Committee::new(inst, ids)
    }

    /// Caller guarantees `members` is sorted and feasible.
    pub(crate) fn from_sorted(members: Vec<CandidateId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee { members }
    }

    pub fn members(&self) -> &[CandidateId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    /// Membership indicator over all `m` candidates.
    pub fn mask(&self, num_candidates: usize) -> Vec<bool> {
        let mut mask = vec![false; num_candidates];
        for &c in &self.members {
            mask[c] = true;
        }
        mask
    }

    /// Member names in id order.
    pub fn names(&self, inst: &ScvInstance) -> Vec<String> {
        self.members
            .iter()
            .map(|&c| inst.candidate_name(c).to_string())
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, k)` saturating at `u128::MAX`.
pub(crate) fn binomial_saturating(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    binomial(n, k).unwrap_or(u128::MAX)
}

/// Number of feasible committees, `Π_j C(|C_j|, k_j)`, saturating.
pub fn feasible_committee_count(inst: &ScvInstance) -> u128 {
    inst.subsets().iter().fold(1u128, |acc, s| {
        acc.saturating_mul(binomial_saturating(s.len(), s.quota()))
    })
}

/// All feasible committees in lexicographic order.
pub fn committees(inst: &ScvInstance) -> impl Iterator<Item = Committee> + '_ {
    inst.subsets()
        .iter()
        .map(|s| s.candidates().combinations(s.quota()))
        .multi_cartesian_product()
        .map(|parts| Committee::from_sorted(parts.concat()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn binomials() {
        assert_eq!(binomial_saturating(11, 2), 55);
        assert_eq!(binomial_saturating(3, 0), 1);
        assert_eq!(binomial_saturating(2, 3), 0);
        assert_eq!(binomial_saturating(200, 100), u128::MAX);
    }

    #[test]
    fn enumeration_matches_count_and_is_sorted() {
        let inst = fixtures::pav_misses_sw_jr();
        let all: Vec<Committee> = committees(&inst).collect();
        assert_eq!(all.len(), 165);
        assert_eq!(feasible_committee_count(&inst), 165);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for c in &all {
            assert_eq!(Committee::new(&inst, c.members().to_vec()).as_ref(), Ok(c));
        }
    }

    #[test]
    fn quota_mismatch_is_reported() {
        let inst = fixtures::no_sw_jr();
        let err = Committee::from_names(&inst, &["a1", "a2"]).unwrap_err();
        assert!(matches!(err, CommitteeError::QuotaMismatch { .. }));
        let err = Committee::from_names(&inst, &["a1", "zz"]).unwrap_err();
        assert_eq!(err, CommitteeError::UnknownCandidate("zz".into()));
        let err = Committee::new(&inst, [0, 0]).unwrap_err();
        assert_eq!(err, CommitteeError::Duplicate("a1".into()));
    }
}
