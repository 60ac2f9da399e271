//! Exact SW-JR existence search and the Set Cover encoding.

use serde::Serialize;
use thiserror::Error;

use crate::axioms::check_sw_jr;
use crate::committee::{feasible_committee_count, BudgetExceeded, Committee, DEFAULT_BUDGET};
use crate::instance::{CandidateId, InstanceError, RawInstance, RawSubset, ScvInstance};
use crate::set_cover::SetCoverInstance;

pub fn sw_jr_exists(inst: &ScvInstance) -> Result<Option<Committee>, BudgetExceeded> {
    sw_jr_exists_with_budget(inst, DEFAULT_BUDGET)
}

/// Lexicographically least SW-JR committee, or `None` if there is none.
///
/// Depth-first over candidates in id order, include branch first. A branch
/// is cut when the voters it can no longer represent (unrepresented, and no
/// undecided candidate with a free seat on their ballot) already form a
/// violating group. Leaves are accepted only if [`check_sw_jr`] passes.
pub fn sw_jr_exists_with_budget(
    inst: &ScvInstance,
    budget: u128,
) -> Result<Option<Committee>, BudgetExceeded> {
    let committees = feasible_committee_count(inst);
    if committees > budget {
        return Err(BudgetExceeded { committees, budget });
    }
    let mut search = Search {
        inst,
        cover: vec![0; inst.voters()],
        seats: inst.quotas(),
        left: inst.subsets().iter().map(|s| s.len()).collect(),
        chosen: Vec::with_capacity(inst.committee_size()),
    };
    Ok(search.dfs(0).map(Committee::from_sorted))
}

struct Search<'a> {
    inst: &'a ScvInstance,
    /// Elected approved candidates per voter.
    cover: Vec<usize>,
    seats: Vec<usize>,
    /// Undecided candidates per subset.
    left: Vec<usize>,
    chosen: Vec<CandidateId>,
}

impl Search<'_> {
    fn dead_branch(&self, next: CandidateId) -> bool {
        let inst = self.inst;
        let open = |c: CandidateId| c >= next && self.seats[inst.subset_of(c)] > 0;
        let dead: Vec<bool> = (0..inst.voters())
            .map(|i| self.cover[i] == 0 && !inst.ballot(i).iter().any(|&c| open(c)))
            .collect();
        (0..inst.num_candidates()).any(|c| {
            let s = inst.approvers(c).iter().filter(|&&i| dead[i]).count();
            s > 0 && inst.meets_threshold(s, inst.committee_size())
        })
    }

    fn dfs(&mut self, c: CandidateId) -> Option<Vec<CandidateId>> {
        if self.seats.iter().all(|&s| s == 0) {
            let w = Committee::from_sorted(self.chosen.clone());
            return check_sw_jr(self.inst, &w).satisfied().then(|| self.chosen.clone());
        }
        if c == self.inst.num_candidates() || self.dead_branch(c) {
            return None;
        }
        let j = self.inst.subset_of(c);
        if self.seats[j] > 0 {
            self.flip(c, j, true);
            let found = self.dfs(c + 1);
            self.flip(c, j, false);
            if found.is_some() {
                return found;
            }
        }
        if self.left[j] > self.seats[j] {
            self.left[j] -= 1;
            let found = self.dfs(c + 1);
            self.left[j] += 1;
            return found;
        }
        None
    }

    fn flip(&mut self, c: CandidateId, j: usize, add: bool) {
        if add {
            self.chosen.push(c);
            self.seats[j] -= 1;
            self.left[j] -= 1;
            for &i in self.inst.approvers(c) {
                self.cover[i] += 1;
            }
        } else {
            self.chosen.pop();
            self.seats[j] += 1;
            self.left[j] += 1;
            for &i in self.inst.approvers(c) {
                self.cover[i] -= 1;
            }
        }
    }
}

/// `{ "axiom": "SW-JR", "exists": bool, "committee": [str] | null }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistsReport {
    pub axiom: String,
    pub exists: bool,
    pub committee: Option<Vec<String>>,
}

impl ExistsReport {
    pub fn new(inst: &ScvInstance, found: Option<&Committee>) -> Self {
        ExistsReport {
            axiom: "SW-JR".to_string(),
            exists: found.is_some(),
            committee: found.map(|w| w.names(inst)),
        }
    }
}

/// Encodes Set Cover as SW-JR existence.
///
/// Elements become voters; `C1 = {a1..an}` (approved by nobody, quota `n`)
/// and `C2 = {s1..st}` (quota = budget), with voter `e` approving `s_j`
/// exactly when `e ∈ S_j`. Since `n/k < 1`, SW-JR holds iff every voter is
/// represented, i.e. iff the chosen `s_j` cover the ground set.
pub fn encode_set_cover(sc: &SetCoverInstance) -> Result<ScvInstance, InstanceError> {
    let n = sc.ground();
    let t = sc.collection().len();
    let mut ballots = vec![Vec::new(); n];
    for (j, s) in sc.collection().iter().enumerate() {
        for &e in s {
            ballots[e].push(format!("s{}", j + 1));
        }
    }
    let raw = RawInstance {
        voters: n,
        subsets: vec![
            RawSubset {
                name: "C1".to_string(),
                candidates: (1..=n).map(|i| format!("a{i}")).collect(),
                quota: n as i64,
            },
            RawSubset {
                name: "C2".to_string(),
                candidates: (1..=t).map(|j| format!("s{j}")).collect(),
                quota: sc.budget() as i64,
            },
        ],
        ballots,
    };
    ScvInstance::validate(&raw)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("committee member #{0} is not a candidate of the encoded instance")]
    ForeignCandidate(CandidateId),
    #[error("chosen subsets leave elements {uncovered:?} uncovered")]
    NotACover { uncovered: Vec<usize> },
}

/// Reads the chosen subsets `{j : s_j ∈ W}` (0-based) off a committee of
/// [`encode_set_cover`]`(sc)` and checks that they cover the ground set.
pub fn decode_committee_to_cover(sc: &SetCoverInstance, w: &Committee) -> Result<Vec<usize>, DecodeError> {
    let n = sc.ground();
    let t = sc.collection().len();
    if let Some(&c) = w.members().iter().find(|&&c| c >= n + t) {
        return Err(DecodeError::ForeignCandidate(c));
    }
    let chosen: Vec<usize> = w.members().iter().filter(|&&c| c >= n).map(|&c| c - n).collect();
    let uncovered = sc.uncovered_by(&chosen);
    if uncovered.is_empty() && chosen.len() <= sc.budget() {
        Ok(chosen)
    } else {
        Err(DecodeError::NotACover { uncovered })
    }
}
