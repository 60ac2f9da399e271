//! Justified-representation axioms for approval-based sub-committee voting.
//!
//! * JR / SW-JR: every group `X` with `|X| ≥ n/k` that agrees on some
//!   candidate must have a member approving someone in `W`.
//! * IW-JR: the same inside every subset `C_j`, with threshold `n/k_j` and
//!   representation counted only through `W ∩ C_j`.
//! * weak-SW-JR: threshold `n/k`, but the group must agree on a candidate in
//!   *every* subset before it can demand representation.
//!
//! The fast verifiers use the unrepresented-support statistic
//! `s(c) = |{i : c ∈ A_i, A_i ∩ W = ∅}|`; a group violating JR exists iff
//! some `s(c)` reaches the threshold. [`brute_force_axiom`] checks the
//! definitions literally over all voter subsets and serves as the oracle.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::committee::{Committee, CommitteeError};
use crate::instance::{CandidateId, InstanceError, RawInstance, RawSubset, ScvInstance, VoterId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Jr,
    SwJr,
    IwJr,
    WeakSwJr,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::Jr, Axiom::SwJr, Axiom::IwJr, Axiom::WeakSwJr];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Jr => "JR",
            Axiom::SwJr => "SW-JR",
            Axiom::IwJr => "IW-JR",
            Axiom::WeakSwJr => "weak-SW-JR",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jr" => Ok(Axiom::Jr),
            "sw-jr" => Ok(Axiom::SwJr),
            "iw-jr" => Ok(Axiom::IwJr),
            "weak-sw-jr" => Ok(Axiom::WeakSwJr),
            _ => Err(UnknownAxiom(s.to_string())),
        }
    }
}

/// What the violating group agrees on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// JR / SW-JR: a commonly approved candidate.
    Candidate(CandidateId),
    /// IW-JR: a commonly approved candidate of subset `subset`.
    InSubset {
        subset: usize,
        candidate: CandidateId,
    },
    /// weak-SW-JR: one commonly approved candidate per subset, in subset order.
    Tuple(Vec<CandidateId>),
}

impl Evidence {
    pub fn candidates(&self) -> Vec<CandidateId> {
        match self {
            Evidence::Candidate(c) => vec![*c],
            Evidence::InSubset { candidate, .. } => vec![*candidate],
            Evidence::Tuple(cs) => cs.clone(),
        }
    }
}

/// A cohesive, large, unrepresented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub voters: Vec<VoterId>,
    pub evidence: Evidence,
}

impl Violation {
    /// Checks this witness against the axiom's definition directly: group
    /// size, cohesion and non-representation.
    pub fn is_sound(&self, inst: &ScvInstance, w: &Committee, axiom: Axiom) -> bool {
        if self.voters.is_empty() || self.voters.windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
        if self.voters.iter().any(|&i| i >= inst.voters()) {
            return false;
        }
        let approves_all = |c: CandidateId| self.voters.iter().all(|&i| inst.ballot(i).contains(&c));
        match (&self.evidence, axiom) {
            (Evidence::Candidate(c), Axiom::Jr | Axiom::SwJr) => {
                inst.meets_threshold(self.voters.len(), inst.committee_size())
                    && approves_all(*c)
                    && self
                        .voters
                        .iter()
                        .all(|&i| inst.ballot(i).iter().all(|&d| !w.contains(d)))
            }
            (Evidence::InSubset { subset, candidate }, Axiom::IwJr) => {
                let s = inst.subset(*subset);
                s.contains(*candidate)
                    && inst.meets_threshold(self.voters.len(), s.quota())
                    && approves_all(*candidate)
                    && self.voters.iter().all(|&i| {
                        inst.ballot(i)
                            .iter()
                            .all(|&d| !(s.contains(d) && w.contains(d)))
                    })
            }
            (Evidence::Tuple(cs), Axiom::WeakSwJr) => {
                cs.len() == inst.num_subsets()
                    && cs
                        .iter()
                        .enumerate()
                        .all(|(j, &c)| inst.subset(j).contains(c) && approves_all(c))
                    && inst.meets_threshold(self.voters.len(), inst.committee_size())
                    && self
                        .voters
                        .iter()
                        .all(|&i| inst.ballot(i).iter().all(|&d| !w.contains(d)))
            }
            _ => false,
        }
    }
}

/// Result of checking one axiom on one committee.
///
/// The verdict is satisfied exactly when no witness is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub witness: Option<Violation>,
    /// Diagnostic: no group could have demanded representation under any
    /// committee. Not part of the serialized verdict.
    pub vacuous: bool,
}

impl AxiomVerdict {
    pub fn satisfied(&self) -> bool {
        self.witness.is_none()
    }

    pub fn report(&self, inst: &ScvInstance) -> VerdictReport {
        VerdictReport {
            axiom: self.axiom.name().to_string(),
            satisfied: self.satisfied(),
            witness: self.witness.as_ref().map(|v| WitnessReport {
                voters: v.voters.clone(),
                candidates: v
                    .evidence
                    .candidates()
                    .into_iter()
                    .map(|c| inst.candidate_name(c).to_string())
                    .collect(),
                subset: match v.evidence {
                    Evidence::InSubset { subset, .. } => Some(inst.subset(subset).name().to_string()),
                    _ => None,
                },
            }),
        }
    }
}

/// `{ "axiom", "satisfied", "witness": { "voters", "candidates", "subset" } | null }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub axiom: String,
    pub satisfied: bool,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub voters: Vec<VoterId>,
    pub candidates: Vec<String>,
    pub subset: Option<String>,
}

/// Voters with at least one approved member of `W` among `scope`.
fn represented(inst: &ScvInstance, member: &[bool], scope: impl Fn(CandidateId) -> bool) -> Vec<bool> {
    inst.ballots()
        .iter()
        .map(|b| b.iter().any(|&c| member[c] && scope(c)))
        .collect()
}

/// Highest `s(c)` over `candidates` reaching `n/divisor`, lowest id on ties.
fn max_unrepresented_support(
    inst: &ScvInstance,
    candidates: impl Iterator<Item = CandidateId>,
    represented: &[bool],
    divisor: usize,
) -> Option<Violation> {
    let mut best: Option<(usize, CandidateId)> = None;
    for c in candidates {
        let s = inst.approvers(c).iter().filter(|&&i| !represented[i]).count();
        if inst.meets_threshold(s, divisor) && best.is_none_or(|(bs, _)| s > bs) {
            best = Some((s, c));
        }
    }
    best.map(|(_, c)| Violation {
        voters: inst
            .approvers(c)
            .iter()
            .copied()
            .filter(|&i| !represented[i])
            .collect(),
        evidence: Evidence::Candidate(c),
    })
}

fn sw_jr_witness(inst: &ScvInstance, w: &Committee) -> Option<Violation> {
    let member = w.mask(inst.num_candidates());
    let rep = represented(inst, &member, |_| true);
    max_unrepresented_support(inst, 0..inst.num_candidates(), &rep, inst.committee_size())
}

fn sw_jr_vacuous(inst: &ScvInstance) -> bool {
    (0..inst.num_candidates())
        .all(|c| !inst.meets_threshold(inst.approvers(c).len(), inst.committee_size()))
}

/// Span-wise JR, in `O(n·m)`.
pub fn check_sw_jr(inst: &ScvInstance, w: &Committee) -> AxiomVerdict {
    AxiomVerdict {
        axiom: Axiom::SwJr,
        witness: sw_jr_witness(inst, w),
        vacuous: sw_jr_vacuous(inst),
    }
}

/// Intra-wise JR: the JR test on every subset with ballots restricted to it.
/// Reports the first failing subset.
pub fn check_iw_jr(inst: &ScvInstance, w: &Committee) -> AxiomVerdict {
    let member = w.mask(inst.num_candidates());
    let mut witness = None;
    for (j, s) in inst.subsets().iter().enumerate() {
        let rep = represented(inst, &member, |c| s.contains(c));
        if let Some(v) = max_unrepresented_support(inst, s.candidates(), &rep, s.quota()) {
            let Evidence::Candidate(candidate) = v.evidence else {
                unreachable!()
            };
            witness = Some(Violation {
                voters: v.voters,
                evidence: Evidence::InSubset { subset: j, candidate },
            });
            break;
        }
    }
    let vacuous = inst.subsets().iter().all(|s| {
        s.candidates()
            .all(|c| !inst.meets_threshold(inst.approvers(c).len(), s.quota()))
    });
    AxiomVerdict {
        axiom: Axiom::IwJr,
        witness,
        vacuous,
    }
}

/// Lexicographically least tuple `(c_1..c_ℓ)` whose common supporters among
/// `unrepresented` reach `n/k`, together with those supporters.
fn weak_sw_jr_search(inst: &ScvInstance, unrepresented: &FixedBitSet) -> Option<Violation> {
    let n = inst.voters();
    let k = inst.committee_size();
    // Per subset: candidates whose own unrepresented support already meets
    // the threshold, with that support as a bitset.
    let mut options: Vec<Vec<(CandidateId, FixedBitSet)>> = Vec::with_capacity(inst.num_subsets());
    for s in inst.subsets() {
        let mut opts = Vec::new();
        for c in s.candidates() {
            let mut support = FixedBitSet::with_capacity(n);
            for &i in inst.approvers(c) {
                if unrepresented.contains(i) {
                    support.insert(i);
                }
            }
            if inst.meets_threshold(support.count_ones(..), k) {
                opts.push((c, support));
            }
        }
        if opts.is_empty() {
            return None;
        }
        options.push(opts);
    }

    fn dfs(
        inst: &ScvInstance,
        options: &[Vec<(CandidateId, FixedBitSet)>],
        depth: usize,
        running: &FixedBitSet,
        tuple: &mut Vec<CandidateId>,
    ) -> Option<FixedBitSet> {
        if depth == options.len() {
            return Some(running.clone());
        }
        for (c, support) in &options[depth] {
            let mut next = running.clone();
            next.intersect_with(support);
            if !inst.meets_threshold(next.count_ones(..), inst.committee_size()) {
                continue;
            }
            tuple.push(*c);
            if let Some(found) = dfs(inst, options, depth + 1, &next, tuple) {
                return Some(found);
            }
            tuple.pop();
        }
        None
    }

    let mut tuple = Vec::with_capacity(options.len());
    dfs(inst, &options, 0, unrepresented, &mut tuple).map(|voters| Violation {
        voters: voters.ones().collect(),
        evidence: Evidence::Tuple(tuple),
    })
}

/// weak-SW-JR by exact tuple search with pruning. Exponential in the number
/// of subsets in the worst case.
pub fn check_weak_sw_jr(inst: &ScvInstance, w: &Committee) -> AxiomVerdict {
    let n = inst.voters();
    let member = w.mask(inst.num_candidates());
    let rep = represented(inst, &member, |_| true);
    let mut unrepresented = FixedBitSet::with_capacity(n);
    for (i, &r) in rep.iter().enumerate() {
        if !r {
            unrepresented.insert(i);
        }
    }
    let witness = weak_sw_jr_search(inst, &unrepresented);
    let mut everyone = FixedBitSet::with_capacity(n);
    everyone.insert_range(..);
    AxiomVerdict {
        axiom: Axiom::WeakSwJr,
        witness,
        vacuous: weak_sw_jr_search(inst, &everyone).is_none(),
    }
}

#[derive(Debug, Error)]
pub enum JrInputError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Committee(#[from] CommitteeError),
}

/// Plain JR for single-subset data: candidates `0..num_candidates`, committee
/// of size `k`. Embeds the data as a one-subset instance and runs the SW-JR
/// test there.
pub fn check_jr(
    num_candidates: usize,
    ballots: &[Vec<CandidateId>],
    committee: &[CandidateId],
    k: usize,
) -> Result<AxiomVerdict, JrInputError> {
    let name = |c: CandidateId| format!("c{c}");
    let raw = RawInstance {
        voters: ballots.len(),
        subsets: vec![RawSubset {
            name: "C".to_string(),
            candidates: (0..num_candidates).map(name).collect(),
            quota: k as i64,
        }],
        ballots: ballots
            .iter()
            .map(|b| b.iter().map(|&c| name(c)).collect())
            .collect(),
    };
    let inst = ScvInstance::validate(&raw)?;
    let w = Committee::new(&inst, committee.iter().copied())?;
    Ok(check(&inst, &w, Axiom::Jr))
}

/// Dispatches to the fast verifier. On an instance, JR means SW-JR.
pub fn check(inst: &ScvInstance, w: &Committee, axiom: Axiom) -> AxiomVerdict {
    match axiom {
        Axiom::Jr => AxiomVerdict {
            axiom: Axiom::Jr,
            ..check_sw_jr(inst, w)
        },
        Axiom::SwJr => check_sw_jr(inst, w),
        Axiom::IwJr => check_iw_jr(inst, w),
        Axiom::WeakSwJr => check_weak_sw_jr(inst, w),
    }
}

/// Default voter cap for [`brute_force_axiom`].
pub const BRUTE_FORCE_VOTER_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{voters} voters exceed the brute-force cap of {cap}")]
pub struct TooLarge {
    pub voters: usize,
    pub cap: usize,
}

/// Ground truth by enumerating every voter subset `X ⊆ N`.
pub fn brute_force_axiom(
    inst: &ScvInstance,
    w: &Committee,
    axiom: Axiom,
) -> Result<AxiomVerdict, TooLarge> {
    brute_force_axiom_capped(inst, w, axiom, BRUTE_FORCE_VOTER_CAP)
}

pub fn brute_force_axiom_capped(
    inst: &ScvInstance,
    w: &Committee,
    axiom: Axiom,
    cap: usize,
) -> Result<AxiomVerdict, TooLarge> {
    let n = inst.voters();
    if n > cap || n >= 64 {
        return Err(TooLarge { voters: n, cap });
    }
    let m = inst.num_candidates();
    let k = inst.committee_size();

    // Cohesive, large, entirely unrepresented group, judged with `scope`
    // deciding which committee members count as representation and which
    // candidates count as a common approval.
    let find = |divisor: usize,
                unrepresented: &dyn Fn(VoterId) -> bool,
                cohesive: &dyn Fn(&[bool]) -> Option<Evidence>|
     -> Option<Violation> {
        for mask in 1u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if !inst.meets_threshold(size, divisor) {
                continue;
            }
            let voters: Vec<VoterId> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if !voters.iter().all(|&i| unrepresented(i)) {
                continue;
            }
            let mut common = vec![true; m];
            for &i in &voters {
                let mut row = vec![false; m];
                for &c in inst.ballot(i) {
                    row[c] = true;
                }
                for c in 0..m {
                    common[c] &= row[c];
                }
            }
            if let Some(evidence) = cohesive(&common) {
                return Some(Violation { voters, evidence });
            }
        }
        None
    };

    let disjoint = |i: VoterId, scope: &dyn Fn(CandidateId) -> bool| {
        inst.ballot(i).iter().all(|&c| !(scope(c) && w.contains(c)))
    };

    let witness = match axiom {
        Axiom::Jr | Axiom::SwJr => find(k, &|i| disjoint(i, &|_| true), &|common| {
            common.iter().position(|&x| x).map(Evidence::Candidate)
        }),
        Axiom::IwJr => inst.subsets().iter().enumerate().find_map(|(j, s)| {
            find(s.quota(), &|i| disjoint(i, &|c| s.contains(c)), &|common| {
                s.candidates()
                    .find(|&c| common[c])
                    .map(|candidate| Evidence::InSubset { subset: j, candidate })
            })
        }),
        Axiom::WeakSwJr => find(k, &|i| disjoint(i, &|_| true), &|common| {
            inst.subsets()
                .iter()
                .map(|s| s.candidates().find(|&c| common[c]))
                .collect::<Option<Vec<_>>>()
                .map(Evidence::Tuple)
        }),
    };
    Ok(AxiomVerdict {
        axiom,
        witness,
        vacuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::committee::committees;
    use crate::fixtures;

    fn committee(inst: &ScvInstance, names: &[&str]) -> Committee {
        Committee::from_names(inst, names).unwrap()
    }

    fn witness_names(inst: &ScvInstance, v: &AxiomVerdict) -> (Vec<String>, Vec<VoterId>) {
        let w = v.witness.as_ref().expect("violation expected");
        (
            w.evidence
                .candidates()
                .into_iter()
                .map(|c| inst.candidate_name(c).to_string())
                .collect(),
            w.voters.clone(),
        )
    }

    #[test]
    fn sw_jr_two_subset_counterexample() {
        let inst = fixtures::no_sw_jr();
        let w = committee(&inst, &["a1", "b1"]);
        let v = check_sw_jr(&inst, &w);
        assert!(!v.satisfied());
        // voter 2 of the example is voter 1 here
        assert_eq!(witness_names(&inst, &v), (vec!["a2".to_string()], vec![1]));
        assert!(v.witness.as_ref().unwrap().is_sound(&inst, &w, Axiom::SwJr));
    }

    #[test]
    fn sw_jr_everyone_represented_passes() {
        let inst = fixtures::axiom_independence();
        let w = committee(&inst, &["c7", "a", "c"]);
        assert!(check_sw_jr(&inst, &w).satisfied());
    }

    #[test]
    fn iw_jr_relations_fixture() {
        let inst = fixtures::axiom_independence();
        let v = check_iw_jr(&inst, &committee(&inst, &["c1", "b", "c"]));
        assert!(!v.satisfied());
        assert_eq!(witness_names(&inst, &v), (vec!["a".into()], (0..6).collect()));
        let report = v.report(&inst);
        assert_eq!(report.witness.unwrap().subset.as_deref(), Some("C2"));
        assert!(check_iw_jr(&inst, &committee(&inst, &["c1", "a", "c"])).satisfied());
    }

    #[test]
    fn weak_sw_jr_relations_fixture() {
        let inst = fixtures::axiom_independence();
        let v = check_weak_sw_jr(&inst, &committee(&inst, &["c1", "a", "c"]));
        assert_eq!(
            witness_names(&inst, &v),
            (vec!["c7".into(), "b".into()], vec![6, 7, 8, 9])
        );
        assert!(check_weak_sw_jr(&inst, &committee(&inst, &["c7", "a", "c"])).satisfied());
        assert!(check_weak_sw_jr(&inst, &committee(&inst, &["c1", "b", "c"])).satisfied());
    }

    #[test]
    fn single_subset_iw_equals_sw() {
        let inst = fixtures::single_subset(
            4,
            &["a", "b", "c"],
            2,
            &[&["a"], &["a"], &["b"], &["b"]],
        );
        for w in committees(&inst) {
            assert_eq!(
                check_iw_jr(&inst, &w).satisfied(),
                check_sw_jr(&inst, &w).satisfied()
            );
        }
    }

    #[test]
    fn jr_wrapper_examples() {
        let ballots = vec![vec![0], vec![0], vec![1], vec![1]];
        assert!(check_jr(3, &ballots, &[0, 1], 2).unwrap().satisfied());
        let v = check_jr(3, &ballots, &[0, 2], 2).unwrap();
        assert_eq!(v.axiom, Axiom::Jr);
        let w = v.witness.unwrap();
        assert_eq!(w.evidence, Evidence::Candidate(1));
        assert_eq!(w.voters, vec![2, 3]);

        let v = check_jr(2, &[vec![0]], &[1], 1).unwrap();
        assert_eq!(v.witness.unwrap().evidence, Evidence::Candidate(0));

        assert!(check_jr(2, &[vec![0]], &[0, 1], 1).is_err());
    }

    #[test]
    fn empty_ballots_pass_everything_vacuously() {
        let inst = fixtures::single_subset(3, &["a", "b"], 1, &[&[], &[], &[]]);
        for w in committees(&inst) {
            for axiom in Axiom::ALL {
                let v = check(&inst, &w, axiom);
                assert!(v.satisfied());
                assert!(v.vacuous);
                assert!(brute_force_axiom(&inst, &w, axiom).unwrap().satisfied());
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_fixtures() {
        for inst in [fixtures::no_sw_jr(), fixtures::axiom_independence()] {
            for w in committees(&inst) {
                for axiom in Axiom::ALL {
                    assert_eq!(
                        check(&inst, &w, axiom).satisfied(),
                        brute_force_axiom(&inst, &w, axiom).unwrap().satisfied(),
                        "{axiom} on {:?}",
                        w.names(&inst)
                    );
                }
            }
        }
    }

    #[test]
    fn brute_force_cap() {
        let inst = fixtures::axiom_independence();
        let w = committee(&inst, &["c7", "a", "c"]);
        assert_eq!(
            brute_force_axiom_capped(&inst, &w, Axiom::SwJr, 8),
            Err(TooLarge { voters: 12, cap: 8 })
        );
    }

    #[test]
    fn axiom_names_parse() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("pjr".parse::<Axiom>().is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let inst = fixtures::no_sw_jr();
        let v = check_sw_jr(&inst, &committee(&inst, &["a1", "b1"]));
        assert_eq!(
            serde_json::to_string(&v.report(&inst)).unwrap(),
            r#"{"axiom":"SW-JR","satisfied":false,"witness":{"voters":[1],"candidates":["a2"],"subset":null}}"#
        );
    }
}
