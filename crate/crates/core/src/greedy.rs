//! Polynomial-time construction of a committee satisfying both IW-JR and
//! weak-SW-JR.
//!
//! Three phases:
//!
//! 1. `Intra`: per subset `j` (ascending), elect the candidate of `C_j` with
//!    the most supporters not yet represented inside `W_j`, while that
//!    support reaches `n/k_j` and seats remain.
//! 2. `Span`: elect the unelected candidate (of any subset with a free seat)
//!    with the most globally unrepresented supporters, while that support
//!    reaches `n/k`.
//! 3. `Fill`: complete every subset with its lowest-id unelected candidates.
//!
//! Supports are recomputed after every pick; ties go to the lowest id.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::committee::Committee;
use crate::instance::{CandidateId, ScvInstance, VoterId};
use crate::score::Score;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Intra,
    Span,
    Fill,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Intra => "intra",
            Phase::Span => "span",
            Phase::Fill => "fill",
        })
    }
}

/// One election step. `support` and `newly_represented` refer to
/// representation inside the candidate's subset during `Intra`, and to
/// global representation during `Span` and `Fill`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub phase: Phase,
    pub candidate: CandidateId,
    pub subset: usize,
    pub support: usize,
    pub newly_represented: Vec<VoterId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GreedyTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Serialize)]
struct StepLine<'a> {
    phase: Phase,
    candidate: &'a str,
    subset: &'a str,
    support: usize,
    newly_represented: &'a [VoterId],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace step {step} does not replay: {reason}")]
pub struct ReplayMismatch {
    pub step: usize,
    pub reason: String,
}

impl GreedyTrace {
    /// Seats filled per subset during the intra phase (`k_j'`).
    pub fn intra_counts(&self, num_subsets: usize) -> Vec<usize> {
        let mut counts = vec![0; num_subsets];
        for s in self.steps.iter().filter(|s| s.phase == Phase::Intra) {
            counts[s.subset] += 1;
        }
        counts
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self, inst: &ScvInstance) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let line = StepLine {
                phase: s.phase,
                candidate: inst.candidate_name(s.candidate),
                subset: inst.subset(s.subset).name(),
                support: s.support,
                newly_represented: &s.newly_represented,
            };
            out.push_str(&serde_json::to_string(&line).expect("trace step serializes"));
            out.push('\n');
        }
        out
    }

    /// Re-applies the steps to `inst`, recomputing every support count and
    /// newly represented set, and checking the phase order and quotas.
    pub fn replay(&self, inst: &ScvInstance) -> Result<Committee, ReplayMismatch> {
        let n = inst.voters();
        let mut elected = vec![false; inst.num_candidates()];
        let mut seats = vec![0usize; inst.num_subsets()];
        let mut rep_in: Vec<Vec<bool>> = vec![vec![false; n]; inst.num_subsets()];
        let mut rep = vec![false; n];
        let mut last_phase = Phase::Intra;
        for (idx, step) in self.steps.iter().enumerate() {
            let fail = |reason: String| ReplayMismatch { step: idx, reason };
            if step.phase < last_phase {
                return Err(fail(format!("phase {} after {}", step.phase, last_phase)));
            }
            last_phase = step.phase;
            let c = step.candidate;
            if c >= inst.num_candidates() || elected[c] {
                return Err(fail(format!("candidate #{c} unknown or already elected")));
            }
            if inst.subset_of(c) != step.subset {
                return Err(fail(format!("candidate #{c} is not in subset {}", step.subset)));
            }
            if seats[step.subset] >= inst.subset(step.subset).quota() {
                return Err(fail(format!("subset {} over quota", step.subset)));
            }
            let base = match step.phase {
                Phase::Intra => &rep_in[step.subset],
                Phase::Span | Phase::Fill => &rep,
            };
            let newly: Vec<VoterId> = inst.approvers(c).iter().copied().filter(|&i| !base[i]).collect();
            if newly.len() != step.support || newly != step.newly_represented {
                return Err(fail(format!(
                    "recorded support {} but recomputed {}",
                    step.support,
                    newly.len()
                )));
            }
            elected[c] = true;
            seats[step.subset] += 1;
            for &i in inst.approvers(c) {
                rep_in[step.subset][i] = true;
                rep[i] = true;
            }
        }
        Committee::new(inst, (0..inst.num_candidates()).filter(|&c| elected[c]))
            .map_err(|e| ReplayMismatch {
                step: self.steps.len(),
                reason: e.to_string(),
            })
    }
}

struct State<'a> {
    inst: &'a ScvInstance,
    elected: Vec<bool>,
    seats: Vec<usize>,
    represented: Vec<bool>,
    trace: GreedyTrace,
}

impl State<'_> {
    fn support(&self, c: CandidateId, represented: &[bool]) -> usize {
        self.inst
            .approvers(c)
            .iter()
            .filter(|&&i| !represented[i])
            .count()
    }

    fn elect(&mut self, phase: Phase, c: CandidateId, base: &[bool]) -> Vec<VoterId> {
        let j = self.inst.subset_of(c);
        let newly: Vec<VoterId> = self
            .inst
            .approvers(c)
            .iter()
            .copied()
            .filter(|&i| !base[i])
            .collect();
        self.elected[c] = true;
        self.seats[j] += 1;
        for &i in self.inst.approvers(c) {
            self.represented[i] = true;
        }
        self.trace.steps.push(TraceStep {
            phase,
            candidate: c,
            subset: j,
            support: newly.len(),
            newly_represented: newly.clone(),
        });
        newly
    }
}

/// Runs the three-phase greedy construction.
pub fn solve_greedy(inst: &ScvInstance) -> (Committee, GreedyTrace) {
    let n = inst.voters();
    let k = inst.committee_size();
    let mut st = State {
        inst,
        elected: vec![false; inst.num_candidates()],
        seats: vec![0; inst.num_subsets()],
        represented: vec![false; n],
        trace: GreedyTrace::default(),
    };

    for (j, subset) in inst.subsets().iter().enumerate() {
        let mut rep_in = vec![false; n];
        while st.seats[j] < subset.quota() {
            let best = subset
                .candidates()
                .filter(|&c| !st.elected[c])
                .map(|c| (st.support(c, &rep_in), c))
                .fold(None, |best: Option<(usize, CandidateId)>, (s, c)| match best {
                    Some((bs, _)) if bs >= s => best,
                    _ => Some((s, c)),
                });
            match best {
                Some((s, c)) if inst.meets_threshold(s, subset.quota()) => {
                    for i in st.elect(Phase::Intra, c, &rep_in) {
                        rep_in[i] = true;
                    }
                }
                _ => break,
            }
        }
    }

    loop {
        let best = (0..inst.num_candidates())
            .filter(|&c| !st.elected[c] && st.seats[inst.subset_of(c)] < inst.subset(inst.subset_of(c)).quota())
            .map(|c| (st.support(c, &st.represented), c))
            .fold(None, |best: Option<(usize, CandidateId)>, (s, c)| match best {
                Some((bs, _)) if bs >= s => best,
                _ => Some((s, c)),
            });
        match best {
            Some((s, c)) if inst.meets_threshold(s, k) => {
                let base = st.represented.clone();
                st.elect(Phase::Span, c, &base);
            }
            _ => break,
        }
    }

    for (j, subset) in inst.subsets().iter().enumerate() {
        for c in subset.candidates() {
            if st.seats[j] == subset.quota() {
                break;
            }
            if !st.elected[c] {
                let base = st.represented.clone();
                st.elect(Phase::Fill, c, &base);
            }
        }
    }

    let members: Vec<CandidateId> = (0..inst.num_candidates()).filter(|&c| st.elected[c]).collect();
    (Committee::from_sorted(members), st.trace)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("empty sequence")]
    EmptySequence,
    #[error("quota and fill sequences differ in length ({quotas} vs {filled})")]
    LengthMismatch { quotas: usize, filled: usize },
    #[error("quota at position {0} is not positive")]
    NonPositiveQuota(usize),
}

/// Both sides of `Σ_j k_j' / Σ_i k_i ≤ max_j k_j'/k_j`, exactly.
pub fn lemma1_gap(quotas: &[u64], filled: &[u64]) -> Result<(Score, Score), LemmaError> {
    if quotas.is_empty() {
        return Err(LemmaError::EmptySequence);
    }
    if quotas.len() != filled.len() {
        return Err(LemmaError::LengthMismatch {
            quotas: quotas.len(),
            filled: filled.len(),
        });
    }
    if let Some(pos) = quotas.iter().position(|&q| q == 0) {
        return Err(LemmaError::NonPositiveQuota(pos));
    }
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let total: BigInt = quotas.iter().map(|&q| BigInt::from(q)).sum();
    let filled_sum: BigInt = filled.iter().map(|&f| BigInt::from(f)).sum();
    let lhs = BigRational::new(filled_sum, total);
    let rhs = quotas
        .iter()
        .zip(filled)
        .map(|(&q, &f)| BigRational::new(BigInt::from(f), BigInt::from(q)))
        .max()
        .expect("non-empty");
    Ok((Score::from_rational(lhs), Score::from_rational(rhs)))
}
