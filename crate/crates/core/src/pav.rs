//! Span-wise and intra-wise Proportional Approval Voting.
//!
//! SW-PAV scores a committee by `Σ_i H(|W ∩ A_i|)`; IW-PAV by
//! `Σ_j Σ_i H(|W ∩ A_i ∩ C_j|)`. All arithmetic is exact.
//!
//! Maximisation is an exact branch and bound over candidates in id order,
//! taking the include branch first, so the first optimum found is the
//! lexicographically least one. Scores inside the search are scaled by
//! `lcm(1..=d)` to stay in `u128` when possible.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::axioms::{check, Axiom, VerdictReport};
use crate::committee::{binomial_saturating, feasible_committee_count, BudgetExceeded, Committee, DEFAULT_BUDGET};
use crate::instance::{CandidateId, ScvInstance};
use crate::score::{harmonic_table, Score};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PavVariant {
    SwPav,
    IwPav,
}

impl PavVariant {
    pub fn name(self) -> &'static str {
        match self {
            PavVariant::SwPav => "SW-PAV",
            PavVariant::IwPav => "IW-PAV",
        }
    }
}

impl fmt::Display for PavVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown PAV variant `{0}`")]
pub struct UnknownVariant(pub String);

impl FromStr for PavVariant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sw-pav" => Ok(PavVariant::SwPav),
            "iw-pav" => Ok(PavVariant::IwPav),
            _ => Err(UnknownVariant(s.to_string())),
        }
    }
}

fn overlap(inst: &ScvInstance, w: &Committee, i: usize, scope: impl Fn(CandidateId) -> bool) -> usize {
    inst.ballot(i)
        .iter()
        .filter(|&&c| scope(c) && w.contains(c))
        .count()
}

pub fn sw_pav_score(inst: &ScvInstance, w: &Committee) -> Score {
    let h = harmonic_table(w.len());
    (0..inst.voters())
        .map(|i| h[overlap(inst, w, i, |_| true)].clone())
        .sum()
}

pub fn iw_pav_score(inst: &ScvInstance, w: &Committee) -> Score {
    let h = harmonic_table(w.len());
    inst.subsets()
        .iter()
        .flat_map(|s| (0..inst.voters()).map(move |i| (s, i)))
        .map(|(s, i)| h[overlap(inst, w, i, |c| s.contains(c))].clone())
        .sum()
}

pub fn score(inst: &ScvInstance, w: &Committee, variant: PavVariant) -> Score {
    match variant {
        PavVariant::SwPav => sw_pav_score(inst, w),
        PavVariant::IwPav => iw_pav_score(inst, w),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("candidate `{0}` is not a committee member")]
pub struct NotMember(pub String);

/// `SW-PAV(W) − SW-PAV(W ∖ {c})`: each voter approving `c` loses
/// `1/|W ∩ A_i|`.
pub fn marginal_contribution(inst: &ScvInstance, w: &Committee, c: CandidateId) -> Result<Score, NotMember> {
    if !w.contains(c) {
        let name = if c < inst.num_candidates() {
            inst.candidate_name(c).to_string()
        } else {
            format!("#{c}")
        };
        return Err(NotMember(name));
    }
    let mut total = BigRational::zero();
    for &i in inst.approvers(c) {
        let t = overlap(inst, w, i, |_| true);
        total += BigRational::new(BigInt::one(), BigInt::from(t));
    }
    Ok(Score::from_rational(total))
}

/// An exact optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PavOutcome {
    pub variant: PavVariant,
    pub committee: Committee,
    pub score: Score,
}

/// `{ "variant", "committee", "score", "axioms" }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub variant: String,
    pub committee: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<Score>,
    pub axioms: std::collections::BTreeMap<String, VerdictReport>,
}

impl SolveReport {
    /// Report for any committee, with the verdicts of all four axioms.
    pub fn new(inst: &ScvInstance, variant: &str, committee: &Committee, score: Option<Score>) -> Self {
        SolveReport {
            variant: variant.to_string(),
            committee: committee.names(inst),
            score,
            axioms: Axiom::ALL
                .iter()
                .map(|&a| (a.name().to_string(), check(inst, committee, a).report(inst)))
                .collect(),
        }
    }
}

impl PavOutcome {
    pub fn report(&self, inst: &ScvInstance) -> SolveReport {
        SolveReport::new(inst, self.variant.name(), &self.committee, Some(self.score.clone()))
    }
}

/// `{ "variant", "committee", "score" }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreReport {
    pub variant: String,
    pub committee: Vec<String>,
    pub score: Score,
}

impl ScoreReport {
    pub fn new(inst: &ScvInstance, w: &Committee, variant: PavVariant) -> Self {
        ScoreReport {
            variant: variant.name().to_string(),
            committee: w.names(inst),
            score: score(inst, w, variant),
        }
    }
}

pub fn maximize(inst: &ScvInstance, variant: PavVariant) -> Result<PavOutcome, BudgetExceeded> {
    maximize_with_budget(inst, variant, DEFAULT_BUDGET)
}

/// Exact maximiser, lexicographically least among ties.
///
/// SW-PAV searches whole committees; IW-PAV decomposes into one standard
/// PAV problem per subset. The budget bounds the number of (sub-)committees
/// the search may have to cover.
pub fn maximize_with_budget(
    inst: &ScvInstance,
    variant: PavVariant,
    budget: u128,
) -> Result<PavOutcome, BudgetExceeded> {
    let members = match variant {
        PavVariant::SwPav => {
            let committees = feasible_committee_count(inst);
            if committees > budget {
                return Err(BudgetExceeded { committees, budget });
            }
            let all: Vec<usize> = (0..inst.num_subsets()).collect();
            search(inst, &all)
        }
        PavVariant::IwPav => {
            let committees = inst
                .subsets()
                .iter()
                .fold(0u128, |acc, s| acc.saturating_add(binomial_saturating(s.len(), s.quota())));
            if committees > budget {
                return Err(BudgetExceeded { committees, budget });
            }
            let mut members = Vec::with_capacity(inst.committee_size());
            for j in 0..inst.num_subsets() {
                members.extend(search(inst, &[j]));
            }
            members
        }
    };
    let committee = Committee::from_sorted(members);
    let score = score(inst, &committee, variant);
    Ok(PavOutcome {
        variant,
        committee,
        score,
    })
}

/// Standard PAV over the candidates of `subsets`, counting only approvals of
/// those candidates. Returns the lexicographically least optimal members.
fn search(inst: &ScvInstance, subsets: &[usize]) -> Vec<CandidateId> {
    let seats: usize = subsets.iter().map(|&j| inst.subset(j).quota()).sum();
    let depth = (0..inst.voters())
        .map(|i| {
            inst.ballot(i)
                .iter()
                .filter(|&&c| subsets.contains(&inst.subset_of(c)))
                .count()
        })
        .max()
        .unwrap_or(0)
        .min(seats);
    match scaled_gains(depth, inst.voters(), seats) {
        Some(gains) => BranchAndBound::new(inst, subsets, gains).run(),
        None => {
            let gains = (0..depth.max(1))
                .map(|t| BigRational::new(BigInt::one(), BigInt::from(t + 1)))
                .collect();
            BranchAndBound::new(inst, subsets, gains).run()
        }
    }
}

/// `lcm(1..=depth) / (t+1)` for `t < depth`, if every score and bound the
/// search can form fits in `u128`.
fn scaled_gains(depth: usize, voters: usize, seats: usize) -> Option<Vec<u128>> {
    let mut lcm: u128 = 1;
    for p in 1..=depth.max(1) as u128 {
        lcm = lcm.checked_mul(p / lcm.gcd(&p))?;
    }
    let gains: Vec<u128> = (0..depth.max(1)).map(|t| lcm / (t as u128 + 1)).collect();
    // a score is at most n·lcm·depth and a bound adds at most n·lcm per seat
    lcm.checked_mul(voters as u128)?
        .checked_mul((depth + seats + 1) as u128)?;
    Some(gains)
}

struct BranchAndBound<'a, T> {
    inst: &'a ScvInstance,
    order: Vec<CandidateId>,
    slot_of: Vec<usize>,
    /// gains[t]: score increase for a voter going from t to t+1 approvals.
    gains: Vec<T>,
    counts: Vec<usize>,
    remaining_seats: Vec<usize>,
    remaining_cands: Vec<usize>,
    chosen: Vec<CandidateId>,
    best: Option<(T, Vec<CandidateId>)>,
}

impl<'a, T> BranchAndBound<'a, T>
where
    T: Clone + Ord + Zero + for<'x> Add<&'x T, Output = T>,
{
    fn new(inst: &'a ScvInstance, subsets: &[usize], gains: Vec<T>) -> Self {
        let mut order: Vec<CandidateId> = subsets.iter().flat_map(|&j| inst.subset(j).candidates()).collect();
        order.sort_unstable();
        let mut slot_of = vec![usize::MAX; inst.num_subsets()];
        for (slot, &j) in subsets.iter().enumerate() {
            slot_of[j] = slot;
        }
        BranchAndBound {
            inst,
            order,
            slot_of,
            gains,
            counts: vec![0; inst.voters()],
            remaining_seats: subsets.iter().map(|&j| inst.subset(j).quota()).collect(),
            remaining_cands: subsets.iter().map(|&j| inst.subset(j).len()).collect(),
            chosen: Vec::new(),
            best: None,
        }
    }

    fn gain(&self, c: CandidateId) -> T {
        self.inst
            .approvers(c)
            .iter()
            .fold(T::zero(), |acc, &i| acc + &self.gains[self.counts[i].min(self.gains.len() - 1)])
    }

    fn run(mut self) -> Vec<CandidateId> {
        self.dfs(0, T::zero());
        self.best.expect("feasible committee exists").1
    }

    /// Current score plus, per subset, the best remaining marginal gains.
    /// Gains only shrink as the committee grows, so this never underestimates.
    fn bound(&self, idx: usize, current: &T) -> T {
        let mut per_slot: Vec<Vec<T>> = vec![Vec::new(); self.remaining_seats.len()];
        for &c in &self.order[idx..] {
            let slot = self.slot_of[self.inst.subset_of(c)];
            if self.remaining_seats[slot] > 0 {
                per_slot[slot].push(self.gain(c));
            }
        }
        let mut total = current.clone();
        for (slot, mut gains) in per_slot.into_iter().enumerate() {
            gains.sort_unstable_by(|a, b| b.cmp(a));
            for g in gains.iter().take(self.remaining_seats[slot]) {
                total = total + g;
            }
        }
        total
    }

    fn dfs(&mut self, idx: usize, current: T) {
        if self.remaining_seats.iter().all(|&s| s == 0) {
            if self.best.as_ref().is_none_or(|(b, _)| current > *b) {
                self.best = Some((current, self.chosen.clone()));
            }
            return;
        }
        if idx == self.order.len() {
            return;
        }
        if let Some((best, _)) = &self.best {
            // A tie found later would be lexicographically larger.
            if self.bound(idx, &current) <= *best {
                return;
            }
        }
        let c = self.order[idx];
        let slot = self.slot_of[self.inst.subset_of(c)];

        if self.remaining_seats[slot] > 0 {
            let next = current.clone() + &self.gain(c);
            self.take(c, slot, true);
            self.dfs(idx + 1, next);
            self.take(c, slot, false);
        }
        // Excluding c must leave enough candidates for the open seats.
        if self.remaining_cands[slot] > self.remaining_seats[slot] {
            self.remaining_cands[slot] -= 1;
            self.dfs(idx + 1, current);
            self.remaining_cands[slot] += 1;
        }
    }

    fn take(&mut self, c: CandidateId, slot: usize, add: bool) {
        if add {
            self.chosen.push(c);
            self.remaining_seats[slot] -= 1;
            self.remaining_cands[slot] -= 1;
            for &i in self.inst.approvers(c) {
                self.counts[i] += 1;
            }
        } else {
            self.chosen.pop();
            self.remaining_seats[slot] += 1;
            self.remaining_cands[slot] += 1;
            for &i in self.inst.approvers(c) {
                self.counts[i] -= 1;
            }
        }
    }
}
