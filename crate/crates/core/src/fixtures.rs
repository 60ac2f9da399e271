//! Small instances that pin down where the axioms and rules part ways.
//!
//! Voters are numbered from 0, so voter `i` of a hand-written example is
//! voter `i - 1` here.

use crate::instance::{RawInstance, RawSubset, ScvInstance};

fn build(voters: usize, subsets: &[(&str, &[&str], i64)], ballots: Vec<Vec<&str>>) -> ScvInstance {
    let raw = RawInstance {
        voters,
        subsets: subsets
            .iter()
            .map(|(name, cands, quota)| RawSubset {
                name: name.to_string(),
                candidates: cands.iter().map(|c| c.to_string()).collect(),
                quota: *quota,
            })
            .collect(),
        ballots: ballots
            .into_iter()
            .map(|b| b.into_iter().map(str::to_string).collect())
            .collect(),
    };
    ScvInstance::validate(&raw).expect("fixture is valid")
}

/// Single-subset (plain committee voting) instance.
pub fn single_subset(voters: usize, candidates: &[&str], k: i64, ballots: &[&[&str]]) -> ScvInstance {
    build(
        voters,
        &[("C", candidates, k)],
        ballots.iter().map(|b| b.to_vec()).collect(),
    )
}

/// Two voters, `C1 = {a1, a2}`, `C2 = {b1, b2}`, one seat each; the voters
/// approve `a1` and `a2`. No committee satisfies SW-JR.
pub fn no_sw_jr() -> ScvInstance {
    build(
        2,
        &[("C1", &["a1", "a2"], 1), ("C2", &["b1", "b2"], 1)],
        vec![vec!["a1"], vec!["a2"]],
    )
}

/// Twelve voters over `C1 = {c1..c8}` (one seat) and `C2 = {a, b, c}` (two
/// seats). `{c1,b,c}` is weak-SW-JR only, `{c1,a,c}` is IW-JR only and
/// `{c7,a,c}` satisfies both.
pub fn axiom_independence() -> ScvInstance {
    let mut ballots = Vec::new();
    let personal = ["c1", "c2", "c3", "c4", "c5", "c6"];
    for c in personal {
        ballots.push(vec![c, "a"]);
    }
    for _ in 0..4 {
        ballots.push(vec!["c7", "b"]);
    }
    for _ in 0..2 {
        ballots.push(vec!["c8", "c"]);
    }
    build(
        12,
        &[
            ("C1", &["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"], 1),
            ("C2", &["a", "b", "c"], 2),
        ],
        ballots,
    )
}

/// Both PAV generalisations pick `{a, c1, b_i}`-style committees (score 8)
/// although `{a, b_i, b_j}` and `{b, a_i, a_j}` (score 7) satisfy SW-JR.
pub fn pav_misses_sw_jr() -> ScvInstance {
    let a_side = ["a1", "a2", "a3", "a4", "a5"];
    let b_side = ["b1", "b2", "b3", "b4", "b5"];
    let mut ballots = Vec::new();
    for x in a_side {
        ballots.push(vec!["a", x]);
    }
    for x in b_side {
        ballots.push(vec!["b", x]);
    }
    ballots.push(vec!["c", "c1"]);
    ballots.push(vec!["c", "c1"]);
    build(
        12,
        &[
            ("C1", &["a", "b", "c"], 1),
            (
                "C2",
                &["a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5", "c1"],
                2,
            ),
        ],
        ballots,
    )
}

/// Twelve voters over `{a, b}`, `{a', b'}`, `{a'', b'', c''}` with quotas
/// `(1, 1, 2)`; six voters approve `a''`.
pub fn sw_pav_misses_iw_jr() -> ScvInstance {
    let mut ballots = Vec::new();
    ballots.extend(std::iter::repeat_n(vec!["a", "a'", "a''"], 6));
    ballots.extend(std::iter::repeat_n(vec!["a", "a'", "b''"], 2));
    ballots.push(vec!["a", "a'", "c''"]);
    ballots.push(vec!["b", "b'", "b''"]);
    ballots.extend(std::iter::repeat_n(vec!["b", "b'", "c''"], 2));
    build(
        12,
        &[
            ("C1", &["a", "b"], 1),
            ("C2", &["a'", "b'"], 1),
            ("C3", &["a''", "b''", "c''"], 2),
        ],
        ballots,
    )
}

/// Twelve voters in blocks of 5, 4 and 3 over `{a,b,c}` and `{a',b',c'}`,
/// two seats each. IW-PAV elects `{a, b, a', b'}` and leaves the block of
/// three unrepresented.
pub fn iw_pav_misses_weak_sw_jr() -> ScvInstance {
    let mut ballots = Vec::new();
    ballots.extend(std::iter::repeat_n(vec!["a", "a'"], 5));
    ballots.extend(std::iter::repeat_n(vec!["b", "b'"], 4));
    ballots.extend(std::iter::repeat_n(vec!["c", "c'"], 3));
    build(
        12,
        &[("C1", &["a", "b", "c"], 2), ("C2", &["a'", "b'", "c'"], 2)],
        ballots,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_shape() {
        assert_eq!(no_sw_jr().committee_size(), 2);
        assert_eq!(axiom_independence().num_candidates(), 11);
        assert_eq!(pav_misses_sw_jr().num_candidates(), 14);
        assert_eq!(sw_pav_misses_iw_jr().committee_size(), 4);
        assert_eq!(iw_pav_misses_weak_sw_jr().committee_size(), 4);
    }
}
