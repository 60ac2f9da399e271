//! Seeded instance sampling and brute-force oracles shared by the
//! integration suites. Nothing here calls the optimised code paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scv_core::committee::committees;
use scv_core::generate::{generate_instance, Model};
use scv_core::{Committee, ScvInstance, SetCoverInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform instance with at most `max_voters` voters, `max_candidates`
/// candidates and `max_subsets` subsets, parameters drawn from `rng`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_voters: usize,
    max_candidates: usize,
    max_subsets: usize,
) -> ScvInstance {
    let subsets = rng.random_range(1..=max_subsets.min(max_candidates));
    let total = rng.random_range(subsets..=max_candidates);
    let mut sizes = vec![1usize; subsets];
    for _ in subsets..total {
        let j = rng.random_range(0..subsets);
        sizes[j] += 1;
    }
    let quotas: Vec<usize> = sizes.iter().map(|&s| rng.random_range(1..=s)).collect();
    let voters = rng.random_range(1..=max_voters);
    let p = *[0.1, 0.2, 0.35, 0.5, 0.7].choose(rng).unwrap();
    let model = Model::Uniform {
        voters,
        sizes,
        quotas,
        approval_probability: p,
    };
    generate_instance(&model, rng.random()).expect("valid parameters")
}

/// Up to `count` distinct feasible committees: all of them when there are
/// few, otherwise a random sample.
pub fn sample_committees(inst: &ScvInstance, rng: &mut ChaCha8Rng, count: usize) -> Vec<Committee> {
    let all: Vec<Committee> = committees(inst).take(4096).collect();
    if all.len() <= count {
        return all;
    }
    all.choose_multiple(rng, count).cloned().collect()
}

fn harmonic(j: usize) -> BigRational {
    (1..=j).fold(BigRational::zero(), |acc, p| {
        acc + BigRational::new(BigInt::one(), BigInt::from(p))
    })
}

/// SW-PAV straight from the definition.
pub fn sw_pav_oracle(inst: &ScvInstance, w: &Committee) -> BigRational {
    inst.ballots()
        .iter()
        .map(|b| harmonic(b.iter().filter(|&&c| w.members().contains(&c)).count()))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// IW-PAV straight from the definition.
pub fn iw_pav_oracle(inst: &ScvInstance, w: &Committee) -> BigRational {
    let mut total = BigRational::zero();
    for s in inst.subsets() {
        for b in inst.ballots() {
            let t = b
                .iter()
                .filter(|&&c| s.contains(c) && w.members().contains(&c))
                .count();
            total += harmonic(t);
        }
    }
    total
}

/// Best score and lexicographically least maximiser by full enumeration.
pub fn pav_oracle(
    inst: &ScvInstance,
    score: impl Fn(&ScvInstance, &Committee) -> BigRational,
) -> (BigRational, Committee) {
    let mut best: Option<(BigRational, Committee)> = None;
    for w in committees(inst) {
        let s = score(inst, &w);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, w));
        }
    }
    best.unwrap()
}

/// Whether some at most `budget` subsets cover the ground set.
pub fn cover_exists(sc: &SetCoverInstance) -> bool {
    let t = sc.collection().len();
    (0u32..1 << t).any(|mask| {
        mask.count_ones() as usize <= sc.budget() && {
            let chosen: Vec<usize> = (0..t).filter(|&j| mask >> j & 1 == 1).collect();
            sc.uncovered_by(&chosen).is_empty()
        }
    })
}

/// Random Set Cover instance with `|X| ≤ max_ground` and `t ≤ max_subsets`.
pub fn random_set_cover(rng: &mut ChaCha8Rng, max_ground: usize, max_subsets: usize) -> SetCoverInstance {
    let ground = rng.random_range(1..=max_ground);
    let t = rng.random_range(1..=max_subsets);
    let density = *[0.15, 0.3, 0.5].choose(rng).unwrap();
    let mut collection: Vec<Vec<usize>> = (0..t)
        .map(|_| (0..ground).filter(|_| rng.random_bool(density)).collect())
        .collect();
    for e in 0..ground {
        if !collection.iter().any(|s| s.contains(&e)) {
            let j = rng.random_range(0..t);
            collection[j].push(e);
        }
    }
    let budget = rng.random_range(1..=t);
    SetCoverInstance::new(ground, collection, budget).expect("covering by construction")
}
