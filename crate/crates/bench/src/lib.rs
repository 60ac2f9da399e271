//! Workloads shared by the benchmarks.

use scv_core::generate::{generate_instance, Model};
use scv_core::search::encode_set_cover;
use scv_core::{ScvInstance, SetCoverInstance};

/// Uniform random instance with `ℓ` equal subsets of `per_subset`
/// candidates, quota `quota` each.
pub fn uniform(seed: u64, voters: usize, subsets: usize, per_subset: usize, quota: usize, p: f64) -> ScvInstance {
    let model = Model::Uniform {
        voters,
        sizes: vec![per_subset; subsets],
        quotas: vec![quota; subsets],
        approval_probability: p,
    };
    generate_instance(&model, seed).expect("valid uniform parameters")
}

/// Set Cover on an odd cycle of `n` elements where every subset is an
/// edge `{i, i+1 mod n}` and the budget is one short of `⌈n/2⌉`. No cover
/// exists, so the existence search has to refute every branch.
pub fn odd_cycle_cover(n: usize) -> SetCoverInstance {
    assert!(n >= 3 && n % 2 == 1, "need an odd cycle");
    let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SetCoverInstance::new(n, edges, n / 2).expect("edges cover the cycle")
}

/// The SW-JR instance encoding [`odd_cycle_cover`].
pub fn odd_cycle_encoding(n: usize) -> ScvInstance {
    encode_set_cover(&odd_cycle_cover(n)).expect("encoding is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use scv_core::search::sw_jr_exists;

    #[test]
    fn odd_cycles_are_no_instances() {
        for n in [3, 5, 7] {
            assert_eq!(sw_jr_exists(&odd_cycle_encoding(n)).unwrap(), None);
        }
    }

    #[test]
    fn uniform_has_requested_shape() {
        let inst = uniform(1, 10, 3, 4, 2, 0.3);
        assert_eq!(inst.num_candidates(), 12);
        assert_eq!(inst.committee_size(), 6);
    }
}
