//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::instance::{InstanceError, RawInstance, RawSubset, ScvInstance};
use crate::search::encode_set_cover;
use crate::set_cover::SetCoverInstance;

/// Voters sharing a ballot. If `personal` is non-empty it must name one
/// extra candidate per voter of the block.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartyBlock {
    pub voters: usize,
    #[serde(default)]
    pub shared: Vec<String>,
    #[serde(default)]
    pub personal: Vec<String>,
}

/// Candidate layout plus blocks of voters, read from a JSON spec file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartyList {
    pub subsets: Vec<RawSubset>,
    pub blocks: Vec<PartyBlock>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    /// Subsets `C1..Cℓ` of the given sizes holding candidates `c1..cm`;
    /// every voter approves every candidate independently with probability
    /// `approval_probability`.
    Uniform {
        voters: usize,
        sizes: Vec<usize>,
        quotas: Vec<usize>,
        approval_probability: f64,
    },
    PartyList(PartyList),
    SetCover(SetCoverInstance),
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("bad model parameters: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Deterministic for a fixed `(model, seed)`; only `Uniform` consumes the seed.
pub fn generate_instance(model: &Model, seed: u64) -> Result<ScvInstance, GenError> {
    match model {
        Model::Uniform {
            voters,
            sizes,
            quotas,
            approval_probability: p,
        } => {
            if sizes.len() != quotas.len() {
                return Err(GenError::BadSpec(format!(
                    "{} subset sizes but {} quotas",
                    sizes.len(),
                    quotas.len()
                )));
            }
            if !(0.0..=1.0).contains(p) {
                return Err(GenError::BadSpec(format!("approval probability {p} outside [0, 1]")));
            }
            if *voters == 0 || sizes.is_empty() {
                return Err(GenError::BadSpec("need at least one voter and one subset".into()));
            }
            if let Some(j) = sizes.iter().zip(quotas).position(|(&s, &q)| q == 0 || q > s) {
                return Err(GenError::BadSpec(format!(
                    "quota {} infeasible for subset {} of size {}",
                    quotas[j],
                    j + 1,
                    sizes[j]
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m: usize = sizes.iter().sum();
            let names: Vec<String> = (1..=m).map(|c| format!("c{c}")).collect();
            let mut subsets = Vec::with_capacity(sizes.len());
            let mut next = 0;
            for (j, (&size, &quota)) in sizes.iter().zip(quotas).enumerate() {
                subsets.push(RawSubset {
                    name: format!("C{}", j + 1),
                    candidates: names[next..next + size].to_vec(),
                    quota: quota as i64,
                });
                next += size;
            }
            let ballots = (0..*voters)
                .map(|_| names.iter().filter(|_| rng.random_bool(*p)).cloned().collect())
                .collect();
            Ok(ScvInstance::validate(&RawInstance {
                voters: *voters,
                subsets,
                ballots,
            })?)
        }
        Model::PartyList(spec) => {
            let mut ballots = Vec::new();
            for (b, block) in spec.blocks.iter().enumerate() {
                if !block.personal.is_empty() && block.personal.len() != block.voters {
                    return Err(GenError::BadSpec(format!(
                        "block {} has {} voters but {} personal candidates",
                        b + 1,
                        block.voters,
                        block.personal.len()
                    )));
                }
                for v in 0..block.voters {
                    let mut ballot = block.shared.clone();
                    if let Some(extra) = block.personal.get(v) {
                        ballot.insert(0, extra.clone());
                    }
                    ballots.push(ballot);
                }
            }
            Ok(ScvInstance::validate(&RawInstance {
                voters: ballots.len(),
                subsets: spec.subsets.clone(),
                ballots,
            })?)
        }
        Model::SetCover(sc) => Ok(encode_set_cover(sc)?),
    }
}
