//! Set Cover instances, the source side of the SW-JR hardness reduction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// File shape: `{ "ground": int, "subsets": [[int,...],...], "budget": int }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSetCover {
    pub ground: usize,
    pub subsets: Vec<Vec<usize>>,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetCoverError {
    #[error("ground set is empty")]
    EmptyGround,
    #[error("subset {subset} contains element {element} outside the ground set of size {ground}")]
    ElementOutOfRange {
        subset: usize,
        element: usize,
        ground: usize,
    },
    #[error("elements {0:?} are in no subset")]
    NotCovering(Vec<usize>),
    #[error("budget {budget} must lie in 1..={subsets}")]
    BudgetOutOfRange { budget: usize, subsets: usize },
}

/// Ground set `0..ground`, a collection covering it, and a budget
/// `1 ≤ budget ≤ collection.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    ground: usize,
    collection: Vec<Vec<usize>>,
    budget: usize,
}

impl SetCoverInstance {
    pub fn new(
        ground: usize,
        collection: Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<Self, SetCoverError> {
        if ground == 0 {
            return Err(SetCoverError::EmptyGround);
        }
        let mut covered = vec![false; ground];
        let mut collection = collection;
        for (j, s) in collection.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            for &e in s.iter() {
                if e >= ground {
                    return Err(SetCoverError::ElementOutOfRange {
                        subset: j,
                        element: e,
                        ground,
                    });
                }
                covered[e] = true;
            }
        }
        let missing: Vec<usize> = (0..ground).filter(|&e| !covered[e]).collect();
        if !missing.is_empty() {
            return Err(SetCoverError::NotCovering(missing));
        }
        if budget == 0 || budget > collection.len() {
            return Err(SetCoverError::BudgetOutOfRange {
                budget,
                subsets: collection.len(),
            });
        }
        Ok(SetCoverInstance {
            ground,
            collection,
            budget,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn collection(&self) -> &[Vec<usize>] {
        &self.collection
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Elements left uncovered by the chosen subset indices.
    pub fn uncovered_by(&self, chosen: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.ground];
        for &j in chosen {
            for &e in &self.collection[j] {
                covered[e] = true;
            }
        }
        (0..self.ground).filter(|&e| !covered[e]).collect()
    }

    pub fn to_raw(&self) -> RawSetCover {
        RawSetCover {
            ground: self.ground,
            subsets: self.collection.clone(),
            budget: self.budget,
        }
    }
}
