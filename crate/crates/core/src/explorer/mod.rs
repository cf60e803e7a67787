//! Breadth-first enumeration of mutation classes up to isomorphism, together
//! with arrow-count distribution sets, the finiteness test and the
//! multiplicity-growth procedure for mutation-infinite quivers.

mod finite;
mod growth;

use std::collections::{BTreeMap, HashMap};

use dashu_int::UBig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{canonical_form, CanonicalKey};
use crate::quiver::{Quiver, QuiverError};

pub use finite::{is_mutation_finite, upper_bound_probe, FinitenessVerdict, Witness};
pub use growth::{
    circulate, grow_multiplicities, grow_multiplicities_with_cap, is_cyclic_triangle, is_q_star,
    Growth, DEFAULT_MUTATION_CAP,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExplorerError {
    #[error("invalid limits: {0} must be positive")]
    InvalidLimits(&'static str),
    #[error("the enumeration was truncated, so its distribution set is undefined")]
    Truncated,
    #[error("the quiver is not connected")]
    Disconnected,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("mutation cap of {0} exceeded before every multiplicity passed the threshold")]
    MutationCap(u64),
    #[error("class exploration exceeded {0} members without a verdict")]
    Inconclusive(usize),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Limits on a class enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_members: usize,
    pub max_depth: Option<usize>,
    pub max_multiplicity_abort: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_members: 100_000,
            max_depth: None,
            max_multiplicity_abort: None,
        }
    }
}

impl Limits {
    fn validate(&self) -> Result<(), ExplorerError> {
        if self.max_members == 0 {
            return Err(ExplorerError::InvalidLimits("max_members"));
        }
        if self.max_depth == Some(0) {
            return Err(ExplorerError::InvalidLimits("max_depth"));
        }
        if self.max_multiplicity_abort == Some(0) {
            return Err(ExplorerError::InvalidLimits("max_multiplicity_abort"));
        }
        Ok(())
    }
}

/// One isomorphism class inside an enumeration.
#[derive(Clone, Debug)]
pub struct Member {
    /// First quiver of this class met during the search.
    pub quiver: Quiver,
    pub depth: usize,
    /// The member this one was first reached from, and the vertex mutated.
    pub parent: Option<(CanonicalKey, usize)>,
}

#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    pub seed: Quiver,
    pub members: BTreeMap<CanonicalKey, Member>,
    pub truncated: bool,
    pub limits_used: Limits,
}

impl ClassEnumeration {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn seed_key(&self) -> CanonicalKey {
        canonical_form(&self.seed)
    }

    /// Mutation sequence taking the seed to the stored representative of `key`.
    pub fn path_to(&self, key: &CanonicalKey) -> Option<Vec<usize>> {
        let mut seq = Vec::new();
        let mut cur = self.members.get(key)?;
        while let Some((parent, v)) = &cur.parent {
            seq.push(*v);
            cur = &self.members[parent];
        }
        seq.reverse();
        Some(seq)
    }
}

/// Sorted set of arrow counts over a mutation class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionSet {
    pub values: Vec<u64>,
    pub is_continuous: bool,
}

impl DistributionSet {
    pub fn from_values(values: impl IntoIterator<Item = u64>) -> Self {
        let mut values: Vec<u64> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        let is_continuous = match (values.first(), values.last()) {
            (Some(&lo), Some(&hi)) => (hi - lo) as usize + 1 == values.len(),
            _ => true,
        };
        DistributionSet {
            values,
            is_continuous,
        }
    }

    /// The integer interval `[lo, hi]`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        Self::from_values(lo..=hi)
    }

    pub fn min(&self) -> Option<u64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.values.last().copied()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// Values strictly between the extremes that are not attained.
    pub fn gaps(&self) -> Vec<u64> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (lo..=hi).filter(|v| !self.contains(*v)).collect(),
            _ => Vec::new(),
        }
    }
}

pub(crate) enum Stop {
    Exhausted,
    Truncated,
    /// A member reached the multiplicity threshold.
    Threshold(CanonicalKey),
}

pub(crate) struct Bfs {
    pub members: HashMap<CanonicalKey, Member>,
    pub stop: Stop,
}

/// Breadth-first closure shared by enumeration and the finiteness test.
pub(crate) fn bfs(seed: &Quiver, limits: &Limits) -> Bfs {
    let seed_key = canonical_form(seed);
    let mut members = HashMap::new();
    members.insert(
        seed_key.clone(),
        Member {
            quiver: seed.clone(),
            depth: 0,
            parent: None,
        },
    );
    let threshold = limits.max_multiplicity_abort.map(UBig::from);
    if let Some(t) = &threshold {
        if seed.max_multiplicity() >= *t {
            return Bfs {
                members,
                stop: Stop::Threshold(seed_key),
            };
        }
    }
    let n_mut = seed.n_mut();
    let mut frontier = vec![seed_key];
    let mut depth = 0;
    while !frontier.is_empty() {
        let at_depth_limit = limits.max_depth.is_some_and(|d| depth >= d);
        let expanded: Vec<Vec<(CanonicalKey, Quiver)>> = frontier
            .par_iter()
            .map(|key| {
                let rep = &members[key].quiver;
                (0..n_mut)
                    .map(|v| {
                        let q = rep.mutate(v).expect("mutable vertex");
                        (canonical_form(&q), q)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (parent, children) in frontier.iter().zip(expanded) {
            for (v, (key, q)) in children.into_iter().enumerate() {
                if members.contains_key(&key) {
                    continue;
                }
                if at_depth_limit || members.len() >= limits.max_members {
                    return Bfs {
                        members,
                        stop: Stop::Truncated,
                    };
                }
                let hit = threshold.as_ref().is_some_and(|t| q.max_multiplicity() >= *t);
                members.insert(
                    key.clone(),
                    Member {
                        quiver: q,
                        depth: depth + 1,
                        parent: Some((parent.clone(), v)),
                    },
                );
                if hit {
                    return Bfs {
                        members,
                        stop: Stop::Threshold(key),
                    };
                }
                next.push(key);
            }
        }
        frontier = next;
        depth += 1;
    }
    Bfs {
        members,
        stop: Stop::Exhausted,
    }
}

/// Enumerates `Mut[seed]` up to isomorphism.
///
/// Work within one BFS level runs on the current rayon pool; members are merged
/// in a fixed order, so the result does not depend on the thread count.
pub fn enumerate_class(seed: &Quiver, limits: &Limits) -> Result<ClassEnumeration, ExplorerError> {
    limits.validate()?;
    let run = bfs(seed, limits);
    let truncated = !matches!(run.stop, Stop::Exhausted);
    Ok(ClassEnumeration {
        seed: seed.clone(),
        members: run.members.into_iter().collect(),
        truncated,
        limits_used: limits.clone(),
    })
}

/// Image of the arrow count over a complete enumeration.
pub fn distribution_set(e: &ClassEnumeration, extended: bool) -> Result<DistributionSet, ExplorerError> {
    if e.truncated {
        return Err(ExplorerError::Truncated);
    }
    Ok(DistributionSet::from_values(
        e.members.values().map(|m| m.quiver.arrow_count_u64(extended)),
    ))
}
