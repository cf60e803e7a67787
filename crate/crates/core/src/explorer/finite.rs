use serde::Serialize;

use super::{bfs, distribution_set, enumerate_class, grow_multiplicities, ExplorerError, Limits, Stop};
use crate::quiver::Quiver;

/// Members explored by the finiteness test before giving up.
const FINITENESS_MEMBER_LIMIT: usize = 1_000_000;

/// A reachable quiver with some multiplicity at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub quiver: Quiver,
    pub sequence: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessVerdict {
    pub finite: bool,
    pub witness: Option<Witness>,
    pub class_size: Option<usize>,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    finite: bool,
    class_size: Option<usize>,
    witness_sequence: Option<&'a [usize]>,
    witness_max_multiplicity: Option<String>,
}

impl FinitenessVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(VerdictJson {
            finite: self.finite,
            class_size: self.class_size,
            witness_sequence: self.witness.as_ref().map(|w| w.sequence.as_slice()),
            witness_max_multiplicity: self
                .witness
                .as_ref()
                .map(|w| w.quiver.max_multiplicity().to_string()),
        })
        .expect("serializable")
    }
}

/// Decides whether the mutation class of the mutable part of `q` is finite.
///
/// A connected quiver on at least three vertices is mutation-finite exactly
/// when no member has a pair joined by three or more arrows, so the search
/// stops at the first such member and reports how it was reached.
pub fn is_mutation_finite(q: &Quiver) -> Result<FinitenessVerdict, ExplorerError> {
    let q = q.restrict_to_mutable();
    if !q.is_connected() {
        return Err(ExplorerError::Disconnected);
    }
    let limits = Limits {
        max_members: FINITENESS_MEMBER_LIMIT,
        max_depth: None,
        max_multiplicity_abort: (q.n_mut() >= 3).then_some(3),
    };
    let run = bfs(&q, &limits);
    match run.stop {
        Stop::Exhausted => Ok(FinitenessVerdict {
            finite: true,
            witness: None,
            class_size: Some(run.members.len()),
        }),
        Stop::Truncated => Err(ExplorerError::Inconclusive(FINITENESS_MEMBER_LIMIT)),
        Stop::Threshold(key) => {
            let mut sequence = Vec::new();
            let mut cur = &run.members[&key];
            while let Some((parent, v)) = &cur.parent {
                sequence.push(*v);
                cur = &run.members[parent];
            }
            sequence.reverse();
            Ok(FinitenessVerdict {
                finite: false,
                witness: Some(Witness {
                    quiver: run.members[&key].quiver.clone(),
                    sequence,
                }),
                class_size: None,
            })
        }
    }
}

/// Whether some member of `Mut[q]` has more than `target` arrows.
pub fn upper_bound_probe(q: &Quiver, target: u64) -> Result<bool, ExplorerError> {
    if q.n_mut() < 3 {
        return Err(ExplorerError::Precondition(
            "at least three mutable vertices are required".into(),
        ));
    }
    let q = q.restrict_to_mutable();
    let verdict = is_mutation_finite(&q)?;
    if verdict.finite {
        let e = enumerate_class(&q, &Limits::default())?;
        let w = distribution_set(&e, false)?;
        return Ok(w.max().is_some_and(|m| m > target));
    }
    let n = q.n_mut() as u64;
    let pairs = n * (n - 1) / 2;
    // Every pair above `threshold` gives more than `target` arrows in total.
    let threshold = (target / pairs).max(2);
    let grown = grow_multiplicities(&q, threshold)?;
    let count = grown.quiver.arrow_count(false);
    debug_assert!(count.0 > dashu_int::UBig::from(target));
    Ok(count.0 > dashu_int::UBig::from(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_arrow_triangle_is_infinite_at_seed() {
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 2), (2, 0, 2)]).unwrap();
        let v = is_mutation_finite(&q).unwrap();
        assert!(!v.finite);
        let w = v.witness.unwrap();
        assert!(w.sequence.is_empty());
        assert_eq!(w.quiver, q);
    }

    #[test]
    fn markov_and_rank_two() {
        let markov = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        let v = is_mutation_finite(&markov).unwrap();
        assert!(v.finite);
        assert_eq!(v.class_size, Some(1));
        let two = Quiver::from_arrows(2, 0, &[(0, 1, 5)]).unwrap();
        assert!(is_mutation_finite(&two).unwrap().finite);
    }

    #[test]
    fn acyclic_triangle_with_double_arrow_is_infinite_later() {
        // 0 => 1 -> 2 and 0 -> 2: reaches multiplicity 3 after a mutation.
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let v = is_mutation_finite(&q).unwrap();
        assert!(!v.finite);
        let w = v.witness.unwrap();
        assert_eq!(q.mutate_sequence(&w.sequence).unwrap(), w.quiver);
        assert!(w.quiver.max_multiplicity() >= dashu_int::UBig::from(3u8));
    }

    #[test]
    fn disconnected_is_rejected() {
        let q = Quiver::from_arrows(4, 0, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(is_mutation_finite(&q), Err(ExplorerError::Disconnected));
    }

    #[test]
    fn probe_examples() {
        let markov = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(!upper_bound_probe(&markov, 7).unwrap());
        assert!(upper_bound_probe(&markov, 5).unwrap());
        let wild = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(upper_bound_probe(&wild, 1_000_000).unwrap());
    }
}
