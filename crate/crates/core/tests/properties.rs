use arrowscope::canonical::canonical_quiver;
use arrowscope::io::{parse_quiver, quiver_to_json, write_quiver};
use arrowscope::{are_isomorphic, canonical_form, Quiver};
use proptest::prelude::*;

mod common;
use common::{matrix, multiset_mutation};

/// Random quiver with entries in `[-3, 3]` and no frozen-frozen arrows.
fn quiver(max_mut: usize, max_frozen: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_mut, 0..=max_frozen).prop_flat_map(|(m, f)| {
        let n = m + f;
        proptest::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    if i >= m && j >= m {
                        continue;
                    }
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            Quiver::from_matrix(m, f, &rows).unwrap()
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least row-major matrix over every admissible relabeling.
fn brute_canonical(q: &Quiver) -> Vec<Vec<i64>> {
    let (m, f) = (q.n_mut(), q.n_frozen());
    let mut best: Option<Vec<Vec<i64>>> = None;
    for pm in permutations(m) {
        for pf in permutations(f) {
            let perm: Vec<usize> = pm.iter().copied().chain(pf.iter().map(|x| x + m)).collect();
            let cand = matrix(&q.permute(&perm).unwrap());
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

fn random_admissible_perm(m: usize, f: usize, seed: u64) -> Vec<usize> {
    let mut pm: Vec<usize> = (0..m).collect();
    let mut pf: Vec<usize> = (m..m + f).collect();
    let mut s = seed;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 33) as usize
    };
    for i in (1..m).rev() {
        pm.swap(i, next() % (i + 1));
    }
    for i in (1..f).rev() {
        pf.swap(i, next() % (i + 1));
    }
    pm.extend(pf);
    pm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mutation_matches_multiset_oracle(q in quiver(5, 2), k in 0usize..5) {
        let k = k % q.n_mut();
        prop_assert_eq!(q.mutate(k).unwrap(), multiset_mutation(&q, k));
    }

    #[test]
    fn mutation_is_an_involution(q in quiver(6, 3), k in 0usize..6) {
        let k = k % q.n_mut();
        prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
    }

    #[test]
    fn unconnected_mutations_commute(q in quiver(6, 2), i in 0usize..6, j in 0usize..6) {
        let (i, j) = (i % q.n_mut(), j % q.n_mut());
        if q.multiplicity(i, j) == dashu_int::UBig::ZERO {
            prop_assert_eq!(q.mutate_sequence(&[i, j]).unwrap(), q.mutate_sequence(&[j, i]).unwrap());
        }
    }

    #[test]
    fn canonical_key_ignores_relabeling(q in quiver(6, 3), seed in any::<u64>()) {
        let perm = random_admissible_perm(q.n_mut(), q.n_frozen(), seed);
        let p = q.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(&q), canonical_form(&p));
        prop_assert!(are_isomorphic(&q, &p));
    }

    #[test]
    fn canonical_key_agrees_with_brute_force(a in quiver(4, 1), b in quiver(4, 1)) {
        let same_shape = a.n_mut() == b.n_mut() && a.n_frozen() == b.n_frozen();
        let brute = same_shape && brute_canonical(&a) == brute_canonical(&b);
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), brute);
    }

    #[test]
    fn canonical_key_agrees_with_brute_force_on_mutants(q in quiver(5, 0), k in 0usize..5, l in 0usize..5) {
        // Mutants of one quiver are often isomorphic, exercising the positive case.
        let (k, l) = (k % q.n_mut(), l % q.n_mut());
        let a = q.mutate(k).unwrap();
        let b = q.mutate(l).unwrap();
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), brute_canonical(&a) == brute_canonical(&b));
    }

    #[test]
    fn keys_decode_to_the_canonical_quiver(q in quiver(6, 2)) {
        let key = canonical_form(&q);
        let decoded = key.decode().unwrap();
        prop_assert_eq!(&decoded, &canonical_quiver(&q));
        prop_assert_eq!(canonical_form(&decoded), key.clone());
        prop_assert_eq!(arrowscope::CanonicalKey::from_hex(&key.to_hex()).unwrap(), key);
    }

    #[test]
    fn quiver_text_and_json_round_trip(q in quiver(6, 3)) {
        prop_assert_eq!(parse_quiver(&write_quiver(&q)).unwrap(), q.clone());
        let json = serde_json::to_string(&quiver_to_json(&q)).unwrap();
        prop_assert_eq!(parse_quiver(&json).unwrap(), q);
    }
}
