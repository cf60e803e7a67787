use std::collections::HashSet;

use dashu_int::UBig;

use super::{is_mutation_finite, ExplorerError};
use crate::quiver::{sign, Quiver};

pub const DEFAULT_MUTATION_CAP: u64 = 1_000_000;

/// Circulation rounds spent on one triangle before moving to the next.
const ROUNDS_PER_TRIANGLE: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Growth {
    pub quiver: Quiver,
    pub sequence: Vec<usize>,
}

struct State {
    q: Quiver,
    seq: Vec<usize>,
    cap: u64,
}

impl State {
    fn mutate(&mut self, k: usize) -> Result<(), ExplorerError> {
        if self.seq.len() as u64 >= self.cap {
            return Err(ExplorerError::MutationCap(self.cap));
        }
        self.q = self.q.mutate(k)?;
        self.seq.push(k);
        Ok(())
    }
}

/// Whether the full subquiver on `t` is an oriented 3-cycle.
pub fn is_cyclic_triangle(q: &Quiver, t: [usize; 3]) -> bool {
    let s = sign(q.entry(t[0], t[1]));
    s != 0 && sign(q.entry(t[1], t[2])) == s && sign(q.entry(t[2], t[0])) == s
}

/// One circulation step on a cyclic triangle: mutate at the vertex opposite
/// the arrow of smallest multiplicity (lowest such vertex on ties).
pub fn circulate(q: &Quiver, t: [usize; 3]) -> (Quiver, usize) {
    let mut best: Option<(UBig, usize)> = None;
    for idx in 0..3 {
        let v = t[idx];
        let opposite = q.multiplicity(t[(idx + 1) % 3], t[(idx + 2) % 3]);
        let better = match &best {
            None => true,
            Some((m, u)) => opposite < *m || (opposite == *m && v < *u),
        };
        if better {
            best = Some((opposite, v));
        }
    }
    let v = best.expect("three candidates").1;
    (q.mutate(v).expect("mutable triangle vertex"), v)
}

fn all_pairs_above(q: &Quiver, n: &UBig) -> bool {
    let size = q.n_mut();
    (0..size).all(|i| (i + 1..size).all(|j| q.multiplicity(i, j) > *n))
}

fn triangle_above(q: &Quiver, t: [usize; 3], n: &UBig) -> bool {
    q.multiplicity(t[0], t[1]) > *n && q.multiplicity(t[1], t[2]) > *n && q.multiplicity(t[0], t[2]) > *n
}

/// Every vertex joined to the triangle has more than `n` arrows to each of its vertices.
fn neighbours_above(q: &Quiver, t: [usize; 3], n: &UBig) -> bool {
    (0..q.n_mut()).filter(|w| !t.contains(w)).all(|w| {
        let touching = t.iter().any(|&x| q.multiplicity(w, x) > UBig::ZERO);
        !touching || t.iter().all(|&x| q.multiplicity(w, x) > *n)
    })
}

/// Mutates inside the triangle until it is cyclically oriented.
fn make_cyclic(st: &mut State, t: [usize; 3]) -> Result<(), ExplorerError> {
    for _ in 0..4 {
        if is_cyclic_triangle(&st.q, t) {
            return Ok(());
        }
        // A vertex with an incoming and an outgoing triangle arrow sits in the
        // middle of two same-oriented arrows.
        let middle = t.iter().copied().find(|&v| {
            let signs: Vec<i8> = t.iter().filter(|&&u| u != v).map(|&u| sign(st.q.entry(u, v))).collect();
            signs.contains(&1) && signs.contains(&-1)
        });
        let k = match middle {
            Some(v) => v,
            None => {
                // A source or sink with two leaves: reverse one leaf first.
                let centre = t
                    .iter()
                    .copied()
                    .find(|&v| t.iter().filter(|&&u| u != v).all(|&u| sign(st.q.entry(u, v)) != 0))
                    .ok_or_else(|| ExplorerError::Precondition("triangle is not connected".into()))?;
                t.iter().copied().filter(|&u| u != centre).min().expect("two leaves")
            }
        };
        st.mutate(k)?;
    }
    if is_cyclic_triangle(&st.q, t) {
        Ok(())
    } else {
        Err(ExplorerError::Precondition("could not orient the triangle cyclically".into()))
    }
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Finds a member of `Mut[q]` with more than `n` arrows between every pair of vertices.
pub fn grow_multiplicities(q: &Quiver, n: u64) -> Result<Growth, ExplorerError> {
    grow_multiplicities_with_cap(q, n, DEFAULT_MUTATION_CAP)
}

pub fn grow_multiplicities_with_cap(q: &Quiver, n: u64, cap: u64) -> Result<Growth, ExplorerError> {
    if n < 2 {
        return Err(ExplorerError::Precondition("N must be at least 2".into()));
    }
    if q.n_frozen() != 0 {
        return Err(ExplorerError::Precondition("frozen vertices are not allowed".into()));
    }
    if q.n_mut() < 3 {
        return Err(ExplorerError::Precondition(
            "at least three vertices are required".into(),
        ));
    }
    if !q.is_connected() {
        return Err(ExplorerError::Disconnected);
    }
    let big_n = UBig::from(n);
    if all_pairs_above(q, &big_n) {
        return Ok(Growth {
            quiver: q.clone(),
            sequence: Vec::new(),
        });
    }
    let verdict = is_mutation_finite(q)?;
    let witness = verdict
        .witness
        .ok_or_else(|| ExplorerError::Precondition("the quiver is mutation-finite".into()))?;
    let mut st = State {
        q: witness.quiver,
        seq: witness.sequence,
        cap,
    };

    // A pair with at least three arrows plus a vertex joined to it.
    let size = q.n_mut();
    let three = UBig::from(3u8);
    let (s, t) = (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .find(|&(i, j)| st.q.multiplicity(i, j) >= three)
        .expect("witness has a heavy pair");
    let u = (0..size)
        .find(|&w| w != s && w != t && (st.q.multiplicity(w, s) > UBig::ZERO || st.q.multiplicity(w, t) > UBig::ZERO))
        .expect("connected quiver");
    let first = sorted([s, t, u]);
    make_cyclic(&mut st, first)?;

    let mut tried: HashSet<[usize; 3]> = HashSet::new();
    let mut current = first;
    loop {
        let mut rounds = 0;
        while !(triangle_above(&st.q, current, &big_n) && neighbours_above(&st.q, current, &big_n))
            && rounds < 3 * ROUNDS_PER_TRIANGLE
        {
            let (next, v) = circulate(&st.q, current);
            if st.seq.len() as u64 >= cap {
                return Err(ExplorerError::MutationCap(cap));
            }
            st.q = next;
            st.seq.push(v);
            rounds += 1;
            if all_pairs_above(&st.q, &big_n) {
                break;
            }
        }
        if all_pairs_above(&st.q, &big_n) {
            return Ok(Growth {
                quiver: st.q,
                sequence: st.seq,
            });
        }
        tried.insert(current);
        let candidate = (0..size)
            .flat_map(|i| (i + 1..size).flat_map(move |j| (j + 1..size).map(move |k| [i, j, k])))
            .filter(|t| !tried.contains(t))
            .filter(|&t| is_cyclic_triangle(&st.q, t) && triangle_above(&st.q, t, &big_n))
            .find(|&t| !neighbours_above(&st.q, t, &big_n));
        match candidate {
            Some(t) => current = t,
            None => {
                return Err(ExplorerError::Precondition(
                    "no untried heavy cyclic triangle is left".into(),
                ))
            }
        }
    }
}

/// The shape reached by circulating a heavy triangle with a fourth vertex
/// attached, on vertices `0..4`: `a = |b01| > b = |b02| > c = |b12| > n`, the
/// triangles `012` and `312` cyclic, `d = |b31| > c`, and `e = |b32|`,
/// `f = |b30|` both above `n`.
pub fn is_q_star(q: &Quiver, n: u64) -> bool {
    if q.n_mut() != 4 {
        return false;
    }
    let m = |i, j| q.multiplicity(i, j);
    let (a, b, c) = (m(0, 1), m(0, 2), m(1, 2));
    let (d, e, f) = (m(3, 1), m(3, 2), m(3, 0));
    let big_n = UBig::from(n);
    is_cyclic_triangle(q, [0, 1, 2])
        && is_cyclic_triangle(q, [3, 1, 2])
        && a > b
        && b > c
        && c > big_n
        && d > c
        && e > big_n
        && f > big_n
}
