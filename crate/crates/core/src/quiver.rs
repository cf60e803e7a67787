//! Quivers as skew-symmetric exchange matrices and the mutation rule.

use std::fmt;

use dashu_int::{IBig, UBig};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {vertex} is out of range for a quiver with {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} is frozen and cannot be mutated")]
    FrozenVertex(usize),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("diagonal entry ({0}, {0}) is nonzero")]
    Loop(usize),
    #[error("entries ({i}, {j}) and ({j}, {i}) are not negatives of each other")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("frozen vertices {i} and {j} are joined by arrows")]
    FrozenArrow { i: usize, j: usize },
    #[error("permutation is not a bijection preserving the frozen block")]
    BadPermutation,
}

/// A cluster quiver on `n_mut` mutable vertices followed by `n_frozen` frozen ones.
///
/// Entry `b[i][j]` is the number of arrows `i -> j` minus the number of arrows
/// `j -> i`. Values are immutable; every operation returns a new quiver.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n_mut: usize,
    n_frozen: usize,
    b: Vec<IBig>,
}

/// Total number of arrows, counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowCount(pub UBig);

impl ArrowCount {
    pub fn value(&self) -> &UBig {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl fmt::Display for ArrowCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn sign(x: &IBig) -> i8 {
    if *x > IBig::ZERO {
        1
    } else if *x < IBig::ZERO {
        -1
    } else {
        0
    }
}

pub(crate) fn abs(x: &IBig) -> UBig {
    use dashu_int::ops::UnsignedAbs;
    x.unsigned_abs()
}

impl Quiver {
    /// The quiver with no arrows.
    pub fn empty(n_mut: usize, n_frozen: usize) -> Self {
        let n = n_mut + n_frozen;
        Quiver {
            n_mut,
            n_frozen,
            b: vec![IBig::ZERO; n * n],
        }
    }

    /// Builds a quiver from full matrix rows, checking every invariant.
    pub fn new(n_mut: usize, n_frozen: usize, rows: Vec<Vec<IBig>>) -> Result<Self, QuiverError> {
        let n = n_mut + n_frozen;
        if rows.len() != n {
            return Err(QuiverError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut b = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(QuiverError::RowLength {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
            b.extend(r);
        }
        let q = Quiver { n_mut, n_frozen, b };
        q.check()?;
        Ok(q)
    }

    /// Convenience constructor from machine integers.
    pub fn from_matrix(n_mut: usize, n_frozen: usize, rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        Self::new(
            n_mut,
            n_frozen,
            rows.iter()
                .map(|r| r.iter().map(|&x| IBig::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a quiver from `(tail, head, multiplicity)` triples; opposite arrows cancel.
    pub fn from_arrows(
        n_mut: usize,
        n_frozen: usize,
        arrows: &[(usize, usize, u64)],
    ) -> Result<Self, QuiverError> {
        let mut q = Self::empty(n_mut, n_frozen);
        let n = q.order();
        for &(i, j, m) in arrows {
            for v in [i, j] {
                if v >= n {
                    return Err(QuiverError::VertexOutOfRange { vertex: v, order: n });
                }
            }
            if i == j {
                return Err(QuiverError::Loop(i));
            }
            let m = IBig::from(m);
            q.b[i * n + j] += &m;
            q.b[j * n + i] -= &m;
        }
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<(), QuiverError> {
        let n = self.order();
        for i in 0..n {
            if self.b[i * n + i] != IBig::ZERO {
                return Err(QuiverError::Loop(i));
            }
            for j in i + 1..n {
                let (x, y) = (&self.b[i * n + j], &self.b[j * n + i]);
                if *x != -y {
                    return Err(QuiverError::NotSkewSymmetric { i, j });
                }
                if i >= self.n_mut && *x != IBig::ZERO {
                    return Err(QuiverError::FrozenArrow { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn n_mut(&self) -> usize {
        self.n_mut
    }

    pub fn n_frozen(&self) -> usize {
        self.n_frozen
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.n_mut + self.n_frozen
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.n_mut
    }

    pub fn entry(&self, i: usize, j: usize) -> &IBig {
        &self.b[i * self.order() + j]
    }

    /// Number of arrows between `i` and `j` in either direction.
    pub fn multiplicity(&self, i: usize, j: usize) -> UBig {
        abs(self.entry(i, j))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[IBig]> {
        self.b.chunks(self.order().max(1)).take(self.order())
    }

    /// Mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver, QuiverError> {
        let n = self.order();
        if k >= n {
            return Err(QuiverError::VertexOutOfRange { vertex: k, order: n });
        }
        if k >= self.n_mut {
            return Err(QuiverError::FrozenVertex(k));
        }
        let mut out = self.b.clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let bik = &self.b[i * n + k];
            let s = sign(bik);
            if s == 0 {
                continue;
            }
            for j in 0..n {
                if j == k || j == i || (i >= self.n_mut && j >= self.n_mut) {
                    continue;
                }
                let bkj = &self.b[k * n + j];
                if sign(bkj) == s {
                    // Same sign means a path i -> k -> j (or its reverse).
                    let delta = bik * IBig::from(abs(bkj));
                    out[i * n + j] += delta;
                }
            }
        }
        for j in 0..n {
            out[k * n + j] = -&self.b[k * n + j];
            out[j * n + k] = -&self.b[j * n + k];
        }
        Ok(Quiver {
            n_mut: self.n_mut,
            n_frozen: self.n_frozen,
            b: out,
        })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &k in seq {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Arrows among mutable vertices, plus mutable–frozen arrows when `extended`.
    pub fn arrow_count(&self, extended: bool) -> ArrowCount {
        let n = self.order();
        let limit = if extended { n } else { self.n_mut };
        let mut total = UBig::ZERO;
        for i in 0..self.n_mut {
            for j in i + 1..limit {
                total += abs(&self.b[i * n + j]);
            }
        }
        ArrowCount(total)
    }

    /// Small-count shortcut used by the enumeration code paths.
    pub(crate) fn arrow_count_u64(&self, extended: bool) -> u64 {
        self.arrow_count(extended)
            .to_u64()
            .expect("arrow count exceeds u64")
    }

    /// The full subquiver on the mutable vertices.
    pub fn restrict_to_mutable(&self) -> Quiver {
        let n = self.order();
        let m = self.n_mut;
        let mut b = Vec::with_capacity(m * m);
        for i in 0..m {
            b.extend_from_slice(&self.b[i * n..i * n + m]);
        }
        Quiver {
            n_mut: m,
            n_frozen: 0,
            b,
        }
    }

    /// Largest multiplicity over pairs with at least one mutable vertex.
    pub fn max_multiplicity(&self) -> UBig {
        let n = self.order();
        let mut best = UBig::ZERO;
        for i in 0..self.n_mut {
            for j in i + 1..n {
                let m = abs(&self.b[i * n + j]);
                if m > best {
                    best = m;
                }
            }
        }
        best
    }

    /// Connectivity of the underlying undirected graph on all vertices.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && self.b[v * n + u] != IBig::ZERO {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// Relabels vertices: new vertex `p` is old vertex `perm[p]`.
    ///
    /// The permutation must map the mutable block onto itself.
    pub fn permute(&self, perm: &[usize]) -> Result<Quiver, QuiverError> {
        let n = self.order();
        if perm.len() != n {
            return Err(QuiverError::BadPermutation);
        }
        let mut seen = vec![false; n];
        for (p, &v) in perm.iter().enumerate() {
            if v >= n || seen[v] || (p < self.n_mut) != (v < self.n_mut) {
                return Err(QuiverError::BadPermutation);
            }
            seen[v] = true;
        }
        let mut b = Vec::with_capacity(n * n);
        for &vi in perm {
            for &vj in perm {
                b.push(self.b[vi * n + vj].clone());
            }
        }
        Ok(Quiver {
            n_mut: self.n_mut,
            n_frozen: self.n_frozen,
            b,
        })
    }

    /// Full subquiver on the given vertices, in the given order; all become mutable.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let n = self.order();
        let mut b = Vec::with_capacity(vertices.len() * vertices.len());
        for &i in vertices {
            for &j in vertices {
                b.push(self.b[i * n + j].clone());
            }
        }
        Quiver {
            n_mut: vertices.len(),
            n_frozen: 0,
            b,
        }
    }

    pub(crate) fn raw_entries(&self) -> &[IBig] {
        &self.b
    }

    pub(crate) fn from_raw(n_mut: usize, n_frozen: usize, b: Vec<IBig>) -> Result<Self, QuiverError> {
        let n = n_mut + n_frozen;
        if b.len() != n * n {
            return Err(QuiverError::RowCount {
                expected: n,
                found: b.len() / n.max(1),
            });
        }
        let q = Quiver { n_mut, n_frozen, b };
        q.check()?;
        Ok(q)
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({}+{}: [", self.n_mut, self.n_frozen)?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Quiver {
        Quiver::from_arrows(3, 0, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    fn markov() -> Quiver {
        Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn path_mutated_at_middle_is_cycle() {
        let q = path3().mutate(1).unwrap();
        let expected = Quiver::from_arrows(3, 0, &[(1, 0, 1), (2, 1, 1), (0, 2, 1)]).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn markov_mutation_keeps_multiplicity_two() {
        for k in 0..3 {
            let q = markov().mutate(k).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert_eq!(q.multiplicity(i, j), UBig::from(2u8));
                    }
                }
            }
        }
    }

    #[test]
    fn counts_and_multiplicities() {
        assert_eq!(markov().arrow_count(false).to_u64(), Some(6));
        assert_eq!(markov().max_multiplicity(), UBig::from(2u8));
        assert_eq!(path3().max_multiplicity(), UBig::ONE);
        let big = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 3), (2, 0, 3)]).unwrap();
        assert_eq!(big.max_multiplicity(), UBig::from(3u8));
        let digon = Quiver::from_arrows(2, 2, &[(0, 2, 1), (2, 1, 1), (1, 3, 1), (3, 0, 1)]).unwrap();
        assert_eq!(digon.arrow_count(false).to_u64(), Some(0));
        assert_eq!(digon.arrow_count(true).to_u64(), Some(4));
        assert_eq!(digon.restrict_to_mutable(), Quiver::empty(2, 0));
    }

    #[test]
    fn frozen_and_range_errors() {
        let q = Quiver::from_arrows(1, 1, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.mutate(1), Err(QuiverError::FrozenVertex(1)));
        assert_eq!(
            q.mutate(2),
            Err(QuiverError::VertexOutOfRange { vertex: 2, order: 2 })
        );
        assert_eq!(
            Quiver::from_arrows(0, 2, &[(0, 1, 1)]),
            Err(QuiverError::FrozenArrow { i: 0, j: 1 })
        );
    }

    #[test]
    fn frozen_block_stays_zero() {
        // 1 -> 0 -> 2 with 1, 2 frozen would create a frozen-frozen arrow.
        let q = Quiver::from_arrows(1, 2, &[(1, 0, 1), (0, 2, 1)]).unwrap();
        let m = q.mutate(0).unwrap();
        assert_eq!(*m.entry(1, 2), IBig::ZERO);
        assert_eq!(*m.entry(0, 1), IBig::ONE);
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected());
        assert!(Quiver::empty(1, 0).is_connected());
        let split = Quiver::from_arrows(4, 0, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            Quiver::from_matrix(2, 0, &[vec![0, 1], vec![1, 0]]),
            Err(QuiverError::NotSkewSymmetric { i: 0, j: 1 })
        ));
        assert!(matches!(
            Quiver::from_matrix(2, 0, &[vec![1, 0], vec![0, 0]]),
            Err(QuiverError::Loop(0))
        ));
        assert!(matches!(
            Quiver::from_matrix(2, 0, &[vec![0, 1]]),
            Err(QuiverError::RowCount { .. })
        ));
    }
}
