//! Canonical forms of quivers under relabelings that keep frozen vertices frozen.
//!
//! The canonical matrix is the lexicographically least row-major matrix among
//! the leaves of an individualization–refinement search tree. Cells of the
//! ordered partition start as `[mutable | frozen]` and are refined by the
//! multiset of weighted arrows into every other cell.

use std::fmt;

use dashu_int::IBig;
use thiserror::Error;

use crate::quiver::{Quiver, QuiverError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("key is not valid hexadecimal")]
    Hex,
    #[error("key bytes end in the middle of a number")]
    Truncated,
    #[error("key has trailing bytes")]
    Trailing,
    #[error("key encodes an invalid quiver: {0}")]
    Quiver(#[from] QuiverError),
}

/// Byte serialization of a canonical matrix: `n_mut`, `n_frozen`, then every
/// entry in row-major order, each as signed LEB128.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, KeyError> {
        let bytes = hex::decode(s.trim()).map_err(|_| KeyError::Hex)?;
        let key = CanonicalKey(bytes.into_boxed_slice());
        key.decode()?;
        Ok(key)
    }

    /// The canonical quiver this key describes.
    pub fn decode(&self) -> Result<Quiver, KeyError> {
        let mut pos = 0;
        let bytes = &self.0;
        let n_mut = read_size(bytes, &mut pos)?;
        let n_frozen = read_size(bytes, &mut pos)?;
        let n = n_mut + n_frozen;
        let mut b = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            b.push(read_sleb(bytes, &mut pos)?);
        }
        if pos != bytes.len() {
            return Err(KeyError::Trailing);
        }
        Ok(Quiver::from_raw(n_mut, n_frozen, b)?)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

fn write_sleb_i64(out: &mut Vec<u8>, mut v: i64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        let done = (v == 0 && byte & 0x40 == 0) || (v == -1 && byte & 0x40 != 0);
        if done {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn write_sleb(out: &mut Vec<u8>, v: &IBig) {
    if let Ok(small) = i64::try_from(v) {
        write_sleb_i64(out, small);
        return;
    }
    let base = IBig::from(128);
    let mut v = v.clone();
    loop {
        let low = {
            let r = &v % &base;
            if r < IBig::ZERO {
                r + &base
            } else {
                r
            }
        };
        v = (&v - &low) / &base;
        let byte = u8::try_from(&low).expect("remainder below 128");
        let done = (v == IBig::ZERO && byte & 0x40 == 0) || (v == IBig::NEG_ONE && byte & 0x40 != 0);
        if done {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn read_sleb(bytes: &[u8], pos: &mut usize) -> Result<IBig, KeyError> {
    let mut digits = Vec::new();
    loop {
        let byte = *bytes.get(*pos).ok_or(KeyError::Truncated)?;
        *pos += 1;
        digits.push(byte & 0x7f);
        if byte & 0x80 == 0 {
            break;
        }
    }
    let mut value = IBig::ZERO;
    for &d in digits.iter().rev() {
        value = value * IBig::from(128) + IBig::from(d);
    }
    if digits.last().is_some_and(|d| d & 0x40 != 0) {
        value -= IBig::ONE << (7 * digits.len());
    }
    Ok(value)
}

fn read_size(bytes: &[u8], pos: &mut usize) -> Result<usize, KeyError> {
    let v = read_sleb(bytes, pos)?;
    usize::try_from(&v).map_err(|_| KeyError::Truncated)
}

/// Order-preserving compression of the matrix entries to `i32`.
fn weights(q: &Quiver) -> Vec<i32> {
    let raw = q.raw_entries();
    let small: Option<Vec<i32>> = raw.iter().map(|x| i32::try_from(x).ok()).collect();
    if let Some(w) = small {
        return w;
    }
    let mut distinct: Vec<&IBig> = raw.iter().collect();
    distinct.sort();
    distinct.dedup();
    let zero_rank = distinct.iter().position(|x| **x == IBig::ZERO).unwrap_or(0) as i32;
    raw.iter()
        .map(|x| distinct.binary_search(&x).unwrap() as i32 - zero_rank)
        .collect()
}

struct Search<'a> {
    n: usize,
    w: &'a [i32],
    best: Option<Vec<i32>>,
    best_perm: Vec<usize>,
    scratch: Vec<i32>,
}

impl Search<'_> {
    fn weight(&self, i: usize, j: usize) -> i32 {
        self.w[i * self.n + j]
    }

    /// Refines `colors` (cell start positions) to an equitable partition.
    fn refine(&self, colors: &mut [u32]) {
        let n = self.n;
        let mut distinct = count_distinct(colors);
        let mut sigs: Vec<(u32, Vec<(u32, i32)>, usize)> = Vec::with_capacity(n);
        loop {
            if distinct == n {
                return;
            }
            sigs.clear();
            for v in 0..n {
                let mut sig: Vec<(u32, i32)> = (0..n)
                    .filter(|&u| u != v && self.weight(v, u) != 0)
                    .map(|u| (colors[u], self.weight(v, u)))
                    .collect();
                sig.sort_unstable();
                sigs.push((colors[v], sig, v));
            }
            sigs.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            let mut start = 0;
            for idx in 0..n {
                if idx > 0 && (sigs[idx].0, &sigs[idx].1) != (sigs[idx - 1].0, &sigs[idx - 1].1) {
                    start = idx;
                }
                colors[sigs[idx].2] = start as u32;
            }
            let now = count_distinct(colors);
            if now == distinct {
                return;
            }
            distinct = now;
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        if self.weight(u, v) != 0 {
            return false;
        }
        (0..self.n).all(|x| x == u || x == v || self.weight(u, x) == self.weight(v, x))
    }

    fn visit(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = self.n;
        // Target cell: the first (lowest position) cell with more than one vertex.
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1);
        let Some(cell) = target else {
            self.leaf(&colors);
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == cell).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = colors.clone();
            for &u in &members {
                if u != v {
                    next[u] = cell as u32 + 1;
                }
            }
            self.visit(next);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.n;
        let mut perm = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[c as usize] = v;
        }
        self.scratch.clear();
        for &i in &perm {
            for &j in &perm {
                self.scratch.push(self.w[i * n + j]);
            }
        }
        let better = match &self.best {
            None => true,
            Some(best) => self.scratch < *best,
        };
        if better {
            self.best = Some(self.scratch.clone());
            self.best_perm = perm;
        }
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen = vec![false; colors.len()];
    let mut count = 0;
    for &c in colors {
        if !seen[c as usize] {
            seen[c as usize] = true;
            count += 1;
        }
    }
    count
}

/// A relabeling `perm` (new position -> old vertex) whose image is canonical.
pub fn canonical_labeling(q: &Quiver) -> Vec<usize> {
    let n = q.order();
    if n == 0 {
        return Vec::new();
    }
    let w = weights(q);
    let mut search = Search {
        n,
        w: &w,
        best: None,
        best_perm: Vec::new(),
        scratch: Vec::with_capacity(n * n),
    };
    let frozen_color = if q.n_mut() == 0 { 0 } else { q.n_mut() as u32 };
    let colors = (0..n)
        .map(|v| if q.is_frozen(v) { frozen_color } else { 0 })
        .collect();
    search.visit(colors);
    search.best_perm
}

/// Canonical key; equal exactly for isomorphic quivers.
pub fn canonical_form(q: &Quiver) -> CanonicalKey {
    let perm = canonical_labeling(q);
    let n = q.order();
    let raw = q.raw_entries();
    let mut out = Vec::with_capacity(2 + n * n);
    write_sleb_i64(&mut out, q.n_mut() as i64);
    write_sleb_i64(&mut out, q.n_frozen() as i64);
    for &i in &perm {
        for &j in &perm {
            write_sleb(&mut out, &raw[i * n + j]);
        }
    }
    CanonicalKey(out.into_boxed_slice())
}

/// The canonical representative itself.
pub fn canonical_quiver(q: &Quiver) -> Quiver {
    q.permute(&canonical_labeling(q))
        .expect("canonical labeling is admissible")
}

pub fn are_isomorphic(q1: &Quiver, q2: &Quiver) -> bool {
    if q1.n_mut() != q2.n_mut() || q1.n_frozen() != q2.n_frozen() {
        return false;
    }
    let mut m1: Vec<&IBig> = q1.raw_entries().iter().collect();
    let mut m2: Vec<&IBig> = q2.raw_entries().iter().collect();
    m1.sort();
    m2.sort();
    if m1 != m2 {
        return false;
    }
    canonical_form(q1) == canonical_form(q2)
}
