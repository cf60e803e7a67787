use serde::Serialize;
use thiserror::Error;

use super::triangulation::self_folded_of;
use super::{MarkedSurface, Side, SpecialSurface, Triangulation};

/// Counts of the puzzle pieces `Δ0 .. Δ6` in a triangulation.
///
/// `Δ1`, `Δ2`, `Δ3` are ordinary triangles with two, one and no boundary
/// sides. `Δ4`/`Δ5` are once-punctured digons (a self-folded triangle inside
/// an outer triangle) with no/one boundary side, `Δ6` a twice-punctured
/// monogon with an arc as outer side. `t0` counts pairs of ordinary triangles
/// sharing two sides with opposite orientation, each removing a 2-cycle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PieceCensus {
    pub t0: u32,
    pub t1: u32,
    pub t2: u32,
    pub t3: u32,
    pub t4: u32,
    pub t5: u32,
    pub t6: u32,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("the triangulation does not decompose into pieces: {0}")]
    Undecomposable(&'static str),
    #[error("census identity violated: {0}")]
    Identity(&'static str),
    #[error("the arrow-count formula does not apply to the {0}")]
    ExcludedSurface(&'static str),
}

/// Which arrow-count formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaMode {
    /// Weighted sum over pieces.
    Piece,
    /// The same count written through `n` and `c`.
    Closed,
    /// Arrow count of the extended quiver.
    Extended,
}

impl PieceCensus {
    /// `f(T) = t3 + 2 t4 + t5 + 3 t6`.
    pub fn f(&self) -> u32 {
        self.t3 + 2 * self.t4 + self.t5 + 3 * self.t6
    }

    pub fn w(&self) -> u32 {
        self.t2 + self.t5
    }

    pub fn d_neg(&self) -> u32 {
        self.t0
    }

    pub fn s_f(&self) -> u32 {
        self.t4 + self.t6
    }

    pub fn s_w(&self) -> u32 {
        self.t5
    }

    /// Checks both counting identities against `(n, c)`.
    pub fn check_identities(&self, n: u32, c: u32) -> Result<(), CensusError> {
        if c != 2 * self.t1 + self.t2 + self.t5 {
            return Err(CensusError::Identity("c = 2 t1 + t2 + t5"));
        }
        let lhs = n as i64 - 2 * (self.t4 + self.t5) as i64 - 4 * self.t6 as i64;
        let rhs2 = (self.t1 + 2 * self.t2 + 3 * self.t3 + 2 * self.t4 + self.t5 + self.t6) as i64;
        if 2 * lhs != rhs2 {
            return Err(CensusError::Identity(
                "n - 2(t4 + t5) - 4 t6 = (t1 + 2 t2 + 3 t3 + 2 t4 + t5 + t6) / 2",
            ));
        }
        Ok(())
    }
}

/// Number of pairs of distinct triangles sharing two sides with opposite
/// orientation. Self-folded triangles are skipped.
fn cancellations(triangles: &[[Side; 3]], skip: &[usize]) -> u32 {
    let mut count = 0;
    let ordinary: Vec<usize> = (0..triangles.len()).filter(|t| !skip.contains(t)).collect();
    for (x, &t) in ordinary.iter().enumerate() {
        for &u in &ordinary[x + 1..] {
            for i in 0..3 {
                let (p, q) = (triangles[t][i], triangles[t][(i + 1) % 3]);
                if !p.is_arc() || !q.is_arc() || p == q {
                    continue;
                }
                // p -> q in t; cancelled by q -> p in u.
                if (0..3).any(|j| triangles[u][j] == q && triangles[u][(j + 1) % 3] == p) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn two_boundary_triangles(triangles: &[[Side; 3]], skip: &[usize]) -> u32 {
    triangles
        .iter()
        .enumerate()
        .filter(|(t, tri)| !skip.contains(t) && tri.iter().filter(|s| !s.is_arc()).count() == 2)
        .count() as u32
}

/// Classifies the triangles of `t` into puzzle pieces and validates the census.
pub fn piece_census(t: &Triangulation) -> Result<PieceCensus, CensusError> {
    let tris = t.triangles();
    let folded = self_folded_of(tris);
    let skip: Vec<usize> = folded.iter().map(|f| f.triangle).collect();
    let loops: Vec<u32> = folded.iter().map(|f| f.loop_arc).collect();
    let mut c = PieceCensus::default();
    for (idx, tri) in tris.iter().enumerate() {
        if skip.contains(&idx) {
            continue;
        }
        let n_loops = tri.iter().filter(|s| s.arc().is_some_and(|k| loops.contains(&k))).count();
        let others: Vec<Side> = tri
            .iter()
            .copied()
            .filter(|s| !s.arc().is_some_and(|k| loops.contains(&k)))
            .collect();
        let boundary = others.iter().filter(|s| !s.is_arc()).count();
        match (n_loops, boundary) {
            (0, 0) => c.t3 += 1,
            (0, 1) => c.t2 += 1,
            (0, 2) => c.t1 += 1,
            (0, _) => return Err(CensusError::Undecomposable("a triangle bounded by three boundary segments")),
            (1, 0) => c.t4 += 1,
            (1, 1) => c.t5 += 1,
            (1, _) => return Err(CensusError::Undecomposable("a once-punctured digon with two boundary sides")),
            (2, 0) => c.t6 += 1,
            (2, _) => return Err(CensusError::Undecomposable("a twice-punctured monogon with a boundary side")),
            _ => return Err(CensusError::Undecomposable("three self-folded triangles around one triangle")),
        }
    }
    c.t0 = cancellations(tris, &skip);
    let s = t.surface();
    c.check_identities(s.n(), s.c())?;
    Ok(c)
}

/// Arrow count predicted from the census of a triangulation of `s`.
pub fn arrow_count_by_formula(census: &PieceCensus, s: &MarkedSurface, mode: FormulaMode) -> Result<i64, CensusError> {
    match s.special() {
        Some(
            sp @ (SpecialSurface::TwicePuncturedMonogon
            | SpecialSurface::OncePuncturedDigon
            | SpecialSurface::FourPuncturedSphere),
        ) => return Err(CensusError::ExcludedSurface(sp.name())),
        _ => {}
    }
    let [t0, t1, t2, t3, t4, t5, t6] =
        [census.t0, census.t1, census.t2, census.t3, census.t4, census.t5, census.t6].map(|x| x as i64);
    let (n, c) = (s.n() as i64, s.c() as i64);
    Ok(match mode {
        FormulaMode::Piece => t2 + 3 * t3 + 5 * t4 + 2 * t5 + 8 * t6 - 2 * t0,
        FormulaMode::Closed => 2 * n - c + t1 - t4 - 2 * (t5 + t0) - t6,
        FormulaMode::Extended => 2 * n + c - t1 - t4 - t5 - t6 - 2 * t0,
    })
}

/// The degree and piece conditions used by the extremal constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinMaxConditions {
    /// Every boundary point meets at least three sides.
    pub boundary_degree_at_least_3: bool,
    /// Every puncture meets at least three sides.
    pub puncture_degree_at_least_3: bool,
    /// `t0 = p`.
    pub t0_equals_p: bool,
    /// `t1 = (c - m) / 2`.
    pub t1_is_maximal: bool,
}

pub fn check_min_max_conditions(t: &Triangulation) -> MinMaxConditions {
    let (boundary, punctures) = t.degrees();
    let tris = t.triangles();
    let skip: Vec<usize> = self_folded_of(tris).iter().map(|f| f.triangle).collect();
    let s = t.surface();
    MinMaxConditions {
        boundary_degree_at_least_3: boundary.iter().all(|&d| d >= 3),
        puncture_degree_at_least_3: punctures.iter().all(|&d| d >= 3),
        t0_equals_p: cancellations(tris, &skip) == s.punctures(),
        t1_is_maximal: 2 * two_boundary_triangles(tris, &skip) == s.c() - s.m(),
    }
}
