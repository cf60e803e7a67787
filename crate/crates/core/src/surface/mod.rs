//! Marked surfaces, their ideal triangulations and the arrow-count formulas
//! and bounds attached to them.

mod bounds;
mod build;
mod census;
mod triangulation;

use serde::Serialize;
use thiserror::Error;

pub use bounds::{t_bounds, Bounds};
pub use build::{extremal_triangulation, flip_ball, seed_triangulation, BuildError, Extremum};
pub use census::{
    arrow_count_by_formula, check_min_max_conditions, piece_census, FormulaMode, MinMaxConditions, PieceCensus,
};
pub use triangulation::{quiver_from_triangulation, SelfFolded, Side, Triangulation, TriangulationError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("b = {b} but {listed} boundary point counts were given")]
    BoundaryCountMismatch { b: u32, listed: usize },
    #[error("boundary component {0} has no marked points")]
    EmptyBoundary(usize),
    #[error("the {0} is not a valid marked surface")]
    Excluded(&'static str),
    #[error("a closed surface needs at least one puncture")]
    NoMarkedPoints,
}

/// A marked surface `(g, b, p, [c_1, .., c_b])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedSurface {
    genus: u32,
    punctures: u32,
    boundary_points: Vec<u32>,
}

/// Surfaces singled out by the distribution-set results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpecialSurface {
    TwicePuncturedMonogon,
    OncePuncturedDigon,
    TwicePuncturedDigon,
    OncePuncturedTriangle,
    FourPuncturedSphere,
}

impl SpecialSurface {
    pub fn surface(self) -> MarkedSurface {
        let (b, p, c) = match self {
            SpecialSurface::TwicePuncturedMonogon => (1, 2, vec![1]),
            SpecialSurface::OncePuncturedDigon => (1, 1, vec![2]),
            SpecialSurface::TwicePuncturedDigon => (1, 2, vec![2]),
            SpecialSurface::OncePuncturedTriangle => (1, 1, vec![3]),
            SpecialSurface::FourPuncturedSphere => (0, 4, vec![]),
        };
        MarkedSurface::new(0, b, p, c).expect("valid special surface")
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecialSurface::TwicePuncturedMonogon => "twice-punctured monogon",
            SpecialSurface::OncePuncturedDigon => "once-punctured digon",
            SpecialSurface::TwicePuncturedDigon => "twice-punctured digon",
            SpecialSurface::OncePuncturedTriangle => "once-punctured triangle",
            SpecialSurface::FourPuncturedSphere => "four-punctured sphere",
        }
    }

    pub const ALL: [SpecialSurface; 5] = [
        SpecialSurface::TwicePuncturedMonogon,
        SpecialSurface::OncePuncturedDigon,
        SpecialSurface::TwicePuncturedDigon,
        SpecialSurface::OncePuncturedTriangle,
        SpecialSurface::FourPuncturedSphere,
    ];
}

impl MarkedSurface {
    pub fn new(g: u32, b: u32, p: u32, boundary_points: Vec<u32>) -> Result<Self, SurfaceError> {
        if boundary_points.len() != b as usize {
            return Err(SurfaceError::BoundaryCountMismatch {
                b,
                listed: boundary_points.len(),
            });
        }
        if let Some(j) = boundary_points.iter().position(|&c| c == 0) {
            return Err(SurfaceError::EmptyBoundary(j + 1));
        }
        if b == 0 && p == 0 {
            return Err(SurfaceError::NoMarkedPoints);
        }
        let c: u32 = boundary_points.iter().sum();
        if g == 0 {
            match (b, p, c) {
                (0, 0..=3, _) => return Err(SurfaceError::Excluded("sphere with at most three punctures")),
                (1, 0, 1) => return Err(SurfaceError::Excluded("unpunctured monogon")),
                (1, 1, 1) => return Err(SurfaceError::Excluded("once-punctured monogon")),
                (1, 0, 2) => return Err(SurfaceError::Excluded("unpunctured digon")),
                (1, 0, 3) => return Err(SurfaceError::Excluded("unpunctured triangle")),
                _ => {}
            }
        }
        Ok(MarkedSurface {
            genus: g,
            punctures: p,
            boundary_points,
        })
    }

    /// The disc with `c` marked boundary points and `p` punctures.
    pub fn disc(c: u32, p: u32) -> Result<Self, SurfaceError> {
        Self::new(0, 1, p, vec![c])
    }

    /// The sphere with `p` punctures.
    pub fn sphere(p: u32) -> Result<Self, SurfaceError> {
        Self::new(0, 0, p, vec![])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of boundary components.
    pub fn b(&self) -> u32 {
        self.boundary_points.len() as u32
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn boundary_points(&self) -> &[u32] {
        &self.boundary_points
    }

    /// Total number of marked boundary points.
    pub fn c(&self) -> u32 {
        self.boundary_points.iter().sum()
    }

    /// Number of boundary components with an odd number of marked points.
    pub fn m(&self) -> u32 {
        self.boundary_points.iter().filter(|&&c| c % 2 == 1).count() as u32
    }

    /// Number of arcs in any triangulation.
    pub fn n(&self) -> u32 {
        6 * self.genus + 3 * self.b() + 3 * self.punctures + self.c() - 6
    }

    pub fn special(&self) -> Option<SpecialSurface> {
        SpecialSurface::ALL.into_iter().find(|s| s.surface() == *self)
    }

    /// `(g, b, p, [c..])` notation.
    pub fn label(&self) -> String {
        let cs: Vec<String> = self.boundary_points.iter().map(|c| c.to_string()).collect();
        format!("({},{},{},[{}])", self.genus, self.b(), self.punctures, cs.join(","))
    }
}

/// Number of arcs of any triangulation of `s`.
pub fn arc_count(s: &MarkedSurface) -> u32 {
    s.n()
}

fn partitions(total: u32, parts: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for x in (1..=max.min(total)).rev() {
        cur.push(x);
        partitions(total - x, parts - 1, x, cur, out);
        cur.pop();
    }
}

/// Every valid genus-0 surface with `1 <= n <= max_n` (boundary counts listed
/// in non-increasing order), followed by the once-punctured torus when
/// `max_n >= 3`.
pub fn surface_grid(max_n: u32) -> Vec<MarkedSurface> {
    let mut out = Vec::new();
    let max_n = max_n as i64;
    for b in 0..=(max_n + 6) / 3 {
        for p in 0..=(max_n + 6) / 3 {
            for c in 0..=(max_n + 6) {
                let n = 3 * b + 3 * p + c - 6;
                if n < 1 || n > max_n || (b == 0 && c > 0) || c < b {
                    continue;
                }
                let mut lists = Vec::new();
                partitions(c as u32, b as u32, c as u32, &mut Vec::new(), &mut lists);
                out.extend(lists.into_iter().filter_map(|cs| MarkedSurface::new(0, b as u32, p as u32, cs).ok()));
            }
        }
    }
    if max_n >= 3 {
        out.push(MarkedSurface::new(1, 0, 1, vec![]).expect("torus"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_counts() {
        assert_eq!(arc_count(&MarkedSurface::disc(1, 2).unwrap()), 4);
        assert_eq!(arc_count(&MarkedSurface::sphere(4).unwrap()), 6);
        assert_eq!(arc_count(&MarkedSurface::new(1, 0, 1, vec![]).unwrap()), 3);
        assert_eq!(arc_count(&MarkedSurface::disc(5, 0).unwrap()), 2);
    }

    #[test]
    fn exclusions() {
        assert!(MarkedSurface::sphere(3).is_err());
        assert!(MarkedSurface::disc(1, 1).is_err());
        assert!(MarkedSurface::disc(1, 0).is_err());
        assert!(MarkedSurface::disc(2, 0).is_err());
        assert!(MarkedSurface::disc(3, 0).is_err());
        assert!(MarkedSurface::disc(4, 0).is_ok());
        assert!(MarkedSurface::new(0, 1, 0, vec![0]).is_err());
        assert!(MarkedSurface::new(0, 2, 0, vec![1]).is_err());
        assert!(MarkedSurface::new(2, 0, 0, vec![]).is_err());
    }

    #[test]
    fn grid_sizes() {
        assert!(surface_grid(0).is_empty());
        let g = surface_grid(9);
        assert_eq!(g.len(), 68);
        assert!(g.iter().all(|s| (1..=9).contains(&s.n())));
        assert!(g.iter().any(|s| s.special() == Some(SpecialSurface::FourPuncturedSphere)));
    }

    #[test]
    fn derived_quantities() {
        let s = MarkedSurface::new(0, 3, 1, vec![1, 2, 3]).unwrap();
        assert_eq!((s.c(), s.m(), s.n()), (6, 2, 12));
        assert_eq!(s.label(), "(0,3,1,[1,2,3])");
        assert_eq!(MarkedSurface::disc(2, 2).unwrap().special(), Some(SpecialSurface::TwicePuncturedDigon));
    }
}
