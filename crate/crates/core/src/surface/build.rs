//! Explicit triangulations: seeds and extremal triangulations of genus-0
//! surfaces, assembled from a few local moves, plus the shipped genus-one
//! seeds.

use std::collections::{BTreeMap, HashSet, VecDeque};

use thiserror::Error;

use super::census::piece_census;
use super::{quiver_from_triangulation, t_bounds, MarkedSurface, Side, SpecialSurface, Triangulation, TriangulationError};
use crate::canonical::canonical_form;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("no construction for {0}: only genus 0 and the shipped genus-one seeds are supported")]
    Unsupported(String),
    #[error("construction for {surface} reached {found} arrows instead of {expected}")]
    TargetMismatch { surface: String, expected: u64, found: u64 },
    #[error("construction produced an invalid triangulation: {0}")]
    Invalid(#[from] TriangulationError),
    #[error("could not read shipped seed {path}: {message}")]
    Data { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// A triangle list under construction; it need not describe a valid surface
/// until `finish` is called.
#[derive(Clone, Debug)]
struct Raw {
    tris: Vec<[Side; 3]>,
    next_arc: u32,
    next_segment: Vec<u32>,
}

fn seg(component: u32, segment: u32) -> Side {
    Side::Boundary { component, segment }
}

impl Raw {
    fn new(tris: Vec<[Side; 3]>, components: usize) -> Self {
        let mut next_segment = vec![0u32; components];
        let mut next_arc = 0;
        for s in tris.iter().flatten() {
            match *s {
                Side::Arc(k) => next_arc = next_arc.max(k + 1),
                Side::Boundary { component, segment } => {
                    let slot = &mut next_segment[component as usize];
                    *slot = (*slot).max(segment + 1);
                }
            }
        }
        Raw {
            tris,
            next_arc,
            next_segment,
        }
    }

    fn arc(&mut self) -> Side {
        self.next_arc += 1;
        Side::Arc(self.next_arc - 1)
    }

    fn segment(&mut self, component: u32) -> Side {
        let c = &mut self.next_segment[component as usize];
        *c += 1;
        seg(component, *c - 1)
    }

    fn slot(&self, s: Side) -> (usize, usize) {
        for (t, tri) in self.tris.iter().enumerate() {
            if let Some(i) = tri.iter().position(|&x| x == s) {
                return (t, i);
            }
        }
        panic!("side {s:?} not present")
    }

    fn segments_of(&self, component: u32) -> Vec<Side> {
        let mut v: Vec<Side> = self
            .tris
            .iter()
            .flatten()
            .copied()
            .filter(|s| matches!(s, Side::Boundary { component: c, .. } if *c == component))
            .collect();
        v.sort();
        v
    }

    fn boundary_sides(&self, t: usize) -> usize {
        self.tris[t].iter().filter(|s| !s.is_arc()).count()
    }

    /// Turns boundary segment `s` into an arc and glues an ear onto it.
    fn split(&mut self, s: Side) -> Side {
        let Side::Boundary { component, .. } = s else {
            panic!("split needs a boundary segment")
        };
        let (t, i) = self.slot(s);
        let e = self.arc();
        self.tris[t][i] = e;
        let (s1, s2) = (self.segment(component), self.segment(component));
        self.tris.push([e, s1, s2]);
        e
    }

    /// Adds a boundary point to the component of `s` without creating an ear
    /// (when the triangle of `s` has no other boundary side).
    fn split_and_link(&mut self, s: Side) {
        let e = self.split(s);
        self.flip(e);
    }

    fn flip(&mut self, e: Side) {
        let slots: Vec<(usize, usize)> = self
            .tris
            .iter()
            .enumerate()
            .flat_map(|(t, tri)| tri.iter().enumerate().filter(|(_, &x)| x == e).map(move |(i, _)| (t, i)))
            .collect();
        let [(t, i), (u, j)] = slots[..] else { panic!("flip of a non-arc") };
        assert_ne!(t, u, "flip of a radius");
        let rot = |tri: [Side; 3], k: usize| [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]];
        let [_, a, b] = rot(self.tris[t], i);
        let [_, c, d] = rot(self.tris[u], j);
        self.tris[t] = [e, b, c];
        self.tris[u] = [e, d, a];
    }

    /// Puts a new puncture inside triangle `t`, joined to its three corners.
    fn insert_puncture(&mut self, t: usize) {
        let [s0, s1, s2] = self.tris[t];
        let (u0, u1, u2) = (self.arc(), self.arc(), self.arc());
        self.tris[t] = [s0, u1, u0];
        self.tris.push([s1, u2, u1]);
        self.tris.push([s2, u0, u2]);
    }

    /// Replaces the puncture at corner `i` of triangle `t` by a boundary
    /// component with one marked point.
    fn puncture_to_hole(&mut self, t: usize, i: usize) -> u32 {
        let tri = self.tris[t];
        let (s0, s1, s2) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
        let component = self.next_segment.len() as u32;
        self.next_segment.push(0);
        let h = self.segment(component);
        let z = self.arc();
        self.tris[t] = [s0, s1, z];
        self.tris.push([z, s2, h]);
        component
    }

    /// Glues a once-punctured digon along side `e`: the triangle holding `e`
    /// gets a new parallel arc instead, and the digon sits between the two.
    /// Returns the new parallel arc.
    fn punctured_digon(&mut self, e: Side) -> Side {
        let (t, i) = self.slot(e);
        let (w, a, b) = (self.arc(), self.arc(), self.arc());
        self.tris[t][i] = w;
        self.tris.push([w, a, b]);
        self.tris.push([e, b, a]);
        w
    }

    /// Triangle to receive a new puncture: one without boundary sides if
    /// possible, else the first one that is not an ear.
    fn interior_triangle(&self) -> usize {
        (0..self.tris.len())
            .find(|&t| self.boundary_sides(t) == 0)
            .or_else(|| (0..self.tris.len()).find(|&t| self.boundary_sides(t) < 2))
            .unwrap_or(0)
    }

    /// Renumbers arcs and segments densely and validates.
    fn finish(&self, surface: &MarkedSurface) -> Result<Triangulation, TriangulationError> {
        let mut arcs = BTreeMap::new();
        let mut segs: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for s in self.tris.iter().flatten() {
            match *s {
                Side::Arc(k) => {
                    let next = arcs.len() as u32;
                    arcs.entry(k).or_insert(next);
                }
                Side::Boundary { component, segment } => segs.entry(component).or_default().push(segment),
            }
        }
        for v in segs.values_mut() {
            v.sort_unstable();
        }
        let tris = self
            .tris
            .iter()
            .map(|tri| {
                tri.map(|s| match s {
                    Side::Arc(k) => Side::Arc(arcs[&k]),
                    Side::Boundary { component, segment } => seg(
                        component,
                        segs[&component].binary_search(&segment).unwrap() as u32,
                    ),
                })
            })
            .collect();
        Triangulation::new(surface.clone(), tris)
    }
}

fn a(k: u32) -> Side {
    Side::Arc(k)
}

/// Polygon with `c >= 3` boundary points, fanned from point 0.
fn fan(c: u32) -> Raw {
    let diag = |k: u32| a(k - 2);
    let mut tris = Vec::new();
    for k in 1..c - 1 {
        let first = if k == 1 { seg(0, 0) } else { diag(k) };
        let last = if k + 1 == c - 1 { seg(0, c - 1) } else { diag(k + 1) };
        tris.push([first, seg(0, k), last]);
    }
    Raw::new(tris, 1)
}

/// Polygon with `c >= 3` boundary points all joined to one puncture.
fn star(c: u32) -> Raw {
    let tris = (0..c).map(|i| [seg(0, i), a((i + 1) % c), a(i)]).collect();
    Raw::new(tris, 1)
}

/// Polygon with ears at every other boundary point.
fn alternating(c: u32) -> Raw {
    if c <= 4 {
        return fan(c);
    }
    let k = c.div_ceil(2);
    let mut raw = fan(k);
    for s in raw.segments_of(0).into_iter().take((c / 2) as usize) {
        raw.split(s);
    }
    raw
}

/// Sphere with three punctures: two triangles glued along all sides.
fn pillow() -> Raw {
    Raw::new(vec![[a(0), a(1), a(2)], [a(0), a(2), a(1)]], 0)
}

fn once_punctured_monogon() -> Raw {
    Raw::new(vec![[seg(0, 0), a(0), a(0)]], 1)
}

fn once_punctured_digon() -> Raw {
    Raw::new(vec![[seg(0, 0), a(1), a(0)], [seg(0, 1), a(0), a(1)]], 1)
}

fn annulus() -> Raw {
    Raw::new(vec![[seg(0, 0), a(1), a(0)], [seg(1, 0), a(1), a(0)]], 2)
}

fn four_punctured_sphere() -> Raw {
    Raw::new(
        vec![
            [a(0), a(1), a(2)],
            [a(0), a(3), a(3)],
            [a(1), a(4), a(4)],
            [a(2), a(5), a(5)],
        ],
        0,
    )
}

/// Genus 0 with `points.len() >= 2` boundary components, no punctures, no
/// ears and no cancelling pairs.
fn multi_boundary(points: &[u32]) -> Raw {
    let mut raw = annulus();
    for _ in 2..points.len() {
        raw.insert_puncture(0);
        // The puncture is the third corner of the second new triangle.
        let t = raw.tris.len() - 2;
        raw.puncture_to_hole(t, 2);
    }
    for (j, &c) in points.iter().enumerate() {
        for _ in 1..c {
            let s = raw
                .segments_of(j as u32)
                .into_iter()
                .find(|&s| raw.boundary_sides(raw.slot(s).0) == 1)
                .expect("a segment in a triangle with one boundary side");
            raw.split_and_link(s);
        }
    }
    raw
}

/// Splits `count` of the given segments, each into an ear.
fn add_ears(raw: &mut Raw, segments: Vec<Side>, count: usize) {
    for s in segments.into_iter().take(count) {
        raw.split(s);
    }
}

fn stack_digons(raw: &mut Raw, mut on: Side, count: u32) {
    for _ in 0..count {
        on = raw.punctured_digon(on);
    }
}

fn lowest_arc(raw: &Raw) -> Side {
    raw.tris
        .iter()
        .flatten()
        .copied()
        .filter(|s| s.is_arc())
        .min()
        .expect("an arc")
}

/// Candidates for the monogon with `p >= 3` punctures, no cancelling pairs and
/// every puncture of degree at least three.
fn monogon_without_pieces(p: u32) -> Vec<Raw> {
    let mut base = pillow();
    for _ in 0..p - 2 {
        let t = base.interior_triangle();
        base.insert_puncture(t);
    }
    let mut out = Vec::new();
    for t in 0..base.tris.len() {
        for i in 0..3 {
            let mut r = base.clone();
            r.puncture_to_hole(t, i);
            out.push(r);
        }
    }
    out
}

/// Disc with `c` points and `p >= 1` punctures, no ears, no pieces, punctures
/// of degree at least three (when `(p, c)` allows it).
fn disc_without_pieces(c: u32, p: u32) -> Vec<Raw> {
    match c {
        1 => monogon_without_pieces(p),
        2 => {
            let mut r = once_punctured_digon();
            for _ in 1..p {
                let t = if r.tris.len() == 2 { 0 } else { r.interior_triangle() };
                r.insert_puncture(t);
            }
            vec![r]
        }
        _ => {
            let mut r = star(c);
            for _ in 1..p {
                let t = r.interior_triangle();
                r.insert_puncture(t);
            }
            vec![r]
        }
    }
}

fn with_punctures(mut raw: Raw, p: u32) -> Raw {
    for _ in 0..p {
        let t = raw.interior_triangle();
        raw.insert_puncture(t);
    }
    raw
}

/// Candidate raw triangulations for `(s, which, extended)`; empty when no
/// direct construction applies.
fn candidates(s: &MarkedSurface, which: Extremum, extended: bool) -> Vec<Raw> {
    let (b, p) = (s.b(), s.punctures());
    let cs = s.boundary_points().to_vec();
    if s.genus() != 0 || s.special().is_some() {
        return Vec::new();
    }
    if b == 0 {
        return match which {
            Extremum::Min => {
                let mut r = pillow();
                stack_digons(&mut r, a(0), p - 3);
                vec![r]
            }
            Extremum::Max => vec![with_punctures(pillow(), p - 3)],
        };
    }
    if b == 1 {
        let c = cs[0];
        return match (which, extended) {
            (Extremum::Min, false) => vec![if c == 1 {
                let mut r = once_punctured_monogon();
                stack_digons(&mut r, seg(0, 0), p - 1);
                r
            } else if c == 2 {
                let mut r = once_punctured_digon();
                let w = r.punctured_digon(seg(0, 0));
                stack_digons(&mut r, w, p - 2);
                r
            } else {
                let mut r = fan(c);
                if p >= 1 {
                    let w = r.punctured_digon(seg(0, 0));
                    if p >= 2 {
                        r.punctured_digon(seg(0, c - 1));
                        stack_digons(&mut r, w, p - 2);
                    }
                }
                r
            }],
            (Extremum::Max, true) => {
                if p == 0 {
                    vec![fan(c)]
                } else {
                    disc_without_pieces(c, p)
                }
            }
            (Extremum::Min, true) => vec![if p == 0 {
                alternating(c)
            } else if c == 1 {
                let mut r = once_punctured_monogon();
                stack_digons(&mut r, seg(0, 0), p - 1);
                r
            } else if c == 2 {
                let mut r = once_punctured_digon();
                stack_digons(&mut r, seg(0, 0), p - 1);
                r
            } else {
                let mut r = alternating(c);
                // An ear's base joins two points that carry no ear.
                let base = if c == 3 {
                    seg(0, 2)
                } else {
                    let ear = (0..r.tris.len()).find(|&t| r.boundary_sides(t) == 2).expect("an ear");
                    *r.tris[ear].iter().find(|x| x.is_arc()).expect("ear base")
                };
                stack_digons(&mut r, base, p);
                r
            }],
            (Extremum::Max, false) => {
                if p == 0 {
                    return vec![alternating(c)];
                }
                let k = c.div_ceil(2);
                disc_without_pieces(k, p)
                    .into_iter()
                    .map(|mut r| {
                        let segs = r.segments_of(0);
                        add_ears(&mut r, segs, (c / 2) as usize);
                        r
                    })
                    .collect()
            }
        };
    }
    let halves: Vec<u32> = cs.iter().map(|c| c.div_ceil(2)).collect();
    match (which, extended) {
        (Extremum::Min, false) => {
            let mut r = multi_boundary(&cs);
            let e = lowest_arc(&r);
            stack_digons(&mut r, e, p);
            vec![r]
        }
        (Extremum::Max, true) => vec![with_punctures(multi_boundary(&cs), p)],
        (Extremum::Min, true) => {
            let mut r = multi_boundary(&halves);
            for (j, &c) in cs.iter().enumerate() {
                let segs = r.segments_of(j as u32);
                add_ears(&mut r, segs, (c / 2) as usize);
            }
            let e = lowest_arc(&r);
            stack_digons(&mut r, e, p);
            vec![r]
        }
        (Extremum::Max, false) => {
            let mut r = with_punctures(multi_boundary(&halves), p);
            for (j, &c) in cs.iter().enumerate() {
                let segs = r.segments_of(j as u32);
                add_ears(&mut r, segs, (c / 2) as usize);
            }
            vec![r]
        }
    }
}

fn count(t: &Triangulation, extended: bool) -> u64 {
    quiver_from_triangulation(t, extended).arrow_count_u64(extended)
}

/// Breadth-first search through flips for a triangulation with `target` arrows.
fn search_flips(seed: &Triangulation, extended: bool, target: u64) -> Option<Triangulation> {
    const LIMIT: usize = 200_000;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_form(&quiver_from_triangulation(seed, true)));
    queue.push_back(seed.clone());
    while let Some(t) = queue.pop_front() {
        if count(&t, extended) == target {
            return Some(t);
        }
        for arc in t.flippable_arcs() {
            let f = t.flip(arc).expect("flippable");
            if seen.len() < LIMIT && seen.insert(canonical_form(&quiver_from_triangulation(&f, true))) {
                queue.push_back(f);
            }
        }
    }
    None
}

fn shipped_seed(s: &MarkedSurface) -> Result<Triangulation, BuildError> {
    let dir = crate::data::data_dir().join("surfaces");
    let entries = std::fs::read_dir(&dir).map_err(|e| BuildError::Data {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut paths: Vec<_> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths {
        if path.extension().is_some_and(|x| x == "tri") {
            let text = std::fs::read_to_string(&path).map_err(|e| BuildError::Data {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let t = crate::io::parse_triangulation(&text).map_err(|e| BuildError::Data {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            if t.surface() == s {
                return Ok(t);
            }
        }
    }
    Err(BuildError::Unsupported(s.label()))
}

/// A triangulation of `s`.
///
/// Genus-0 surfaces get the minimal construction (ears avoided and
/// punctures placed in stacked once-punctured digons); the four-punctured
/// sphere gets a central triangle with three self-folded triangles; genus-one
/// surfaces come from the shipped seed files.
pub fn seed_triangulation(s: &MarkedSurface) -> Result<Triangulation, BuildError> {
    if s.genus() > 0 {
        return shipped_seed(s);
    }
    let raw = match s.special() {
        Some(SpecialSurface::FourPuncturedSphere) => four_punctured_sphere(),
        Some(SpecialSurface::TwicePuncturedMonogon) => {
            let mut r = once_punctured_monogon();
            r.punctured_digon(seg(0, 0));
            r
        }
        Some(SpecialSurface::OncePuncturedDigon) => once_punctured_digon(),
        Some(SpecialSurface::TwicePuncturedDigon) => {
            let mut r = once_punctured_digon();
            r.punctured_digon(seg(0, 0));
            r
        }
        Some(SpecialSurface::OncePuncturedTriangle) => {
            let mut r = fan(3);
            r.punctured_digon(seg(0, 0));
            r
        }
        None => candidates(s, Extremum::Min, false).remove(0),
    };
    Ok(raw.finish(s)?)
}

/// A triangulation of `s` whose (extended) quiver attains the minimum or
/// maximum arrow count of the class.
pub fn extremal_triangulation(s: &MarkedSurface, which: Extremum, extended: bool) -> Result<Triangulation, BuildError> {
    let bounds = t_bounds(s, extended);
    let target = match which {
        Extremum::Min => bounds.min,
        Extremum::Max => bounds.max,
    };
    let mismatch = |found| BuildError::TargetMismatch {
        surface: s.label(),
        expected: target,
        found,
    };
    let mut last = None;
    for raw in candidates(s, which, extended) {
        let t = raw.finish(s)?;
        let found = count(&t, extended);
        if found == target && piece_census(&t).is_ok() {
            return Ok(t);
        }
        last.get_or_insert(found);
    }
    // No direct construction (or it misses, as for the once-punctured
    // quadrilateral): search the flip graph from the seed.
    let seed = seed_triangulation(s)?;
    search_flips(&seed, extended, target).ok_or_else(|| mismatch(last.unwrap_or_else(|| count(&seed, extended))))
}

/// All triangulations within `depth` flips of `t`, one per extended-quiver
/// isomorphism class, in breadth-first order.
pub fn flip_ball(t: &Triangulation, depth: usize) -> Vec<Triangulation> {
    let mut seen = HashSet::new();
    seen.insert(canonical_form(&quiver_from_triangulation(t, true)));
    let mut out = vec![t.clone()];
    let mut frontier = vec![t.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for arc in u.flippable_arcs() {
                let f = u.flip(arc).expect("flippable");
                if seen.insert(canonical_form(&quiver_from_triangulation(&f, true))) {
                    next.push(f.clone());
                    out.push(f);
                }
            }
        }
        frontier = next;
    }
    out
}
