use std::collections::BTreeMap;

use dashu_int::IBig;
use thiserror::Error;

use super::MarkedSurface;
use crate::quiver::Quiver;

/// A side of a triangle: an arc, or segment `segment` of boundary component
/// `component` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(u32),
    Boundary { component: u32, segment: u32 },
}

impl Side {
    pub fn is_arc(self) -> bool {
        matches!(self, Side::Arc(_))
    }

    pub fn arc(self) -> Option<u32> {
        match self {
            Side::Arc(k) => Some(k),
            Side::Boundary { .. } => None,
        }
    }
}

/// A triangle `(loop, radius, radius)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfFolded {
    pub triangle: usize,
    pub radius: u32,
    pub loop_arc: u32,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("arc a{arc} occurs {count} times; every arc must occur exactly twice")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("boundary segment {0:?} occurs more than once")]
    RepeatedBoundary(Side),
    #[error("boundary segment {0:?} does not exist on this surface")]
    UnknownBoundary(Side),
    #[error("boundary segment {0:?} is missing")]
    MissingBoundary(Side),
    #[error("found {found} arcs, but the surface needs {expected}")]
    ArcCount { expected: u32, found: usize },
    #[error("found {found} triangles, but the surface needs {expected}")]
    TriangleCount { expected: u32, found: usize },
    #[error("the triangles do not form a connected surface")]
    Disconnected,
    #[error("the gluing describes {0}, not the declared surface")]
    Topology(String),
    #[error("a{0} is not an arc of this triangulation")]
    UnknownArc(u32),
    #[error("a{0} is the radius of a self-folded triangle and cannot be flipped")]
    Radius(u32),
    #[error("boundary segments cannot be flipped")]
    BoundaryFlip,
}

/// An ideal triangulation given by clockwise side triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    surface: MarkedSurface,
    triangles: Vec<[Side; 3]>,
    arcs: Vec<u32>,
}

/// Slot = (triangle index, side position).
type Slot = (usize, usize);

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// Marked points of a triangle list: corner (t, i) is the start of side i.
pub(crate) struct Points {
    /// Point id of every corner, indexed `3 t + i`.
    pub corner: Vec<usize>,
    pub count: usize,
    /// Whether each point lies on the boundary.
    pub on_boundary: Vec<bool>,
}

pub(crate) fn arc_slots(triangles: &[[Side; 3]]) -> BTreeMap<u32, Vec<Slot>> {
    let mut slots: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for (i, s) in tri.iter().enumerate() {
            if let Side::Arc(k) = s {
                slots.entry(*k).or_default().push((t, i));
            }
        }
    }
    slots
}

pub(crate) fn marked_points(triangles: &[[Side; 3]]) -> Points {
    let mut uf = UnionFind::new(3 * triangles.len());
    for slots in arc_slots(triangles).values() {
        if let [(t, i), (u, j)] = slots[..] {
            uf.union(3 * t + i, 3 * u + (j + 1) % 3);
            uf.union(3 * t + (i + 1) % 3, 3 * u + j);
        }
    }
    let mut ids = BTreeMap::new();
    let corner: Vec<usize> = (0..3 * triangles.len())
        .map(|c| {
            let r = uf.find(c);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect();
    let count = ids.len();
    let mut on_boundary = vec![false; count];
    for (t, tri) in triangles.iter().enumerate() {
        for (i, s) in tri.iter().enumerate() {
            if !s.is_arc() {
                on_boundary[corner[3 * t + i]] = true;
                on_boundary[corner[3 * t + (i + 1) % 3]] = true;
            }
        }
    }
    Points {
        corner,
        count,
        on_boundary,
    }
}

impl Triangulation {
    /// Validates the side multiplicities and the topology of the gluing.
    pub fn new(surface: MarkedSurface, triangles: Vec<[Side; 3]>) -> Result<Self, TriangulationError> {
        let slots = arc_slots(&triangles);
        for (&arc, s) in &slots {
            if s.len() != 2 {
                return Err(TriangulationError::ArcMultiplicity { arc, count: s.len() });
            }
        }
        let mut seen_boundary = BTreeMap::new();
        for tri in &triangles {
            for &s in tri {
                if let Side::Boundary { component, segment } = s {
                    let ok = surface
                        .boundary_points()
                        .get(component as usize)
                        .is_some_and(|&c| segment < c);
                    if !ok {
                        return Err(TriangulationError::UnknownBoundary(s));
                    }
                    if seen_boundary.insert(s, ()).is_some() {
                        return Err(TriangulationError::RepeatedBoundary(s));
                    }
                }
            }
        }
        for (j, &c) in surface.boundary_points().iter().enumerate() {
            for i in 0..c {
                let s = Side::Boundary {
                    component: j as u32,
                    segment: i,
                };
                if !seen_boundary.contains_key(&s) {
                    return Err(TriangulationError::MissingBoundary(s));
                }
            }
        }
        let n = surface.n();
        if slots.len() != n as usize {
            return Err(TriangulationError::ArcCount {
                expected: n,
                found: slots.len(),
            });
        }
        let expected_triangles = (2 * n + surface.c()) / 3;
        if 3 * triangles.len() as u32 != 2 * n + surface.c() {
            return Err(TriangulationError::TriangleCount {
                expected: expected_triangles,
                found: triangles.len(),
            });
        }
        check_connected(&triangles, &slots)?;
        check_topology(&surface, &triangles)?;
        let arcs = slots.keys().copied().collect();
        Ok(Triangulation {
            surface,
            triangles,
            arcs,
        })
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    /// Arc ids in increasing order; arc `arcs()[k]` is quiver vertex `k`.
    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    /// Quiver vertex of an arc id.
    pub fn vertex_of(&self, arc: u32) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    /// Boundary segments in increasing order; they follow the arcs as frozen vertices.
    pub fn boundary_segments(&self) -> Vec<Side> {
        let mut v: Vec<Side> = self
            .triangles
            .iter()
            .flatten()
            .copied()
            .filter(|s| !s.is_arc())
            .collect();
        v.sort();
        v
    }

    pub fn self_folded(&self) -> Vec<SelfFolded> {
        self_folded_of(&self.triangles)
    }

    /// Replaces `arc` by the other diagonal of the quadrilateral around it.
    pub fn flip(&self, arc: u32) -> Result<Triangulation, TriangulationError> {
        let slots = arc_slots(&self.triangles);
        let s = slots.get(&arc).ok_or(TriangulationError::UnknownArc(arc))?;
        let [(t, i), (u, j)] = s[..] else {
            unreachable!("validated triangulation")
        };
        if t == u {
            return Err(TriangulationError::Radius(arc));
        }
        let rot = |tri: [Side; 3], k: usize| [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]];
        let [e, a, b] = rot(self.triangles[t], i);
        let [_, c, d] = rot(self.triangles[u], j);
        let mut triangles = self.triangles.clone();
        triangles[t] = [e, b, c];
        triangles[u] = [e, d, a];
        Ok(Triangulation {
            surface: self.surface.clone(),
            triangles,
            arcs: self.arcs.clone(),
        })
    }

    /// Arcs that can be flipped (every arc except radii).
    pub fn flippable_arcs(&self) -> Vec<u32> {
        let radii: Vec<u32> = self.self_folded().iter().map(|f| f.radius).collect();
        self.arcs.iter().copied().filter(|a| !radii.contains(a)).collect()
    }

    /// Number of distinct sides at each marked point, split into boundary
    /// points and punctures.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let pts = marked_points(&self.triangles);
        let mut incident: Vec<Vec<Side>> = vec![Vec::new(); pts.count];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (i, &s) in tri.iter().enumerate() {
                for p in [pts.corner[3 * t + i], pts.corner[3 * t + (i + 1) % 3]] {
                    if !incident[p].contains(&s) {
                        incident[p].push(s);
                    }
                }
            }
        }
        let mut boundary = Vec::new();
        let mut punct = Vec::new();
        for (p, sides) in incident.iter().enumerate() {
            if pts.on_boundary[p] {
                boundary.push(sides.len());
            } else {
                punct.push(sides.len());
            }
        }
        (boundary, punct)
    }

    /// A copy with arcs renumbered `0..n` in order of first appearance.
    pub fn relabeled(&self) -> Triangulation {
        let mut map = BTreeMap::new();
        for s in self.triangles.iter().flatten() {
            if let Side::Arc(k) = s {
                let next = map.len() as u32;
                map.entry(*k).or_insert(next);
            }
        }
        let triangles: Vec<[Side; 3]> = self
            .triangles
            .iter()
            .map(|tri| tri.map(|s| s.arc().map_or(s, |k| Side::Arc(map[&k]))))
            .collect();
        Triangulation {
            surface: self.surface.clone(),
            triangles,
            arcs: (0..map.len() as u32).collect(),
        }
    }
}

pub(crate) fn self_folded_of(triangles: &[[Side; 3]]) -> Vec<SelfFolded> {
    let mut out = Vec::new();
    for (t, tri) in triangles.iter().enumerate() {
        for i in 0..3 {
            let (x, y, z) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
            if let (Side::Arc(r), Side::Arc(l)) = (y, x) {
                if y == z {
                    out.push(SelfFolded {
                        triangle: t,
                        radius: r,
                        loop_arc: l,
                    });
                }
            }
        }
    }
    out
}

fn check_connected(triangles: &[[Side; 3]], slots: &BTreeMap<u32, Vec<Slot>>) -> Result<(), TriangulationError> {
    if triangles.is_empty() {
        return Err(TriangulationError::Disconnected);
    }
    let mut uf = UnionFind::new(triangles.len());
    for s in slots.values() {
        uf.union(s[0].0, s[1].0);
    }
    let root = uf.find(0);
    if (1..triangles.len()).all(|t| uf.find(t) == root) {
        Ok(())
    } else {
        Err(TriangulationError::Disconnected)
    }
}

fn check_topology(surface: &MarkedSurface, triangles: &[[Side; 3]]) -> Result<(), TriangulationError> {
    let pts = marked_points(triangles);
    // Boundary segments: each boundary point starts exactly one and ends exactly one.
    let mut starts: BTreeMap<usize, Side> = BTreeMap::new();
    let mut ends: BTreeMap<Side, usize> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for (i, &s) in tri.iter().enumerate() {
            if !s.is_arc() {
                let from = pts.corner[3 * t + i];
                let to = pts.corner[3 * t + (i + 1) % 3];
                if starts.insert(from, s).is_some() {
                    return Err(TriangulationError::Topology(
                        "a boundary point with two outgoing boundary segments".into(),
                    ));
                }
                ends.insert(s, to);
            }
        }
    }
    let boundary_points = pts.on_boundary.iter().filter(|&&b| b).count();
    if boundary_points != starts.len() {
        return Err(TriangulationError::Topology("a boundary point with one boundary segment".into()));
    }
    let mut visited = BTreeMap::new();
    let mut cycles: Vec<(u32, usize)> = Vec::new();
    for &s in ends.keys() {
        if visited.contains_key(&s) {
            continue;
        }
        let Side::Boundary { component, .. } = s else { unreachable!() };
        let mut cur = s;
        let mut len = 0;
        loop {
            visited.insert(cur, ());
            len += 1;
            if cur.arc().is_some()
                || !matches!(cur, Side::Boundary { component: c, .. } if c == component)
            {
                return Err(TriangulationError::Topology(
                    "segments of different boundary components are joined".into(),
                ));
            }
            cur = starts[&ends[&cur]];
            if cur == s {
                break;
            }
        }
        cycles.push((component, len));
    }
    cycles.sort();
    let mut expected: Vec<(u32, usize)> = surface
        .boundary_points()
        .iter()
        .enumerate()
        .map(|(j, &c)| (j as u32, c as usize))
        .collect();
    expected.sort();
    if cycles != expected {
        return Err(TriangulationError::Topology(format!(
            "boundary cycles {cycles:?} instead of {expected:?}"
        )));
    }
    let punctures = pts.count - boundary_points;
    if punctures != surface.punctures() as usize {
        return Err(TriangulationError::Topology(format!("{punctures} punctures")));
    }
    let v = pts.count as i64;
    let e = (surface.n() + surface.c()) as i64;
    let f = triangles.len() as i64;
    let chi = 2 - 2 * surface.genus() as i64 - surface.b() as i64;
    if v - e + f != chi {
        return Err(TriangulationError::Topology(format!(
            "Euler characteristic {} instead of {chi}",
            v - e + f
        )));
    }
    Ok(())
}

/// Signed side adjacency summed over the non-self-folded triangles.
fn side_matrix(triangles: &[[Side; 3]], index: &BTreeMap<Side, usize>) -> Vec<Vec<i64>> {
    let folded: Vec<usize> = self_folded_of(triangles).iter().map(|f| f.triangle).collect();
    let n = index.len();
    let mut m = vec![vec![0i64; n]; n];
    for (t, tri) in triangles.iter().enumerate() {
        if folded.contains(&t) {
            continue;
        }
        for i in 0..3 {
            let (x, y) = (index[&tri[i]], index[&tri[(i + 1) % 3]]);
            m[x][y] += 1;
            m[y][x] -= 1;
        }
    }
    m
}

/// The quiver of a triangulation: arcs are mutable vertices (in arc-id order)
/// and, when `extended`, boundary segments are frozen vertices.
pub fn quiver_from_triangulation(t: &Triangulation, extended: bool) -> Quiver {
    let arcs = t.arcs();
    let segments = t.boundary_segments();
    let sides: Vec<Side> = arcs.iter().map(|&a| Side::Arc(a)).chain(segments.iter().copied()).collect();
    let index: BTreeMap<Side, usize> = sides.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let m = side_matrix(&t.triangles, &index);
    // A radius reads its arrows off the loop around it.
    let mut proxy: Vec<usize> = (0..sides.len()).collect();
    for f in t.self_folded() {
        proxy[index[&Side::Arc(f.radius)]] = index[&Side::Arc(f.loop_arc)];
    }
    let n_mut = arcs.len();
    let total = if extended { sides.len() } else { n_mut };
    let rows: Vec<Vec<IBig>> = (0..total)
        .map(|i| {
            (0..total)
                .map(|j| {
                    if i >= n_mut && j >= n_mut {
                        IBig::ZERO
                    } else {
                        IBig::from(m[proxy[i]][proxy[j]])
                    }
                })
                .collect()
        })
        .collect();
    Quiver::new(n_mut, total - n_mut, rows).expect("triangulation quivers are skew-symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: u32) -> Side {
        Side::Arc(k)
    }

    fn bd(j: u32, i: u32) -> Side {
        Side::Boundary {
            component: j,
            segment: i,
        }
    }

    fn torus() -> Triangulation {
        let s = MarkedSurface::new(1, 0, 1, vec![]).unwrap();
        Triangulation::new(s, vec![[a(0), a(1), a(2)], [a(0), a(1), a(2)]]).unwrap()
    }

    fn digon() -> Triangulation {
        let s = MarkedSurface::disc(2, 1).unwrap();
        Triangulation::new(s, vec![[bd(0, 0), a(1), a(0)], [bd(0, 1), a(0), a(1)]]).unwrap()
    }

    #[test]
    fn torus_gives_markov() {
        let q = quiver_from_triangulation(&torus(), false);
        assert_eq!(q.arrow_count(false).to_u64(), Some(6));
        assert_eq!(q.max_multiplicity(), dashu_int::UBig::from(2u8));
        assert_eq!(torus().degrees(), (vec![], vec![3]));
    }

    #[test]
    fn digon_arrows_cancel() {
        let t = digon();
        assert_eq!(quiver_from_triangulation(&t, false).arrow_count(false).to_u64(), Some(0));
        let ext = quiver_from_triangulation(&t, true);
        assert_eq!(ext.n_frozen(), 2);
        assert_eq!(ext.arrow_count(true).to_u64(), Some(4));
        assert_eq!(ext.restrict_to_mutable(), quiver_from_triangulation(&t, false));
    }

    #[test]
    fn flip_is_an_involution_and_a_mutation() {
        let t = torus();
        for arc in t.flippable_arcs() {
            let f = t.flip(arc).unwrap();
            assert_eq!(f.flip(arc).unwrap().triangles().len(), 2);
            let q = quiver_from_triangulation(&f, false);
            let mu = quiver_from_triangulation(&t, false).mutate(t.vertex_of(arc).unwrap()).unwrap();
            assert_eq!(q, mu);
        }
    }

    #[test]
    fn wrong_topology_is_rejected() {
        // Two triangles sharing three arcs with opposite orientation: a sphere.
        let s = MarkedSurface::new(1, 0, 1, vec![]).unwrap();
        let e = Triangulation::new(s, vec![[a(0), a(1), a(2)], [a(0), a(2), a(1)]]).unwrap_err();
        assert!(matches!(e, TriangulationError::Topology(_)));
        let s = MarkedSurface::disc(2, 1).unwrap();
        let e = Triangulation::new(s, vec![[bd(0, 0), a(1), a(0)], [bd(0, 1), a(0), a(0)]]).unwrap_err();
        assert!(matches!(e, TriangulationError::ArcMultiplicity { .. }));
    }

    #[test]
    fn radius_cannot_flip() {
        // Once-punctured digon with one self-folded triangle: outer (b0, b1, l) and (l, r, r).
        let s = MarkedSurface::disc(2, 1).unwrap();
        let t = Triangulation::new(s, vec![[bd(0, 0), bd(0, 1), a(0)], [a(0), a(1), a(1)]]).unwrap();
        assert_eq!(t.self_folded().len(), 1);
        assert_eq!(t.flip(1), Err(TriangulationError::Radius(1)));
        assert_eq!(t.flip(7), Err(TriangulationError::UnknownArc(7)));
        let f = t.flip(0).unwrap();
        assert!(f.self_folded().is_empty());
    }
}
