use serde::Serialize;

use super::{MarkedSurface, SpecialSurface};

/// Extreme arrow counts over the class of a surface; `exceptional_set` lists
/// the exact counts when they are known not to fill the interval or are tabulated
/// directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub min: u64,
    pub max: u64,
    pub exceptional_set: Option<Vec<u64>>,
}

impl Bounds {
    fn interval(min: i64, max: i64) -> Self {
        Bounds {
            min: min as u64,
            max: max as u64,
            exceptional_set: None,
        }
    }

    fn set(values: &[u64]) -> Self {
        Bounds {
            min: values[0],
            max: *values.last().unwrap(),
            exceptional_set: Some(values.to_vec()),
        }
    }

    /// The counts every class member must take.
    pub fn values(&self) -> Vec<u64> {
        match &self.exceptional_set {
            Some(v) => v.clone(),
            None => (self.min..=self.max).collect(),
        }
    }
}

fn exchange(s: &MarkedSurface) -> Bounds {
    use SpecialSurface::*;
    match s.special() {
        Some(TwicePuncturedMonogon) => return Bounds::set(&[4, 5, 6]),
        Some(OncePuncturedDigon) => return Bounds::set(&[0]),
        Some(TwicePuncturedDigon) => return Bounds::set(&[4, 6, 7, 8]),
        Some(FourPuncturedSphere) => return Bounds::set(&[8, 9, 10, 12]),
        _ => {}
    }
    let (g, b, p) = (s.genus(), s.b(), s.punctures() as i64);
    let (n, c, m) = (s.n() as i64, s.c() as i64, s.m() as i64);
    let max = match (g, b, p, c) {
        (0, 1, 1, 3) => 3,
        (0, 1, 1, 4) => 5,
        _ => 2 * n - (c + m) / 2,
    };
    let min = if g == 0 && b == 0 {
        2 * n - 2 * p + 4
    } else if g == 0 && b == 1 && c == 1 {
        2 * n - 2 * p
    } else if g == 0 && b == 1 {
        2 * n - c - 2 * p + (2 - p).max(0)
    } else if b == 0 {
        2 * n - 2 * p + 2
    } else {
        2 * n - c - 2 * p
    };
    Bounds::interval(min, max)
}

fn extended(s: &MarkedSurface) -> Bounds {
    use SpecialSurface::*;
    match s.special() {
        Some(TwicePuncturedMonogon) => return Bounds::set(&[6, 7, 8]),
        Some(OncePuncturedDigon) => return Bounds::set(&[4]),
        Some(OncePuncturedTriangle) => return Bounds::set(&[6, 7, 9]),
        Some(FourPuncturedSphere) => return Bounds::set(&[8, 9, 10, 12]),
        _ => {}
    }
    if s.b() == 0 {
        return exchange(s);
    }
    let (g, b, p) = (s.genus(), s.b(), s.punctures() as i64);
    let (n, c, m) = (s.n() as i64, s.c() as i64, s.m() as i64);
    if g == 0 && b == 1 {
        match (p, c) {
            (0, _) => return Bounds::interval(2 * n + (c + m) / 2, 2 * n + c - 2),
            (_, 1) | (_, 2) => return Bounds::interval(2 * n - 2 * p + 2, 2 * n + c),
            _ => {}
        }
    }
    Bounds::interval(2 * n + (c + m) / 2 - 2 * p, 2 * n + c)
}

/// Minimum and maximum arrow counts over the exchange (or extended) class of `s`.
pub fn t_bounds(s: &MarkedSurface, extended_mode: bool) -> Bounds {
    if extended_mode {
        extended(s)
    } else {
        exchange(s)
    }
}
