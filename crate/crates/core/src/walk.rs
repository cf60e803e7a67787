//! Complete walks: simple paths in the exchange graph (nodes are quivers up to
//! isomorphism, edges single mutations) whose arrow counts realize a whole
//! distribution set.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::canonical::{canonical_form, CanonicalKey};
use crate::explorer::{distribution_set, enumerate_class, DistributionSet, ExplorerError, Limits};
use crate::quiver::Quiver;
use crate::surface::{quiver_from_triangulation, seed_triangulation, t_bounds, Bounds, MarkedSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkLimits {
    /// Maximal number of mutations in a walk.
    pub max_depth: usize,
    /// Total search nodes over all deepening rounds.
    pub max_nodes: usize,
}

impl Default for WalkLimits {
    fn default() -> Self {
        WalkLimits {
            max_depth: 64,
            max_nodes: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkStatus {
    Found,
    NotFoundWithinLimits,
}

/// One mutation of a walk and the arrow count right after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkStep {
    pub vertex: usize,
    pub arrows: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkReport {
    pub start_key: CanonicalKey,
    pub start_arrows: u64,
    pub steps: Vec<WalkStep>,
    pub realized: DistributionSet,
    pub acyclic: bool,
    pub status: WalkStatus,
    pub nodes_visited: usize,
}

impl WalkReport {
    pub fn sequence(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start_key": self.start_key.to_hex(),
            "start_arrows": self.start_arrows,
            "steps": self.steps,
            "realized": self.realized,
            "acyclic": self.acyclic,
            "status": self.status,
            "nodes_visited": self.nodes_visited,
        })
    }
}

/// Arrow count used by walks: every arrow of the quiver, frozen ones included.
/// Pass the mutable part to work with exchange counts.
fn arrows(q: &Quiver) -> u64 {
    q.arrow_count_u64(true)
}

struct Dfs<'a> {
    target: &'a DistributionSet,
    max_nodes: usize,
    nodes: usize,
    on_path: HashSet<CanonicalKey>,
    steps: Vec<WalkStep>,
    /// Multiplicity of each target value along the current path.
    seen: Vec<u32>,
    distinct: usize,
    cut: bool,
}

impl Dfs<'_> {
    fn slot(&self, count: u64) -> usize {
        self.target.values.binary_search(&count).expect("pruned to target values")
    }

    fn add(&mut self, count: u64) {
        let i = self.slot(count);
        self.seen[i] += 1;
        if self.seen[i] == 1 {
            self.distinct += 1;
        }
    }

    fn remove(&mut self, count: u64) {
        let i = self.slot(count);
        self.seen[i] -= 1;
        if self.seen[i] == 0 {
            self.distinct -= 1;
        }
    }

    fn done(&self) -> bool {
        self.distinct == self.target.values.len()
    }

    fn search(&mut self, q: &Quiver, budget: usize) -> bool {
        if self.done() {
            return true;
        }
        if budget == 0 {
            self.cut = true;
            return false;
        }
        let mut children = Vec::new();
        for k in 0..q.n_mut() {
            if self.nodes >= self.max_nodes {
                self.cut = true;
                return false;
            }
            self.nodes += 1;
            let next = q.mutate(k).expect("mutable vertex");
            let count = arrows(&next);
            if !self.target.contains(count) {
                continue;
            }
            let key = canonical_form(&next);
            if self.on_path.contains(&key) {
                continue;
            }
            let fresh = self.seen[self.slot(count)] == 0;
            children.push((!fresh, k, count, key, next));
        }
        // Unrealized counts first, then ascending vertex.
        children.sort_by_key(|c| (c.0, c.1));
        for (_, k, count, key, next) in children {
            self.on_path.insert(key.clone());
            self.steps.push(WalkStep { vertex: k, arrows: count });
            self.add(count);
            if self.search(&next, budget - 1) {
                return true;
            }
            self.remove(count);
            self.steps.pop();
            self.on_path.remove(&key);
        }
        false
    }
}

/// Iterative-deepening search for a shortest simple walk from `seed` whose set
/// of arrow counts equals `target`. Failure is reported as a status and says
/// nothing about existence.
pub fn find_complete_walk(seed: &Quiver, target: &DistributionSet, limits: &WalkLimits) -> WalkReport {
    let start_key = canonical_form(seed);
    let start_arrows = arrows(seed);
    let mut report = WalkReport {
        start_key: start_key.clone(),
        start_arrows,
        steps: Vec::new(),
        realized: DistributionSet::from_values([start_arrows]),
        acyclic: true,
        status: WalkStatus::NotFoundWithinLimits,
        nodes_visited: 0,
    };
    if !target.contains(start_arrows) {
        return report;
    }
    let mut dfs = Dfs {
        target,
        max_nodes: limits.max_nodes,
        nodes: 0,
        on_path: HashSet::from([start_key]),
        steps: Vec::new(),
        seen: vec![0; target.values.len()],
        distinct: 0,
        cut: false,
    };
    dfs.add(start_arrows);
    for depth in 0..=limits.max_depth {
        dfs.cut = false;
        if dfs.search(seed, depth) {
            report.steps = dfs.steps;
            report.realized = target.clone();
            report.status = WalkStatus::Found;
            report.nodes_visited = dfs.nodes;
            return report;
        }
        // Nothing was cut off: deeper rounds would repeat this one.
        if !dfs.cut {
            break;
        }
    }
    report.nodes_visited = dfs.nodes;
    report
}

/// Replays `report` from `seed`, checking the recorded counts and that no
/// isomorphism class repeats.
pub fn replay_walk(seed: &Quiver, report: &WalkReport) -> bool {
    let mut q = seed.clone();
    let mut keys = HashSet::from([canonical_form(seed)]);
    if arrows(seed) != report.start_arrows {
        return false;
    }
    let mut counts = vec![report.start_arrows];
    for step in &report.steps {
        q = match q.mutate(step.vertex) {
            Ok(next) => next,
            Err(_) => return false,
        };
        if arrows(&q) != step.arrows || !keys.insert(canonical_form(&q)) {
            return false;
        }
        counts.push(step.arrows);
    }
    report.status != WalkStatus::Found || DistributionSet::from_values(counts) == report.realized
}

/// Outcome of comparing an enumerated distribution set with the predicted one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub surface: String,
    pub extended: bool,
    pub observed: DistributionSet,
    pub bounds: Bounds,
    /// Values in `[bounds.min, bounds.max]` that no class member attains.
    pub missing: Vec<u64>,
    /// Whether the observed set equals the predicted one (the interval, or the
    /// exceptional set when there is one).
    pub matches_prediction: bool,
    pub class_size: usize,
}

impl ContinuityReport {
    pub fn continuous(&self) -> bool {
        self.observed.is_continuous
    }
}

/// Enumerates the (extended) class of a seed triangulation of `s` and compares
/// it with [`t_bounds`].
pub fn verify_continuity(s: &MarkedSurface, extended: bool, limits: &Limits) -> Result<ContinuityReport, ExplorerError> {
    let t = seed_triangulation(s).map_err(|e| ExplorerError::Precondition(e.to_string()))?;
    let q = quiver_from_triangulation(&t, extended);
    let e = enumerate_class(&q, limits)?;
    let observed = distribution_set(&e, extended)?;
    let bounds = t_bounds(s, extended);
    let missing = (bounds.min..=bounds.max).filter(|v| !observed.contains(*v)).collect();
    let matches_prediction = observed.values == bounds.values();
    Ok(ContinuityReport {
        surface: s.label(),
        extended,
        observed,
        bounds,
        missing,
        matches_prediction,
        class_size: e.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markov_walk_is_a_single_vertex() {
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        let r = find_complete_walk(&q, &DistributionSet::from_values([6]), &WalkLimits::default());
        assert_eq!(r.status, WalkStatus::Found);
        assert!(r.steps.is_empty());
        assert!(replay_walk(&q, &r));
    }

    #[test]
    fn depth_zero_cannot_cover_two_values() {
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let limits = WalkLimits {
            max_depth: 0,
            ..WalkLimits::default()
        };
        let r = find_complete_walk(&q, &DistributionSet::from_values([2, 3]), &limits);
        assert_eq!(r.status, WalkStatus::NotFoundWithinLimits);
        let r = find_complete_walk(&q, &DistributionSet::from_values([2, 3]), &WalkLimits::default());
        assert_eq!(r.status, WalkStatus::Found);
        assert_eq!(r.steps.len(), 1);
        assert!(replay_walk(&q, &r));
    }

    #[test]
    fn twice_punctured_digon_continuity() {
        let s = MarkedSurface::disc(2, 2).unwrap();
        let r = verify_continuity(&s, false, &Limits::default()).unwrap();
        assert_eq!(r.observed.values, vec![4, 6, 7, 8]);
        assert!(r.matches_prediction);
        assert_eq!(r.missing, vec![5]);
        assert!(!r.continuous());
    }
}
