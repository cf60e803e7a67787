//! Searching for complete walks: simple paths through the exchange graph
//! that realize every value of a distribution set.
//!
//! Run with `cargo run --release --example walks`.

use arrowscope::surface::{quiver_from_triangulation, seed_triangulation, MarkedSurface, SpecialSurface};
use arrowscope::walk::{find_complete_walk, replay_walk, verify_continuity, WalkLimits};
use arrowscope::{distribution_set, enumerate_class, Limits};

fn main() {
    let surfaces = [
        SpecialSurface::TwicePuncturedMonogon.surface(),
        SpecialSurface::TwicePuncturedDigon.surface(),
        SpecialSurface::FourPuncturedSphere.surface(),
        MarkedSurface::new(0, 1, 1, vec![5]).unwrap(),
    ];
    for s in surfaces {
        let q = quiver_from_triangulation(&seed_triangulation(&s).unwrap(), false);
        let e = enumerate_class(&q, &Limits::default()).unwrap();
        let target = distribution_set(&e, false).unwrap();
        let r = find_complete_walk(&q, &target, &WalkLimits::default());
        println!(
            "{:<14} target {:?}: {:?} after {} nodes, mutations {:?}, counts {:?}",
            s.label(),
            target.values,
            r.status,
            r.nodes_visited,
            r.sequence(),
            std::iter::once(r.start_arrows)
                .chain(r.steps.iter().map(|st| st.arrows))
                .collect::<Vec<_>>()
        );
        assert!(replay_walk(&q, &r));
    }

    // Continuity of the whole class against the predicted range.
    let s = SpecialSurface::TwicePuncturedDigon.surface();
    let c = verify_continuity(&s, false, &Limits::default()).unwrap();
    println!(
        "{}: observed {:?}, bounds [{}, {}], missing {:?}, matches prediction: {}",
        c.surface, c.observed.values, c.bounds.min, c.bounds.max, c.missing, c.matches_prediction
    );
}
