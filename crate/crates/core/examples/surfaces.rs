//! Triangulated marked surfaces: seeds, flips, piece census, and the
//! predicted range of arrow counts.
//!
//! Run with `cargo run --release --example surfaces`.

use arrowscope::io::write_triangulation;
use arrowscope::surface::{
    arrow_count_by_formula, extremal_triangulation, piece_census, quiver_from_triangulation, seed_triangulation,
    t_bounds, Extremum, FormulaMode, MarkedSurface,
};
use arrowscope::{distribution_set, enumerate_class, Limits};

fn main() {
    // Disc with four marked points on the boundary and one puncture.
    let s = MarkedSurface::new(0, 1, 1, vec![4]).unwrap();
    println!("{}: n = {}", s.label(), s.n());

    let t = seed_triangulation(&s).unwrap();
    print!("seed triangulation:\n{}", write_triangulation(&t));
    let q = quiver_from_triangulation(&t, false);
    println!("exchange arrows: {}", q.arrow_count(false));

    let census = piece_census(&t).unwrap();
    println!("piece census: {census:?}");
    println!(
        "formula counts: piece {}, closed {}, extended {}",
        arrow_count_by_formula(&census, &s, FormulaMode::Piece).unwrap(),
        arrow_count_by_formula(&census, &s, FormulaMode::Closed).unwrap(),
        arrow_count_by_formula(&census, &s, FormulaMode::Extended).unwrap()
    );

    // Flipping an arc is mutation at the matching vertex.
    let arc = t.flippable_arcs()[0];
    let flipped = t.flip(arc).unwrap();
    assert_eq!(
        quiver_from_triangulation(&flipped, true),
        quiver_from_triangulation(&t, true).mutate(t.vertex_of(arc).unwrap()).unwrap()
    );
    println!("flipped arc {arc}: exchange arrows now {}", quiver_from_triangulation(&flipped, false).arrow_count(false));

    for extended in [false, true] {
        let b = t_bounds(&s, extended);
        let lo = extremal_triangulation(&s, Extremum::Min, extended).unwrap();
        let hi = extremal_triangulation(&s, Extremum::Max, extended).unwrap();
        let e = enumerate_class(&quiver_from_triangulation(&t, extended), &Limits::default()).unwrap();
        let d = distribution_set(&e, extended).unwrap();
        println!(
            "{}: predicted [{}, {}], realized by triangulations with {} and {} arrows; class of {} quivers gives {:?}",
            if extended { "extended" } else { "exchange" },
            b.min,
            b.max,
            quiver_from_triangulation(&lo, extended).arrow_count(extended),
            quiver_from_triangulation(&hi, extended).arrow_count(extended),
            e.len(),
            d.values
        );
    }

    // Genus one comes from shipped seed files.
    let torus = MarkedSurface::new(1, 0, 1, vec![]).unwrap();
    let markov = quiver_from_triangulation(&seed_triangulation(&torus).unwrap(), false);
    println!("{}: {} arrows, bounds {:?}", torus.label(), markov.arrow_count(false), t_bounds(&torus, false).values());
}
