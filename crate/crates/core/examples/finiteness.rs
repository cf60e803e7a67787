//! Deciding mutation-finiteness and driving multiplicities past a threshold.
//!
//! Run with `cargo run --release --example finiteness`.

use arrowscope::explorer::{grow_multiplicities, is_mutation_finite, is_q_star, upper_bound_probe};
use arrowscope::Quiver;

fn show(name: &str, q: &Quiver) {
    let v = is_mutation_finite(q).unwrap();
    print!("{name}: ");
    if v.finite {
        println!("mutation-finite, class size {:?}", v.class_size);
        return;
    }
    let w = v.witness.as_ref().unwrap();
    println!(
        "mutation-infinite; mutating at {:?} reaches multiplicity {}",
        w.sequence,
        w.quiver.max_multiplicity()
    );
    assert_eq!(q.mutate_sequence(&w.sequence).unwrap(), w.quiver);
}

fn main() {
    let a3 = Quiver::from_arrows(3, 0, &[(0, 1, 1), (1, 2, 1)]).unwrap();
    let markov = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
    let kronecker_tail = Quiver::from_arrows(3, 0, &[(0, 1, 2), (1, 2, 1)]).unwrap();
    let heavy = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 2), (2, 0, 2)]).unwrap();
    show("A3", &a3);
    show("Markov", &markov);
    show("Kronecker with a tail", &kronecker_tail);
    show("(3,2,2) triangle", &heavy);

    // A cheap one-sided check: search a bounded neighbourhood for a large multiplicity.
    println!(
        "probe for multiplicity >= 1000 from (3,2,2): {}",
        upper_bound_probe(&heavy, 1000).unwrap()
    );

    // Every pair of mutable vertices ends up joined by more than N arrows.
    for n in [10, 100, 10_000] {
        let g = grow_multiplicities(&kronecker_tail, n).unwrap();
        println!(
            "N = {n:>5}: {} mutations {:?}, least multiplicity now {}",
            g.sequence.len(),
            g.sequence,
            (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .map(|(i, j)| g.quiver.multiplicity(i, j))
                .min()
                .unwrap()
        );
    }

    // Attaching a fourth vertex to a heavy cyclic triangle and circulating.
    let mut q = Quiver::from_matrix(
        4,
        0,
        &[
            vec![0, 5, -4, 1],
            vec![-5, 0, 3, 0],
            vec![4, -3, 0, -1],
            vec![-1, 0, 1, 0],
        ],
    )
    .unwrap();
    for round in 0..4 {
        println!("round {round}: Q* shape reached: {}", is_q_star(&q, 2));
        if is_q_star(&q, 2) {
            break;
        }
        q = q.mutate_sequence(&[0, 1, 2]).unwrap();
    }
}
