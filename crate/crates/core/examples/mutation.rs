//! Mutating a quiver and comparing quivers up to relabeling.
//!
//! Run with `cargo run --example mutation`.

use arrowscope::canonical::canonical_quiver;
use arrowscope::io::write_quiver;
use arrowscope::{are_isomorphic, canonical_form, CanonicalKey, Quiver};

fn main() {
    // Linear A4 quiver 0 -> 1 -> 2 -> 3 with one frozen vertex hanging off 3.
    let q = Quiver::from_arrows(4, 1, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]).unwrap();
    println!("seed:\n{}", write_quiver(&q));

    let m = q.mutate(1).unwrap();
    println!("after mutating at 1:\n{}", write_quiver(&m));
    println!(
        "exchange arrows {} -> {}, all arrows {} -> {}",
        q.arrow_count(false),
        m.arrow_count(false),
        q.arrow_count(true),
        m.arrow_count(true)
    );
    assert_eq!(m.mutate(1).unwrap(), q, "mutation is an involution");

    // Canonical keys identify quivers up to relabeling of mutable (and frozen) vertices.
    let relabeled = m.permute(&[3, 2, 1, 0, 4]).unwrap();
    let key = canonical_form(&m);
    println!("canonical key  {}", key.to_hex());
    println!("relabeled key  {}", canonical_form(&relabeled).to_hex());
    println!("isomorphic: {}", are_isomorphic(&m, &relabeled));

    // Keys are self-contained: the canonical representative decodes back out.
    let decoded = CanonicalKey::from_hex(&key.to_hex()).unwrap().decode().unwrap();
    assert_eq!(decoded, canonical_quiver(&m));
    println!("decoded representative:\n{}", write_quiver(&decoded));

    // Multiplicities are arbitrary precision.
    let mut big = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 3), (2, 0, 3)]).unwrap();
    for k in [0, 1, 2].iter().cycle().take(12) {
        big = big.mutate(*k).unwrap();
    }
    let digits = big.max_multiplicity().to_string().len();
    println!("(3,3,3) triangle after 12 mutations: largest multiplicity has {digits} digits");
}
