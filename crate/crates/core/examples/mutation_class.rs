//! Enumerating a finite mutation class and reading off its arrow-count
//! distribution set.
//!
//! Run with `cargo run --release --example mutation_class [NAME]`, where NAME
//! is one of the shipped exceptional seeds (default `E7`).

use arrowscope::data::{exceptional_seed, EXCEPTIONAL};
use arrowscope::{distribution_set, enumerate_class, Limits};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "E7".into());
    let seed = exceptional_seed(&name).unwrap_or_else(|e| {
        eprintln!("{e}; known names: {}", EXCEPTIONAL.join(", "));
        std::process::exit(2);
    });

    let e = enumerate_class(&seed, &Limits::default()).unwrap();
    let d = distribution_set(&e, false).unwrap();
    println!("{name}: {} quivers up to isomorphism", e.len());
    println!("arrow counts {:?}, continuous: {}", d.values, d.is_continuous);
    if !d.is_continuous {
        println!("missing values: {:?}", d.gaps());
    }

    // Every member remembers how it was reached.
    let (key, member) = e
        .members
        .iter()
        .max_by_key(|(_, m)| m.quiver.arrow_count(false).to_u64())
        .unwrap();
    let path = e.path_to(key).unwrap();
    println!(
        "a member with {} arrows is reached by mutating at {:?} (depth {})",
        member.quiver.arrow_count(false),
        path,
        member.depth
    );
    assert_eq!(
        arrowscope::canonical_form(&seed.mutate_sequence(&path).unwrap()),
        *key
    );

    // A hard cap turns the run into a truncated, inconclusive one.
    let small = Limits {
        max_members: 10,
        ..Limits::default()
    };
    let t = enumerate_class(&seed, &small).unwrap();
    println!("with max_members = 10: {} members, truncated = {}", t.len(), t.truncated);

    for other in EXCEPTIONAL {
        let e = enumerate_class(&exceptional_seed(other).unwrap(), &Limits::default()).unwrap();
        let d = distribution_set(&e, false).unwrap();
        println!("  {other:<8} size {:>5}  counts {:?}", e.len(), d.values);
    }
}
