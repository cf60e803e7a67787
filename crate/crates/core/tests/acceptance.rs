//! Acceptance run: one line per criterion, `PASS`, `FAIL`, or `KNOWN-FAIL`
//! for a stated value that enumeration contradicts (see README). Exits
//! nonzero on any unexpected failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arrowscope::cli::verify_table_rows;
use arrowscope::data::exceptional_seed;
use arrowscope::explorer::{
    grow_multiplicities, is_mutation_finite, is_q_star, upper_bound_probe,
};
use arrowscope::surface::{
    arrow_count_by_formula, flip_ball, piece_census, quiver_from_triangulation, seed_triangulation, surface_grid,
    FormulaMode, MarkedSurface, SpecialSurface, Triangulation,
};
use arrowscope::walk::{find_complete_walk, replay_walk, WalkLimits, WalkStatus};
use arrowscope::{are_isomorphic, distribution_set, enumerate_class, DistributionSet, Limits, Quiver};
use common::multiset_mutation;
use dashu_int::UBig;
use rand::{rngs::StdRng, RngExt, SeedableRng};

/// Wall-clock budgets.
const BUDGET_EXCEPTIONAL: Duration = Duration::from_secs(600);
const BUDGET_GRID: Duration = Duration::from_secs(1800);
const BUDGET_MUTATION_CORE: Duration = Duration::from_secs(60);
/// Corpus size and flip depth for the formula and flip checks.
const MIN_CORPUS: usize = 500;
const FLIP_DEPTH: usize = 4;
const RANDOM_QUIVERS: usize = 10_000;
const GROWTH_N: u64 = 100;
const COR_CORPUS: usize = 50;

#[derive(PartialEq)]
enum Outcome {
    Pass,
    Fail,
    KnownFail,
}

struct Report {
    lines: Vec<(String, Outcome, String)>,
}

impl Report {
    fn record(&mut self, id: &str, outcome: Outcome, detail: String) {
        let tag = match outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::KnownFail => "KNOWN-FAIL",
        };
        println!("[{tag:>10}] {id:<4} {detail}");
        self.lines.push((id.to_string(), outcome, detail));
    }

    fn check(&mut self, id: &str, ok: bool, detail: String) {
        self.record(id, if ok { Outcome::Pass } else { Outcome::Fail }, detail);
    }
}

fn set_text(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn criterion_1_and_2(r: &mut Report) {
    let start = Instant::now();
    let expected: [(&str, Vec<u64>); 10] = [
        ("E6", (5..=9).collect()),
        ("E6~", (6..=12).collect()),
        ("E7~", (7..=14).collect()),
        ("E8~", (8..=16).collect()),
        ("E6(1,1)", (9..=13).collect()),
        ("E7(1,1)", (9..=16).collect()),
        ("E8(1,1)", (10..=18).collect()),
        ("E8", (7..=13).collect()),
        ("X6", vec![9, 11]),
        ("X7", vec![12, 15]),
    ];
    let mut mismatches = Vec::new();
    let mut sizes = std::collections::BTreeMap::new();
    for (name, want) in &expected {
        let e = enumerate_class(&exceptional_seed(name).unwrap(), &Limits::default()).unwrap();
        let got = distribution_set(&e, false).unwrap().values;
        sizes.insert(*name, e.len());
        if got != *want {
            mismatches.push(format!("{name}: {} != {}", set_text(&got), set_text(want)));
        }
    }
    let e7 = enumerate_class(&exceptional_seed("E7").unwrap(), &Limits::default()).unwrap();
    let w7 = distribution_set(&e7, false).unwrap();
    sizes.insert("E7", e7.len());
    let elapsed = start.elapsed();
    r.check(
        "1",
        mismatches.is_empty() && w7.is_continuous && elapsed <= BUDGET_EXCEPTIONAL,
        format!(
            "exceptional distribution sets: {}/10 exact; E7 continuous {} = {} (recorded from enumeration); {:.1?} (budget {:?}){}",
            10 - mismatches.len(),
            w7.is_continuous,
            set_text(&w7.values),
            elapsed,
            BUDGET_EXCEPTIONAL,
            if mismatches.is_empty() { String::new() } else { format!("; {}", mismatches.join("; ")) }
        ),
    );
    r.record(
        "1b",
        if e7.len() == 112 { Outcome::Pass } else { Outcome::KnownFail },
        format!("E7 class size: enumerated {}, stated 112", e7.len()),
    );

    let x7_ok = sizes["X7"] == 2;
    let stated = [("E6", 21usize), ("E7", 112), ("E8", 391), ("X7", 2)];
    let detail: Vec<String> = stated
        .iter()
        .map(|(n, s)| format!("{n} {} (stated {s})", sizes[n]))
        .collect();
    let all = stated.iter().all(|(n, s)| sizes[n] == *s);
    r.record(
        "2",
        if all {
            Outcome::Pass
        } else if x7_ok {
            Outcome::KnownFail
        } else {
            Outcome::Fail
        },
        format!("exceptional class sizes: {}", detail.join(", ")),
    );
}

fn criterion_3(r: &mut Report) {
    let cases: [(SpecialSurface, bool, Vec<u64>); 8] = [
        (SpecialSurface::TwicePuncturedMonogon, false, vec![4, 5, 6]),
        (SpecialSurface::OncePuncturedDigon, false, vec![0]),
        (SpecialSurface::TwicePuncturedDigon, false, vec![4, 6, 7, 8]),
        (SpecialSurface::FourPuncturedSphere, false, vec![8, 9, 10, 12]),
        (SpecialSurface::TwicePuncturedMonogon, true, vec![6, 7, 8]),
        (SpecialSurface::OncePuncturedDigon, true, vec![4]),
        (SpecialSurface::OncePuncturedTriangle, true, vec![6, 7, 9]),
        (SpecialSurface::FourPuncturedSphere, true, vec![8, 9, 10, 12]),
    ];
    let mut bad = Vec::new();
    for (sp, extended, want) in &cases {
        let t = seed_triangulation(&sp.surface()).unwrap();
        let q = quiver_from_triangulation(&t, *extended);
        let e = enumerate_class(&q, &Limits::default()).unwrap();
        let got = distribution_set(&e, *extended).unwrap().values;
        if got != *want {
            bad.push(format!("{} ext={extended}: {}", sp.name(), set_text(&got)));
        }
    }
    r.check(
        "3",
        bad.is_empty(),
        format!("surface exceptional sets: {}/8 exact{}", 8 - bad.len(), if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }),
    );
}

fn criteria_4_and_5(r: &mut Report) {
    let start = Instant::now();
    let rows = verify_table_rows(9);
    let elapsed = start.elapsed();
    let mut bound_failures = Vec::new();
    for row in &rows {
        if row.error.is_some()
            || row.observed.first() != row.predicted.first()
            || row.observed.last() != row.predicted.last()
        {
            bound_failures.push(format!("{} ext={}", row.surface, row.extended));
        }
    }
    let surfaces: BTreeSet<&str> = rows.iter().map(|r| r.surface.as_str()).collect();
    r.check(
        "4",
        bound_failures.is_empty() && elapsed <= BUDGET_GRID,
        format!(
            "bounds vs enumeration: {} surfaces x 2 modes, {} min/max mismatches; {:.1?} (budget {:?}){}",
            surfaces.len(),
            bound_failures.len(),
            elapsed,
            BUDGET_GRID,
            if bound_failures.is_empty() { String::new() } else { format!("; {}", bound_failures.join(", ")) }
        ),
    );

    let label = |sp: SpecialSurface| sp.surface().label();
    let expected: BTreeSet<(String, bool)> = [
        (label(SpecialSurface::TwicePuncturedDigon), false),
        (label(SpecialSurface::FourPuncturedSphere), false),
        (label(SpecialSurface::OncePuncturedTriangle), true),
        (label(SpecialSurface::FourPuncturedSphere), true),
    ]
    .into_iter()
    .collect();
    let flagged: BTreeSet<(String, bool)> = rows
        .iter()
        .filter(|r| !r.continuous)
        .map(|r| (r.surface.clone(), r.extended))
        .collect();
    let exact = rows.iter().all(|r| r.pass);
    r.check(
        "5",
        flagged == expected && exact,
        format!(
            "continuity replay: {} non-continuous rows {:?}; all sets equal prediction: {exact}",
            flagged.len(),
            flagged.iter().map(|(s, e)| format!("{s}{}", if *e { " ext" } else { "" })).collect::<Vec<_>>()
        ),
    );
}

fn formula_excluded(s: &MarkedSurface) -> bool {
    matches!(
        s.special(),
        Some(SpecialSurface::TwicePuncturedMonogon | SpecialSurface::OncePuncturedDigon | SpecialSurface::FourPuncturedSphere)
    )
}

fn corpus() -> Vec<Triangulation> {
    let mut out = Vec::new();
    for s in surface_grid(9) {
        if formula_excluded(&s) {
            continue;
        }
        out.extend(flip_ball(&seed_triangulation(&s).unwrap(), FLIP_DEPTH));
    }
    out
}

fn count(t: &Triangulation, extended: bool) -> i64 {
    quiver_from_triangulation(t, extended).arrow_count(extended).to_u64().unwrap() as i64
}

fn criteria_6_and_7(r: &mut Report) {
    let corpus = corpus();
    let mut formula_failures = 0;
    for t in &corpus {
        let s = t.surface();
        let ok = match piece_census(t) {
            Ok(c) => {
                arrow_count_by_formula(&c, s, FormulaMode::Piece) == Ok(count(t, false))
                    && arrow_count_by_formula(&c, s, FormulaMode::Closed) == Ok(count(t, false))
                    && arrow_count_by_formula(&c, s, FormulaMode::Extended) == Ok(count(t, true))
            }
            Err(_) => false,
        };
        if !ok {
            formula_failures += 1;
        }
    }
    r.check(
        "6",
        corpus.len() >= MIN_CORPUS && formula_failures == 0,
        format!(
            "formula cross-checks: {} triangulations (flip depth <= {FLIP_DEPTH}, need >= {MIN_CORPUS}), {} failures",
            corpus.len(),
            formula_failures
        ),
    );

    let mut flips = 0;
    let mut flip_failures = 0;
    for t in &corpus {
        let q = quiver_from_triangulation(t, true);
        for arc in t.flippable_arcs() {
            flips += 1;
            let flipped = quiver_from_triangulation(&t.flip(arc).unwrap(), true);
            let mutated = q.mutate(t.vertex_of(arc).unwrap()).unwrap();
            if !are_isomorphic(&flipped, &mutated) {
                flip_failures += 1;
            }
        }
    }
    r.check(
        "7",
        flip_failures == 0,
        format!("flip/mutation commutation: {flips} flips, {flip_failures} failures"),
    );
}

fn random_quiver(rng: &mut StdRng, max_mut: usize, max_frozen: usize, max_entry: i64) -> Quiver {
    let m = rng.random_range(1..=max_mut);
    let f = rng.random_range(0..=max_frozen);
    let n = m + f;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if i >= m && j >= m {
                continue;
            }
            let v = rng.random_range(-max_entry..=max_entry);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    Quiver::from_matrix(m, f, &rows).unwrap()
}

fn criterion_8(r: &mut Report) {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut involution, mut commutation, mut oracle, mut failures) = (0, 0, 0, 0);
    for _ in 0..RANDOM_QUIVERS {
        let q = random_quiver(&mut rng, 8, 3, 4);
        let k = rng.random_range(0..q.n_mut());
        involution += 1;
        if q.mutate(k).unwrap().mutate(k).unwrap() != q {
            failures += 1;
        }
        let pairs: Vec<(usize, usize)> = (0..q.n_mut())
            .flat_map(|i| (i + 1..q.n_mut()).map(move |j| (i, j)))
            .filter(|&(i, j)| q.multiplicity(i, j) == UBig::ZERO)
            .collect();
        if !pairs.is_empty() {
            let (i, j) = pairs[rng.random_range(0..pairs.len())];
            commutation += 1;
            if q.mutate_sequence(&[i, j]).unwrap() != q.mutate_sequence(&[j, i]).unwrap() {
                failures += 1;
            }
        }
        if q.order() <= 5 {
            oracle += 1;
            if q.mutate(k).unwrap() != multiset_mutation(&q, k) {
                failures += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    r.check(
        "8",
        failures == 0 && elapsed <= BUDGET_MUTATION_CORE,
        format!(
            "mutation core: {involution} involutions, {commutation} commutations, {oracle} oracle comparisons (n <= 5), {failures} failures; {elapsed:.1?} (budget {BUDGET_MUTATION_CORE:?})"
        ),
    );
}

fn all_pairs_above(q: &Quiver, n: u64) -> bool {
    let n = UBig::from(n);
    (0..q.n_mut()).all(|i| (i + 1..q.n_mut()).all(|j| q.multiplicity(i, j) > n))
}

fn connected_random(rng: &mut StdRng, lo: usize, hi: usize) -> Quiver {
    loop {
        let n = rng.random_range(lo..=hi);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.random_range(-2i64..=2);
                rows[i][j] = v;
                rows[j][i] = -v;
            }
        }
        let q = Quiver::from_matrix(n, 0, &rows).unwrap();
        if q.is_connected() {
            return q;
        }
    }
}

fn criterion_9(r: &mut Report) {
    let mut notes = Vec::new();
    let mut ok = true;

    // Triple-arrow triangle.
    let triple = Quiver::from_arrows(3, 0, &[(0, 1, 3), (1, 2, 2), (2, 0, 2)]).unwrap();
    let v = is_mutation_finite(&triple).unwrap();
    let witness_ok = v.witness.as_ref().is_some_and(|w| {
        triple.mutate_sequence(&w.sequence).unwrap() == w.quiver && w.quiver.max_multiplicity() >= UBig::from(3u8)
    });
    ok &= !v.finite && witness_ok;
    notes.push(format!("triple triangle infinite with witness: {}", !v.finite && witness_ok));

    // Growth beyond N on infinite seeds with 3, 4 and 5 vertices.
    let mut rng = StdRng::seed_from_u64(9);
    let mut grown = 0;
    let mut longest = 0;
    let mut seeds = vec![
        triple.clone(),
        Quiver::from_arrows(4, 0, &[(0, 1, 3), (1, 2, 1), (2, 3, 1)]).unwrap(),
        Quiver::from_arrows(5, 0, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)]).unwrap(),
    ];
    while seeds.len() < 30 {
        let q = connected_random(&mut rng, 3, 5);
        if !is_mutation_finite(&q).unwrap().finite {
            seeds.push(q);
        }
    }
    let mut growth_ok = true;
    for q in &seeds {
        if is_mutation_finite(q).unwrap().finite {
            continue;
        }
        match grow_multiplicities(q, GROWTH_N) {
            Ok(g) => {
                let replay = q.mutate_sequence(&g.sequence).unwrap() == g.quiver;
                growth_ok &= replay && all_pairs_above(&g.quiver, GROWTH_N);
                longest = longest.max(g.sequence.len());
                grown += 1;
            }
            Err(_) => growth_ok = false,
        }
    }
    let sizes: BTreeSet<usize> = seeds.iter().map(|q| q.n_mut()).collect();
    ok &= growth_ok && sizes == BTreeSet::from([3, 4, 5]);
    notes.push(format!(
        "growth beyond N={GROWTH_N}: {grown} seeds (n in {sizes:?}), longest {longest} mutations, ok {growth_ok}"
    ));

    // Circulation replay: vertex 3 attached in every way to a heavy triangle.
    let (mut replays, mut monotone, mut worst_rounds, mut reached) = (0, true, 0, 0);
    for orient in [1i64, -1] {
        for d in -3i64..=3 {
            for e in -3i64..=3 {
                for f in -3i64..=3 {
                    if (d, e, f) == (0, 0, 0) {
                        continue;
                    }
                    let mut m = vec![vec![0i64; 4]; 4];
                    let mut set = |i: usize, j: usize, v: i64| {
                        m[i][j] = v;
                        m[j][i] = -v;
                    };
                    set(0, 1, 5 * orient);
                    set(1, 2, 3 * orient);
                    set(2, 0, 4 * orient);
                    set(3, 0, f);
                    set(3, 1, d);
                    set(3, 2, e);
                    let mut q = Quiver::from_matrix(4, 0, &m).unwrap();
                    replays += 1;
                    for round in 0..=4 {
                        if is_q_star(&q, 2) {
                            reached += 1;
                            worst_rounds = worst_rounds.max(round);
                            break;
                        }
                        for k in [0usize, 1, 2] {
                            let tri = |q: &Quiver| [q.multiplicity(0, 1), q.multiplicity(0, 2), q.multiplicity(1, 2)];
                            let before = tri(&q);
                            q = q.mutate(k).unwrap();
                            let after = tri(&q);
                            monotone &= before.iter().zip(&after).all(|(b, a)| a >= b);
                        }
                    }
                }
            }
        }
    }
    ok &= monotone && reached == replays;
    notes.push(format!(
        "circulation replay: {reached}/{replays} reach Q* within {worst_rounds} rounds, multiplicities non-decreasing {monotone}"
    ));

    // Three-way agreement on random connected quivers.
    let mut agree = 0;
    let mut infinite = 0;
    for _ in 0..COR_CORPUS {
        let q = connected_random(&mut rng, 3, 5);
        let a = !is_mutation_finite(&q).unwrap().finite;
        let abort = Limits {
            max_multiplicity_abort: Some(3),
            ..Limits::default()
        };
        let e = enumerate_class(&q, &abort).unwrap();
        let b = e.members.values().any(|m| m.quiver.max_multiplicity() >= UBig::from(3u8));
        let c = upper_bound_probe(&q, 1000).unwrap();
        if a == b && b == c {
            agree += 1;
        }
        infinite += a as usize;
    }
    ok &= agree == COR_CORPUS;
    notes.push(format!("three-way agreement {agree}/{COR_CORPUS} ({infinite} infinite)"));

    r.check("9", ok, format!("growth suite: {}", notes.join("; ")));
}

fn criterion_10(r: &mut Report) {
    let mut notes = Vec::new();
    let mut ok = true;
    let limits = WalkLimits::default();
    let walk = |s: &MarkedSurface| {
        let q = quiver_from_triangulation(&seed_triangulation(s).unwrap(), false);
        let e = enumerate_class(&q, &Limits::default()).unwrap();
        let target = distribution_set(&e, false).unwrap();
        let report = find_complete_walk(&q, &target, &limits);
        let replays = replay_walk(&q, &report) && report.acyclic;
        (report, target, replays)
    };
    for (sp, want) in [
        (SpecialSurface::TwicePuncturedMonogon.surface(), Some(2usize)),
        (SpecialSurface::OncePuncturedDigon.surface(), Some(0)),
        (MarkedSurface::new(1, 0, 1, vec![]).unwrap(), Some(0)),
        (SpecialSurface::TwicePuncturedDigon.surface(), None),
        (SpecialSurface::FourPuncturedSphere.surface(), None),
    ] {
        let (report, target, replays) = walk(&sp);
        let status = match report.status {
            WalkStatus::Found => "found",
            WalkStatus::NotFoundWithinLimits => "not found within limits",
        };
        let this_ok = replays
            && match want {
                Some(len) => report.status == WalkStatus::Found && report.steps.len() == len,
                None => true,
            };
        ok &= this_ok;
        notes.push(format!(
            "{} {}: {status}, length {}",
            sp.label(),
            set_text(&target.values),
            report.steps.len()
        ));
    }
    let depth_zero = find_complete_walk(
        &quiver_from_triangulation(&seed_triangulation(&SpecialSurface::TwicePuncturedMonogon.surface()).unwrap(), false),
        &DistributionSet::from_values([4, 5, 6]),
        &WalkLimits {
            max_depth: 0,
            ..limits
        },
    );
    ok &= depth_zero.status == WalkStatus::NotFoundWithinLimits;
    r.check("10", ok, format!("complete walks: {}", notes.join("; ")));
}

fn main() {
    // `cargo test -- --list` and similar harness probes.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut report = Report { lines: Vec::new() };
    let start = Instant::now();
    criterion_1_and_2(&mut report);
    criterion_3(&mut report);
    criteria_4_and_5(&mut report);
    criteria_6_and_7(&mut report);
    criterion_8(&mut report);
    criterion_9(&mut report);
    criterion_10(&mut report);
    let failed: Vec<&str> = report
        .lines
        .iter()
        .filter(|l| l.1 == Outcome::Fail)
        .map(|l| l.0.as_str())
        .collect();
    let known = report.lines.iter().filter(|l| l.1 == Outcome::KnownFail).count();
    println!(
        "acceptance: {} lines, {} failed, {} known failures, {:.1?}",
        report.lines.len(),
        failed.len(),
        known,
        start.elapsed()
    );
    if !failed.is_empty() {
        eprintln!("unexpected failures: {failed:?}");
        std::process::exit(1);
    }
}
