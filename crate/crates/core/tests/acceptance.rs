//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILING` are
//! reported but do not fail the run; every other criterion must pass.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rp3kh::algebra::{builtin_dyads, Dyad};
use rp3kh::complex::{build_class1_complex, build_default, ChainComplex, Variant};
use rp3kh::corpus::{corpus, lookup, Entry, Family, KNOT_PDS};
use rp3kh::diagram::{candidate_moves, from_pd, DiagramRP2, FaceRef};
use rp3kh::homology::poincare;
use rp3kh::poly::PoincarePoly;
use rp3kh::skein::{bracket, check_euler, total_bracket};
use rp3kh::verify::{move_homologies, reidemeister_pairs, verify, Check, MoveComparison, Options};

/// The class-1 construction is not a complex on some diagrams (see the
/// nested-curl regression test in `corpus_verify`).
const KNOWN_FAILING: &[u32] = &[11];

struct Report {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn null_homologous(c: &[Entry]) -> Vec<&Entry> {
    c.iter().filter(|e| e.family != Family::Class1).collect()
}

/// Runs one verify check over entries, collecting failing names.
fn check_over(entries: &[&Entry], check: Check) -> (usize, Vec<String>) {
    let opts = Options { checks: vec![check], ..Options::default() };
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let o = verify(&e.diagram, &opts).remove(0);
            (!o.passed).then(|| format!("{}: {}", e.name(), o.detail))
        })
        .collect();
    (entries.len(), failures)
}

fn summarize(n: usize, what: &str, failures: &[String]) -> String {
    if failures.is_empty() {
        format!("{n} {what}")
    } else {
        format!("{} of {n} {what} fail; first: {}", failures.len(), failures[0])
    }
}

fn golden(_: &[Entry]) -> Report {
    let d = lookup("p1knot").expect("p1knot bundled");
    let fixtures: BTreeMap<String, String> =
        serde_json::from_str(include_str!("fixtures/p1knot_golden.json")).expect("fixture parses");
    let mut mismatches = Vec::new();
    for a in builtin_dyads() {
        let want = PoincarePoly::parse(&fixtures[&a.name]).expect("golden parses");
        let got = poincare(&build_default(&d, &a, Variant::Reduced).unwrap()).unwrap();
        if got != want {
            mismatches.push(format!("{}: got {got}, want {want}", a.name));
        }
    }
    Report {
        id: 1,
        title: "golden polynomials of p1knot",
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() { "5 of 5 dyads".into() } else { mismatches.join("; ") },
    }
}

fn direct_sum(c: &[Entry]) -> Report {
    let all: Vec<&Entry> = c.iter().collect();
    let (n, failures) = check_over(&all, Check::DirectSum);
    Report { id: 2, title: "aps = a0 + a1 in every bidegree", passed: failures.is_empty(), detail: summarize(n, "diagrams", &failures) }
}

fn d_squared(c: &[Entry]) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut dyads = builtin_dyads();
    dyads.extend((0..50).map(|i| common::random_dyad(&mut rng, format!("random{i}"))));
    let entries = null_homologous(c);
    let failures: Vec<String> = entries
        .par_iter()
        .flat_map_iter(|e| {
            let mut out = Vec::new();
            for a in &dyads {
                for v in [Variant::Reduced, Variant::Unreduced] {
                    let cx = build_default(&e.diagram, a, v).unwrap();
                    if cx.verify_d_squared().is_err() {
                        out.push(format!("{} {} {v:?}", e.name(), a.name));
                    }
                }
            }
            out
        })
        .collect();
    let n = entries.len() * dyads.len() * 2;
    Report { id: 3, title: "d² = 0, built-in and 50 random dyads", passed: failures.is_empty(), detail: summarize(n, "complexes", &failures) }
}

fn euler(c: &[Entry]) -> Report {
    let entries = null_homologous(c);
    let dyads = builtin_dyads();
    let failures: Vec<String> = entries
        .par_iter()
        .flat_map_iter(|e| {
            dyads.iter().filter(|a| !check_euler(&e.diagram, a).unwrap()).map(|a| format!("{} {}", e.name(), a.name)).collect::<Vec<_>>()
        })
        .collect();
    Report {
        id: 4,
        title: "χ(Kh) = qdim(V₀)J₀ + qdim(V₁)J₁",
        passed: failures.is_empty(),
        detail: summarize(entries.len() * dyads.len(), "diagram-dyad pairs", &failures),
    }
}

fn brackets(c: &[Entry]) -> Report {
    let entries = null_homologous(c);
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let d = &e.diagram;
            let p = d.base_face().unwrap();
            let sum = &bracket(d, p, 0).unwrap() + &bracket(d, p, 1).unwrap();
            (sum != total_bracket(d).unwrap()).then(|| e.name().to_string())
        })
        .collect();
    Report { id: 5, title: "⟨L⟩₀ + ⟨L⟩₁ = ⟨L⟩", passed: failures.is_empty(), detail: summarize(entries.len(), "diagrams", &failures) }
}

fn marked_point(c: &[Entry]) -> Report {
    let (n, failures) = check_over(&null_homologous(c), Check::MarkedPoint);
    Report {
        id: 6,
        title: "marked-point independence and chain isomorphisms (≤ 5 crossings)",
        passed: failures.is_empty(),
        detail: summarize(n, "diagrams", &failures),
    }
}

fn reidemeister(c: &[Entry]) -> Report {
    let dyads = [Dyad::builtin("aps").unwrap(), Dyad::builtin("hf").unwrap()];
    let mut sources: Vec<DiagramRP2> =
        null_homologous(c).iter().filter(|e| e.diagram.n() <= 4).map(|e| e.diagram.clone()).collect();
    // R2 images carry triangles, so R3 gets exercised.
    let p1 = lookup("p1knot").unwrap();
    sources.extend(
        candidate_moves(&p1)
            .into_iter()
            .filter(|m| m.family() == "R2")
            .filter_map(|m| p1.apply_reidemeister(m).ok().map(|r| r.diagram))
            .take(6),
    );
    let results: Vec<(&'static str, Option<String>)> = sources
        .par_iter()
        .flat_map_iter(|d| {
            let dyads = &dyads;
            reidemeister_pairs(d, 1, 6).into_iter().map(move |(mv, r)| {
                for a in dyads {
                    match move_homologies(d, &r, a).unwrap() {
                        MoveComparison::Compared { before, after } if before != after => {
                            return (mv.family(), Some(format!("{mv:?} on {} with {}: {before} vs {after}", d.name, a.name)));
                        }
                        MoveComparison::Compared { .. } => {}
                        other => return (mv.family(), Some(format!("{mv:?} on {}: {other:?}", d.name))),
                    }
                }
                (mv.family(), None)
            })
        })
        .collect();
    let families: BTreeSet<&str> = results.iter().map(|(f, _)| *f).collect();
    let failures: Vec<String> = results.iter().filter_map(|(_, f)| f.clone()).collect();
    let passed = failures.is_empty() && results.len() >= 20 && families.len() == 5;
    let fams: Vec<&str> = families.into_iter().collect();
    Report {
        id: 7,
        title: "Reidemeister invariance for aps and hf",
        passed,
        detail: format!("{}; families {}", summarize(results.len(), "move pairs", &failures), fams.join(" ")),
    }
}

fn parity(c: &[Entry]) -> Report {
    let all: Vec<&Entry> = c.iter().collect();
    let opts = Options { checks: vec![Check::Parity], ..Options::default() };
    let outcomes: Vec<(String, rp3kh::verify::Outcome)> =
        all.par_iter().map(|e| (e.name().to_string(), verify(&e.diagram, &opts).remove(0))).collect();
    let failures: Vec<String> = outcomes.iter().filter(|(_, o)| !o.passed).map(|(n, o)| format!("{n}: {}", o.detail)).collect();
    let twists: usize = outcomes
        .iter()
        .filter_map(|(_, o)| o.detail.split(", ").nth(1)?.split(' ').next()?.parse::<usize>().ok())
        .sum();
    Report {
        id: 8,
        title: "e flips exactly on 1→1 edges; smoothings of null-homologous links are even",
        passed: failures.is_empty() && twists > 0,
        detail: format!("{}; {twists} edges of type 1→1 seen", summarize(all.len(), "diagrams", &failures)),
    }
}

fn unreduced(c: &[Entry]) -> Report {
    let (n, failures) = check_over(&null_homologous(c), Check::Unreduced);
    Report { id: 9, title: "χ(unreduced) = (q + q⁻¹)·χ(reduced)", passed: failures.is_empty(), detail: summarize(n, "diagrams", &failures) }
}

fn affine(_: &[Entry]) -> Report {
    let a0 = Dyad::builtin("a0").unwrap();
    let mut failures = Vec::new();
    let mut trefoil_total = 0;
    for (name, pd) in KNOT_PDS {
        for mirror in [false, true] {
            let mut d = from_pd(name, pd).unwrap();
            if mirror {
                d = d.mirror();
            }
            let oracle = common::as_poly(&common::reduced_khovanov(pd, mirror));
            let ours = poincare(&build_default(&d, &a0, Variant::Reduced).unwrap()).unwrap();
            if *name == "3_1" {
                trefoil_total = ours.total();
            }
            if ours != oracle {
                failures.push(format!("{name} mirror={mirror}: {ours} vs {oracle}"));
            }
        }
    }
    let unknot = poincare(&build_default(&lookup("unknot").unwrap(), &a0, Variant::Reduced).unwrap()).unwrap();
    if unknot != PoincarePoly::from_terms([(0, 0, 1)]) {
        failures.push(format!("unknot: {unknot}"));
    }
    Report {
        id: 10,
        title: "a0 equals ordinary reduced Khovanov homology on affine knots",
        passed: failures.is_empty() && trefoil_total == 3,
        detail: format!("{}; trefoil total rank {trefoil_total}", summarize(2 * KNOT_PDS.len() + 1, "knots", &failures)),
    }
}

fn class_one(c: &[Entry]) -> Report {
    let entries: Vec<&Entry> = c.iter().filter(|e| e.family == Family::Class1 && e.diagram.n() <= 5).collect();
    let dyads = builtin_dyads();
    let mut d2_failures = Vec::new();
    for e in &entries {
        for a in &dyads {
            let cx: ChainComplex = build_class1_complex(&e.diagram, a, FaceRef(0)).unwrap();
            if let Err(w) = cx.verify_d_squared() {
                d2_failures.push(format!("{} {}: {}", e.name(), a.name, rp3kh::verify::square_witness(&e.diagram, &cx, w)));
            }
        }
    }
    let (_, twist_failures) = check_over(&entries, Check::Parity);
    let (mut compared, mut skipped, mut moved) = (0, 0, Vec::new());
    for e in &entries {
        for (mv, r) in reidemeister_pairs(&e.diagram, 2, 5) {
            for a in &dyads {
                match move_homologies(&e.diagram, &r, a).unwrap() {
                    MoveComparison::Compared { before, after } => {
                        compared += 1;
                        if before != after {
                            moved.push(format!("{mv:?} on {} with {}", e.name(), a.name));
                        }
                    }
                    _ => skipped += 1,
                }
            }
        }
    }
    let passed = d2_failures.is_empty() && twist_failures.is_empty() && moved.is_empty() && compared > 0;
    Report {
        id: 11,
        title: "class-1 complex: d² = 0, no 1→1 edges, invariance away from P",
        passed,
        detail: format!(
            "d²: {}; 1→1: {}; moves: {} ({skipped} skipped, no complex or P not carried)",
            summarize(entries.len() * dyads.len(), "complexes", &d2_failures),
            summarize(entries.len(), "diagrams", &twist_failures),
            summarize(compared, "comparisons", &moved),
        ),
    }
}

fn main() {
    let c = corpus();
    let criteria: [fn(&[Entry]) -> Report; 11] =
        [golden, direct_sum, d_squared, euler, brackets, marked_point, reidemeister, parity, unreduced, affine, class_one];
    let mut unexpected = 0;
    for f in criteria {
        let start = Instant::now();
        let r = f(&c);
        let known = KNOWN_FAILING.contains(&r.id);
        println!(
            "{} {:>2} {} ({:.1}s): {}{}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            start.elapsed().as_secs_f64(),
            r.detail,
            if !r.passed && known { " [known]" } else { "" }
        );
        if !r.passed && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
