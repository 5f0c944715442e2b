//! Consistency checks on a single diagram, each reporting a witness on failure.

use std::collections::BTreeMap;
use std::sync::Arc as Shared;

use crate::algebra::{builtin_dyads, Dyad};
use crate::complex::{
    build_class1_complex, build_default, build_reduced_complex, build_unreduced_complex, chain_dims, remark_isomorphism,
    ChainComplex, ComplexError, EdgeKind, Variant,
};
use crate::diagram::{candidate_moves, DiagramRP2, Endpoint, FaceRef, Move, MoveResult, State};
use crate::homology::{chain_euler, homology_dims, poincare, poincare_any, HomologyError};
use crate::poly::{LaurentQ, PoincarePoly};
use crate::skein::{bracket, check_euler, expected_euler, total_bracket};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DSquared,
    MarkedPoint,
    Reidemeister,
    Euler,
    Parity,
    DirectSum,
    Unreduced,
    Bracket,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::DSquared,
        Check::MarkedPoint,
        Check::Reidemeister,
        Check::Euler,
        Check::Parity,
        Check::DirectSum,
        Check::Unreduced,
        Check::Bracket,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::DSquared => "d2",
            Check::MarkedPoint => "marked-point",
            Check::Reidemeister => "reidemeister",
            Check::Euler => "euler",
            Check::Parity => "parity",
            Check::DirectSum => "direct-sum",
            Check::Unreduced => "unreduced",
            Check::Bracket => "bracket",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub check: Check,
    pub passed: bool,
    /// Summary on success, witness on failure.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub dyads: Vec<Dyad>,
    pub checks: Vec<Check>,
    /// Moves whose result has more crossings than this are skipped.
    pub max_move_crossings: usize,
    /// Successful moves tried per move family.
    pub moves_per_family: usize,
    /// The chain isomorphism between marked points is built up to this many crossings.
    pub max_remark_crossings: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            dyads: builtin_dyads(),
            checks: Check::ALL.to_vec(),
            max_move_crossings: 7,
            moves_per_family: 2,
            max_remark_crossings: 5,
        }
    }
}

fn ok(check: Check, detail: impl Into<String>) -> Outcome {
    Outcome { check, passed: true, detail: detail.into() }
}

fn fail(check: Check, detail: impl Into<String>) -> Outcome {
    Outcome { check, passed: false, detail: detail.into() }
}

/// Runs the selected checks. Checks that do not apply to the diagram's
/// class pass with a note.
pub fn verify(d: &DiagramRP2, opts: &Options) -> Vec<Outcome> {
    if let Err(e) = d.check_valid() {
        return opts.checks.iter().map(|&c| fail(c, format!("invalid diagram: {e}"))).collect();
    }
    let class1 = d.k() % 2 == 1;
    opts.checks
        .iter()
        .map(|&check| {
            let r = match (check, class1) {
                (Check::DSquared, _) => check_d_squared(d, opts),
                (Check::Reidemeister, _) => check_reidemeister(d, opts),
                (Check::Parity, _) => check_parity(d),
                (Check::DirectSum, _) => check_direct_sum(d),
                (Check::MarkedPoint, false) => check_marked_point(d, opts),
                (Check::Euler, false) => check_euler_identity(d, opts),
                (Check::Unreduced, false) => check_unreduced(d, opts),
                (Check::Bracket, false) => check_bracket(d),
                (_, true) => Ok(ok(check, "not defined for class-1 links")),
            };
            r.unwrap_or_else(|e| fail(check, format!("error: {e}")))
        })
        .collect()
}

/// Describes a nonzero entry of `d∘d` by the square of the cube it lives on.
pub fn square_witness(d: &DiagramRP2, c: &ChainComplex, (l, g, t): (usize, usize, u32)) -> String {
    let src = c.levels[l][g];
    let dst = c.levels[l + 2][t as usize];
    let flipped: Vec<usize> = (0..c.n).filter(|&i| (src.state ^ dst.state) >> i & 1 == 1).collect();
    let edges: Vec<String> = flipped
        .iter()
        .map(|&i| format!("x{i}: {}", c.edge(d, src.state, i).kind.name()))
        .collect();
    format!(
        "{} [{}] -> {} [{}], square at crossings {:?} ({})",
        c.state_string(src.state),
        c.gen_label(&src),
        c.state_string(dst.state),
        c.gen_label(&dst),
        flipped,
        edges.join(", ")
    )
}

fn variants(d: &DiagramRP2) -> &'static [Variant] {
    if d.k() % 2 == 1 {
        &[Variant::Class1]
    } else {
        &[Variant::Reduced, Variant::Unreduced]
    }
}

fn check_d_squared(d: &DiagramRP2, opts: &Options) -> Result<Outcome, ComplexError> {
    let mut count = 0;
    for a in &opts.dyads {
        for &v in variants(d) {
            let c = build_default(d, a, v)?;
            if let Err(w) = c.verify_d_squared() {
                return Ok(fail(Check::DSquared, format!("{} {v:?}: {}", a.name, square_witness(d, &c, w))));
            }
            count += 1;
        }
    }
    Ok(ok(Check::DSquared, format!("{count} complexes")))
}

/// Arcs following `a` across a crossing, in either direction.
fn neighbours(d: &DiagramRP2, a: usize) -> Vec<usize> {
    let at = d.incidence();
    let Some((x, y)) = d.arc_ends(a) else { return vec![] };
    [x, y]
        .into_iter()
        .filter(|e| matches!(e, Endpoint::Slot { .. }))
        .map(|e| at[d.key(d.straight_through(e))].0)
        .filter(|&b| b != a)
        .collect()
}

fn check_marked_point(d: &DiagramRP2, opts: &Options) -> Result<Outcome, ComplexError> {
    let p = d.base_face()?;
    let arcs = d.arcs.len();
    let mut isos = 0;
    for a in &opts.dyads {
        let reference = poincare(&build_reduced_complex(d, a, p, 0)?)?;
        for m in 1..arcs {
            let h = poincare(&build_reduced_complex(d, a, p, m)?)?;
            if h != reference {
                return Ok(fail(Check::MarkedPoint, format!("{}: M=0 gives {reference}, M={m} gives {h}", a.name)));
            }
        }
        if d.n() <= opts.max_remark_crossings {
            for m in 0..arcs {
                for m2 in neighbours(d, m) {
                    let (c1, c2, phi) = remark_isomorphism(d, a, p, m, m2)?;
                    if !phi.is_isomorphism() || !phi.commutes(&c1, &c2) {
                        return Ok(fail(
                            Check::MarkedPoint,
                            format!("{}: the change of marked point {m} -> {m2} is not a chain isomorphism", a.name),
                        ));
                    }
                    isos += 1;
                }
            }
        }
    }
    Ok(ok(Check::MarkedPoint, format!("{arcs} marked arcs, {isos} chain isomorphisms")))
}

/// Applies up to `per_family` moves of each family that succeed and keep the
/// result within `max_crossings`.
pub fn reidemeister_pairs(d: &DiagramRP2, per_family: usize, max_crossings: usize) -> Vec<(Move, MoveResult)> {
    let mut used: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for mv in candidate_moves(d) {
        let n = used.entry(mv.family()).or_insert(0);
        if *n >= per_family {
            continue;
        }
        if let Ok(r) = d.apply_reidemeister(mv) {
            if r.diagram.n() <= max_crossings {
                *n += 1;
                out.push((mv, r));
            }
        }
    }
    out
}

/// Outcome of comparing homology across one move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveComparison {
    Compared { before: PoincarePoly, after: PoincarePoly },
    /// The class-1 basepoint face is destroyed by the move.
    FaceNotCarried,
    /// One side has `d∘d ≠ 0`, so there is no homology to compare.
    NotAComplex,
}

/// Homology of the moved diagram next to the original's, for one dyad. For
/// class 1 the basepoint face is carried across the move.
pub fn move_homologies(d: &DiagramRP2, r: &MoveResult, a: &Dyad) -> Result<MoveComparison, ComplexError> {
    let (before, after) = if d.k() % 2 == 1 {
        let p = FaceRef(d.basepoint_face.unwrap_or(0));
        let Some(p2) = r.transport_face(d, p) else { return Ok(MoveComparison::FaceNotCarried) };
        (poincare_any(&build_class1_complex(d, a, p)?), poincare_any(&build_class1_complex(&r.diagram, a, p2)?))
    } else {
        (poincare(&build_default(d, a, Variant::Reduced)?), poincare(&build_default(&r.diagram, a, Variant::Reduced)?))
    };
    match (before, after) {
        (Ok(before), Ok(after)) => Ok(MoveComparison::Compared { before, after }),
        (Err(HomologyError::NotAComplex { .. }), _) | (_, Err(HomologyError::NotAComplex { .. })) => {
            Ok(MoveComparison::NotAComplex)
        }
        (Err(e), _) | (_, Err(e)) => Err(e.into()),
    }
}

fn check_reidemeister(d: &DiagramRP2, opts: &Options) -> Result<Outcome, ComplexError> {
    let pairs = reidemeister_pairs(d, opts.moves_per_family, opts.max_move_crossings);
    let (mut compared, mut skipped) = (0, 0);
    for (mv, r) in &pairs {
        for a in &opts.dyads {
            match move_homologies(d, r, a)? {
                MoveComparison::Compared { before, after } if before != after => {
                    return Ok(fail(Check::Reidemeister, format!("{mv:?} with {}: {before} became {after}", a.name)));
                }
                MoveComparison::Compared { .. } => compared += 1,
                _ => skipped += 1,
            }
        }
    }
    Ok(ok(Check::Reidemeister, format!("{} moves, {compared} comparisons, {skipped} skipped", pairs.len())))
}

fn check_euler_identity(d: &DiagramRP2, opts: &Options) -> Result<Outcome, ComplexError> {
    for a in &opts.dyads {
        if !check_euler(d, a)? {
            let c = build_default(d, a, Variant::Reduced)?;
            let chi = poincare(&c)?.at_t_minus_one();
            return Ok(fail(Check::Euler, format!("{}: homology gives {chi}, skein gives {}", a.name, expected_euler(d, a)?)));
        }
    }
    Ok(ok(Check::Euler, format!("{} dyads", opts.dyads.len())))
}

/// Every cube edge: on null-homologous diagrams the encircling parity flips
/// exactly on 1→1 edges and no circle passes the crosscap oddly; on class-1
/// diagrams there are no 1→1 edges and exactly one odd circle per state.
fn check_parity(d: &DiagramRP2) -> Result<Outcome, ComplexError> {
    let n = d.n();
    if n > 24 {
        return Err(ComplexError::TooManyCrossings(n));
    }
    let class1 = d.k() % 2 == 1;
    let fc = Shared::new(d.face_complex());
    let p = if class1 { None } else { Some(d.base_face()?) };
    let smoothings: Vec<_> = (0..1u64 << n).map(|m| d.resolve_with(&State::from_mask(m, n), fc.clone())).collect();
    let bits = |m: u64| (0..n).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
    for (m, sm) in smoothings.iter().enumerate() {
        let odd = sm.circles.iter().filter(|c| c.crosscap_parity == 1).count();
        if odd != class1 as usize {
            return Ok(fail(Check::Parity, format!("state {} has {odd} circles of odd crosscap parity", bits(m as u64))));
        }
    }
    let mut edges = 0;
    let mut twists = 0;
    for m in 0..1u64 << n {
        for i in (0..n).filter(|&i| m >> i & 1 == 0) {
            let to = m | 1 << i;
            let e = crate::complex::classify_edge(d, &smoothings[m as usize], &smoothings[to as usize], i);
            let twist = matches!(e.kind, EdgeKind::OneToOne { .. });
            edges += 1;
            twists += twist as usize;
            if class1 {
                if twist {
                    return Ok(fail(Check::Parity, format!("1->1 edge {} -> {} in a class-1 diagram", bits(m), bits(to))));
                }
                continue;
            }
            let p = p.expect("class 0");
            let flips = smoothings[m as usize].encircling_number(p)? != smoothings[to as usize].encircling_number(p)?;
            if flips != twist {
                return Ok(fail(
                    Check::Parity,
                    format!("edge {} -> {} ({}): encircling parity flips = {flips}", bits(m), bits(to), e.kind.name()),
                ));
            }
        }
    }
    Ok(ok(Check::Parity, format!("{edges} edges, {twists} of type 1->1")))
}

/// `Kh^{aps} = Kh^{a0} ⊕ Kh^{a1}` in every bidegree.
fn check_direct_sum(d: &DiagramRP2) -> Result<Outcome, ComplexError> {
    let variant = if d.k() % 2 == 1 { Variant::Class1 } else { Variant::Reduced };
    let build = |name: &str| build_default(d, &Dyad::builtin(name).expect("builtin"), variant);
    let complexes = [build("aps")?, build("a0")?, build("a1")?];
    let mut homologies = Vec::new();
    for c in &complexes {
        match homology_dims(c) {
            Ok(h) => homologies.push(h),
            Err(HomologyError::NotAComplex { .. }) => {
                // No homology; the chain groups must still split.
                let dims: Vec<BTreeMap<(i32, i32), usize>> =
                    complexes.iter().map(|c| chain_dims(c).into_iter().collect()).collect();
                let mut sum = dims[1].clone();
                for (k, v) in &dims[2] {
                    *sum.entry(*k).or_insert(0) += v;
                }
                return Ok(if sum == dims[0] {
                    ok(Check::DirectSum, "not a complex; chain groups split")
                } else {
                    fail(Check::DirectSum, "chain groups of aps differ from a0 + a1")
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let [aps, a0, a1]: [_; 3] = homologies.try_into().expect("three homologies");
    let mut sum = a0.clone();
    for (k, v) in &a1 {
        *sum.entry(*k).or_insert(0) += v;
    }
    if sum != aps {
        let bad = aps.keys().chain(sum.keys()).find(|k| aps.get(k) != sum.get(k)).expect("maps differ");
        return Ok(fail(
            Check::DirectSum,
            format!(
                "at (i, q) = {bad:?}: aps has {}, a0 + a1 has {}",
                aps.get(bad).copied().unwrap_or(0),
                sum.get(bad).copied().unwrap_or(0)
            ),
        ));
    }
    Ok(ok(Check::DirectSum, format!("{} bidegrees", aps.len())))
}

/// `χ(unreduced) = (q + q⁻¹)·χ(reduced)`, on homology and on chains.
fn check_unreduced(d: &DiagramRP2, opts: &Options) -> Result<Outcome, ComplexError> {
    let p = d.base_face()?;
    for a in &opts.dyads {
        let r = build_reduced_complex(d, a, p, d.marked_arc.unwrap_or(0))?;
        let u = build_unreduced_complex(d, a, p)?;
        let want = &LaurentQ::q_plus_q_inv() * &poincare(&r)?.at_t_minus_one();
        let got = poincare(&u)?.at_t_minus_one();
        if got != want || chain_euler(&u) != got {
            return Ok(fail(Check::Unreduced, format!("{}: unreduced χ = {got}, expected {want}", a.name)));
        }
    }
    Ok(ok(Check::Unreduced, format!("{} dyads", opts.dyads.len())))
}

/// `⟨L⟩₀ + ⟨L⟩₁ = ⟨L⟩`, and both brackets agree over every basepoint face in
/// the even region (and swap over the odd one).
fn check_bracket(d: &DiagramRP2) -> Result<Outcome, ComplexError> {
    let p = d.base_face()?;
    let b0 = bracket(d, p, 0)?;
    let b1 = bracket(d, p, 1)?;
    let total = total_bracket(d)?;
    if &b0 + &b1 != total {
        return Ok(fail(Check::Bracket, format!("⟨L⟩₀ + ⟨L⟩₁ = {}, ⟨L⟩ = {total}", &b0 + &b1)));
    }
    let faces = d.face_complex().face_count();
    for f in (0..faces).map(FaceRef) {
        let c0 = bracket(d, f, 0)?;
        let c1 = bracket(d, f, 1)?;
        let want = if d.region_parity(f)? == 0 { (&b0, &b1) } else { (&b1, &b0) };
        if (&c0, &c1) != want {
            return Ok(fail(Check::Bracket, format!("face {}: brackets {c0} / {c1}, face {}: {b0} / {b1}", f.0, p.0)));
        }
    }
    Ok(ok(Check::Bracket, format!("{faces} faces")))
}

/// `Kh^{α}(mirror L)` next to `Kh^{α*}(L)`, for inspection only.
pub fn mirror_observation(d: &DiagramRP2, a: &Dyad) -> Result<(PoincarePoly, PoincarePoly), ComplexError> {
    let m = d.mirror();
    let lhs = poincare(&build_default(&m, a, Variant::Reduced)?)?;
    let rhs = poincare(&build_default(d, &a.dual(), Variant::Reduced)?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::p1knot;

    #[test]
    fn p1knot_passes_everything() {
        let outcomes = verify(&p1knot(), &Options::default());
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.check.name(), o.detail);
        }
        assert_eq!(outcomes.len(), Check::ALL.len());
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
    }
}
