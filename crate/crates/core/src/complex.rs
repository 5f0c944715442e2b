//! Cube of resolutions and the reduced, unreduced and class-1 chain complexes.
//!
//! Generators of a state are indexed in mixed radix: the basis index of the
//! distinguished factor `V_e` is most significant, followed by one bit per
//! free circle (0 = `v₊`, 1 = `v₋`) in tensor order. States inside a
//! homological level are listed in lexicographic order of their bit strings.

use std::collections::HashMap;
use std::sync::Arc as Shared;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{frobenius_delta, frobenius_m, trivial_module_m, v_qdeg, Dyad, V_MINUS, V_PLUS};
use crate::diagram::{DiagramError, DiagramRP2, Endpoint, FaceRef, Smoothing, State};

/// Which chain complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `V_e` on the marked circle, `V` on the others.
    Reduced,
    /// `V_e` as a background factor, `V` on every circle.
    Unreduced,
    /// For links of class 1: `V_e` on the circle that passes the crosscap.
    Class1,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reduced" => Ok(Variant::Reduced),
            "unreduced" => Ok(Variant::Unreduced),
            "class1" => Ok(Variant::Class1),
            _ => Err(format!("unknown variant `{s}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid dyad: {}", .0.join("; "))]
    Dyad(Vec<String>),
    #[error("marked arc {0} does not exist")]
    MarkedArc(usize),
    #[error("{0} crossings is more than this implementation handles")]
    TooManyCrossings(usize),
    #[error("edge {from:?} -> {to:?} at crossing {crossing}: encircling parity {e_from} -> {e_to} contradicts a {kind} bifurcation")]
    ParityMismatch { from: State, to: State, crossing: usize, kind: &'static str, e_from: u8, e_to: u8 },
    #[error("state {0:?} has a circle passing the crosscap an odd number of times")]
    OddCircle(State),
    #[error("edge {from:?} -> {to:?} is a 1->1 bifurcation in a class-1 diagram")]
    TwistInClassOne { from: State, to: State },
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}

/// How an edge of the cube changes the circles. Indices are circle ids in
/// the source (`from`) and target (`to`) smoothings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Merge { from: [usize; 2], to: usize },
    Split { from: usize, to: [usize; 2] },
    OneToOne { from: usize, to: usize },
}

impl EdgeKind {
    pub fn name(&self) -> &'static str {
        match self {
            EdgeKind::Merge { .. } => "2->1",
            EdgeKind::Split { .. } => "1->2",
            EdgeKind::OneToOne { .. } => "1->1",
        }
    }
}

/// An edge of the cube with its bifurcation type and the matching of the
/// circles it does not touch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub crossing: usize,
    pub kind: EdgeKind,
    /// `(source circle, target circle)` for every untouched circle.
    pub carry: Vec<(usize, usize)>,
}

/// Classifies the edge between two smoothings that differ at `crossing`.
pub fn classify_edge(d: &DiagramRP2, sm: &Smoothing, sm2: &Smoothing, crossing: usize) -> CubeEdge {
    let at = d.incidence();
    let arcs: Vec<usize> = (0..4).map(|s| at[d.key(Endpoint::slot(crossing, s))].0).collect();
    let involved = |x: &Smoothing| {
        let mut ids: Vec<usize> = arcs.iter().map(|&a| x.circle_of(a)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    let (src, dst) = (involved(sm), involved(sm2));
    let kind = match (src.as_slice(), dst.as_slice()) {
        ([a, b], [t]) => EdgeKind::Merge { from: [*a, *b], to: *t },
        ([a], [t1, t2]) => EdgeKind::Split { from: *a, to: [*t1, *t2] },
        ([a], [t]) => EdgeKind::OneToOne { from: *a, to: *t },
        _ => unreachable!("a single crossing change touches at most two circles on one side"),
    };
    let carry = (0..sm.k())
        .filter(|c| !src.contains(c))
        .map(|c| (c, sm2.circle_of(sm.circles[c].min_arc())))
        .collect();
    CubeEdge { crossing, kind, carry }
}

/// Per-state data of a complex.
#[derive(Clone, Debug)]
pub struct StateData {
    pub smoothing: Smoothing,
    /// Encircling parity `e_s(P)`.
    pub e: u8,
    /// Circle carrying `V_e` (none in the unreduced complex).
    pub dist_circle: Option<usize>,
    /// Circles carrying `V`, in tensor order.
    pub free: Vec<usize>,
    /// Per circle: whether it encircles `P` (filled for class 1 only).
    pub encircles: Vec<bool>,
    pub level: usize,
    pub offset: usize,
    pub dim: usize,
}

/// One basis vector of a chain group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub state: u64,
    /// Basis index in `V_e`.
    pub dist: usize,
    /// Free-circle bits, most significant = first free circle.
    pub free: u64,
    pub q: i32,
}

/// A bigraded chain complex over F₂ with sparse differentials.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub variant: Variant,
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub face: FaceRef,
    pub marked_arc: Option<usize>,
    pub dyad: Dyad,
    pub states: Vec<StateData>,
    /// `levels[l]`: generators of states with `l` ones (homological degree `l - n_-`).
    pub levels: Vec<Vec<Generator>>,
    /// `diff[l][g]`: sorted targets in level `l+1` of generator `g` of level `l`.
    pub diff: Vec<Vec<Vec<u32>>>,
    /// Whether every differential entry preserves the quantum degree.
    pub q_graded: bool,
}

/// Lexicographic key of a state: crossing 0 is the most significant letter.
fn lex_key(mask: u64, n: usize) -> u64 {
    (0..n).fold(0, |k, i| k | (mask >> i & 1) << (n - 1 - i))
}

fn free_bit(free: u64, pos: usize, nfree: usize) -> usize {
    (free >> (nfree - 1 - pos) & 1) as usize
}

impl ChainComplex {
    pub fn homological_degree(&self, level: usize) -> i32 {
        level as i32 - self.n_minus as i32
    }

    pub fn total_dim(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Human-readable name of a generator, e.g. `b⊗v-` or `1`.
    pub fn gen_label(&self, g: &Generator) -> String {
        let st = &self.states[g.state as usize];
        let mut parts = vec![self.dyad.space(st.e).gens[g.dist].0.clone()];
        for p in 0..st.free.len() {
            parts.push(if free_bit(g.free, p, st.free.len()) == 0 { "v+" } else { "v-" }.to_string());
        }
        parts.join("⊗")
    }

    /// Checks `d∘d = 0`; on failure returns `(level, source generator, target)`.
    pub fn verify_d_squared(&self) -> Result<(), (usize, usize, u32)> {
        for l in 0..self.diff.len().saturating_sub(1) {
            for (g, targets) in self.diff[l].iter().enumerate() {
                let mut acc: Vec<u32> = targets.iter().flat_map(|&t| self.diff[l + 1][t as usize].iter().copied()).collect();
                acc.sort_unstable();
                let mut i = 0;
                while i < acc.len() {
                    let mut j = i;
                    while j < acc.len() && acc[j] == acc[i] {
                        j += 1;
                    }
                    if (j - i) % 2 == 1 {
                        return Err((l, g, acc[i]));
                    }
                    i = j;
                }
            }
        }
        Ok(())
    }

    /// Flips one matrix entry. Used to build negative controls.
    pub fn toggle_entry(&mut self, level: usize, src: usize, dst: u32) {
        let col = &mut self.diff[level][src];
        match col.binary_search(&dst) {
            Ok(i) => {
                col.remove(i);
            }
            Err(i) => col.insert(i, dst),
        }
    }

    /// Bit string of a state, crossing 0 first.
    pub fn state_string(&self, mask: u64) -> String {
        (0..self.n).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Debug serialization: generators per level and nonzero differential entries.
    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<_> = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, gens)| {
                json!({
                    "i": self.homological_degree(l),
                    "generators": gens.iter().map(|g| json!({
                        "state": self.state_string(g.state),
                        "label": self.gen_label(g),
                        "q": g.q,
                    })).collect::<Vec<_>>(),
                    "differential": self.diff.get(l).map(|d| d.iter().enumerate()
                        .flat_map(|(s, ts)| ts.iter().map(move |&t| [s as u32, t]))
                        .collect::<Vec<_>>()).unwrap_or_default(),
                })
            })
            .collect();
        json!({
            "variant": format!("{:?}", self.variant),
            "dyad": self.dyad.name,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "face": self.face.0,
            "marked_arc": self.marked_arc,
            "levels": levels,
        })
    }

    /// The cube edge between two states (the second has one more 1).
    pub fn edge(&self, d: &DiagramRP2, from: u64, crossing: usize) -> CubeEdge {
        let to = from | 1 << crossing;
        classify_edge(d, &self.states[from as usize].smoothing, &self.states[to as usize].smoothing, crossing)
    }
}

/// Builds the reduced complex with basepoint face `p` and marked arc `m`.
pub fn build_reduced_complex(d: &DiagramRP2, a: &Dyad, p: FaceRef, m: usize) -> Result<ChainComplex, ComplexError> {
    build(d, a, p, Some(m), Variant::Reduced)
}

pub fn build_unreduced_complex(d: &DiagramRP2, a: &Dyad, p: FaceRef) -> Result<ChainComplex, ComplexError> {
    build(d, a, p, None, Variant::Unreduced)
}

pub fn build_class1_complex(d: &DiagramRP2, a: &Dyad, p: FaceRef) -> Result<ChainComplex, ComplexError> {
    build(d, a, p, None, Variant::Class1)
}

/// Builds a complex with the diagram's own defaults: basepoint face from the
/// file or the canonical one (face 0 for class 1), marked arc from the file or arc 0.
pub fn build_default(d: &DiagramRP2, a: &Dyad, variant: Variant) -> Result<ChainComplex, ComplexError> {
    let p = match (variant, d.basepoint_face) {
        (Variant::Class1, Some(f)) => FaceRef(f),
        (Variant::Class1, None) => FaceRef(0),
        _ => d.base_face()?,
    };
    match variant {
        Variant::Reduced => build_reduced_complex(d, a, p, d.marked_arc.unwrap_or(0)),
        Variant::Unreduced => build_unreduced_complex(d, a, p),
        Variant::Class1 => build_class1_complex(d, a, p),
    }
}

fn build(d: &DiagramRP2, a: &Dyad, p: FaceRef, m: Option<usize>, variant: Variant) -> Result<ChainComplex, ComplexError> {
    let problems = a.validate();
    if !problems.is_empty() {
        return Err(ComplexError::Dyad(problems));
    }
    match variant {
        Variant::Class1 => {
            d.check_valid()?;
            if d.k() % 2 == 0 {
                return Err(DiagramError::NotClassOne.into());
            }
        }
        _ => d.check_null_homologous()?,
    }
    let n = d.n();
    if n > 24 {
        return Err(ComplexError::TooManyCrossings(n));
    }
    if let Some(m) = m {
        if m >= d.arcs.len() {
            return Err(ComplexError::MarkedArc(m));
        }
    }
    let (n_plus, n_minus) = d.crossing_signs().map_err(DiagramError::from)?;
    let fc = Shared::new(d.face_complex());
    if p.0 >= fc.face_count() {
        return Err(DiagramError::NoSuchFace(p.0).into());
    }

    let states: Vec<StateData> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let sm = d.resolve_with(&State::from_mask(mask, n), fc.clone());
            let (e, dist_circle, encircles) = match variant {
                Variant::Class1 => {
                    let special = sm.circles.iter().position(|c| c.crosscap_parity == 1);
                    let enc = (0..sm.k())
                        .map(|c| sm.circles[c].crosscap_parity == 0 && sm.encircles(c, p).unwrap_or(false))
                        .collect::<Vec<_>>();
                    let e = enc.iter().fold(0u8, |x, &b| x ^ b as u8);
                    (e, special, enc)
                }
                _ => {
                    if sm.circles.iter().any(|c| c.crosscap_parity != 0) {
                        return Err(ComplexError::OddCircle(sm.state.clone()));
                    }
                    let e = sm.encircling_number(p)?;
                    (e, m.map(|a| sm.circle_of(a)), Vec::new())
                }
            };
            let free: Vec<usize> = (0..sm.k()).filter(|&c| Some(c) != dist_circle).collect();
            let dim = a.space(e).dim() << free.len();
            Ok(StateData { smoothing: sm, e, dist_circle, free, encircles, level: 0, offset: 0, dim })
        })
        .collect::<Result<_, ComplexError>>()?;
    let mut states = states;

    // Lay out levels.
    let mut by_level: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 0..1u64 << n {
        by_level[mask.count_ones() as usize].push(mask);
    }
    let mut levels = Vec::with_capacity(n + 1);
    for (l, masks) in by_level.iter_mut().enumerate() {
        masks.sort_by_key(|&s| lex_key(s, n));
        let mut gens = Vec::new();
        for &mask in masks.iter() {
            let st = &mut states[mask as usize];
            st.level = l;
            st.offset = gens.len();
            let space = a.space(st.e);
            let nf = st.free.len();
            let shift = l as i32 + n_plus as i32 - 2 * n_minus as i32;
            for dist in 0..space.dim() {
                for free in 0..1u64 << nf {
                    let fq: i32 = (0..nf).map(|p| v_qdeg(free_bit(free, p, nf))).sum();
                    gens.push(Generator { state: mask, dist, free, q: space.qdeg(dist) + fq + shift });
                }
            }
        }
        levels.push(gens);
    }

    // Differentials.
    let mut diff = Vec::with_capacity(n);
    for l in 0..n {
        let per_state: Vec<(usize, Vec<Vec<u32>>)> = by_level[l]
            .par_iter()
            .map(|&mask| state_differential(d, a, variant, &states, mask))
            .collect::<Result<_, _>>()?;
        let mut block = vec![Vec::new(); levels[l].len()];
        for (offset, cols) in per_state {
            for (i, col) in cols.into_iter().enumerate() {
                block[offset + i] = col;
            }
        }
        diff.push(block);
    }
    let q_graded = diff.iter().enumerate().all(|(l, block)| {
        block.iter().enumerate().all(|(g, ts)| ts.iter().all(|&t| levels[l + 1][t as usize].q == levels[l][g].q))
    });
    Ok(ChainComplex { variant, n, n_plus, n_minus, face: p, marked_arc: m, dyad: a.clone(), states, levels, diff, q_graded })
}

/// Columns of the differential for every generator of one state.
fn state_differential(
    d: &DiagramRP2,
    a: &Dyad,
    variant: Variant,
    states: &[StateData],
    mask: u64,
) -> Result<(usize, Vec<Vec<u32>>), ComplexError> {
    let src = &states[mask as usize];
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); src.dim];
    for c in 0..d.n() {
        if mask >> c & 1 == 1 {
            continue;
        }
        let to = mask | 1 << c;
        let dst = &states[to as usize];
        let edge = classify_edge(d, &src.smoothing, &dst.smoothing, c);
        let twisted = match edge.kind {
            EdgeKind::OneToOne { .. } => {
                if variant == Variant::Class1 {
                    return Err(ComplexError::TwistInClassOne { from: src.smoothing.state.clone(), to: dst.smoothing.state.clone() });
                }
                true
            }
            EdgeKind::Merge { from: [x, y], .. } if variant == Variant::Class1 => {
                let other = if Some(x) == src.dist_circle { y } else { x };
                (Some(x) == src.dist_circle || Some(y) == src.dist_circle) && src.encircles[other]
            }
            EdgeKind::Split { from, to: [t1, t2] } if variant == Variant::Class1 && Some(from) == src.dist_circle => {
                let new = if Some(t1) == dst.dist_circle { t2 } else { t1 };
                dst.encircles[new]
            }
            _ => false,
        };
        let expected = if twisted { 1 - src.e } else { src.e };
        if dst.e != expected {
            return Err(ComplexError::ParityMismatch {
                from: src.smoothing.state.clone(),
                to: dst.smoothing.state.clone(),
                crossing: c,
                kind: edge.kind.name(),
                e_from: src.e,
                e_to: dst.e,
            });
        }
        let nfs = src.free.len();
        let nft = dst.free.len();
        let mut val = vec![0usize; src.smoothing.k()];
        let mut base = vec![0usize; dst.smoothing.k()];
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for (gi, col) in cols.iter_mut().enumerate() {
            let dist = gi >> nfs;
            let free = (gi as u64) & ((1u64 << nfs) - 1);
            for (p, &circ) in src.free.iter().enumerate() {
                val[circ] = free_bit(free, p, nfs);
            }
            for &(cs, ct) in &edge.carry {
                base[ct] = val[cs];
            }
            out.clear();
            edge_images(a, src, dst, &edge.kind, twisted, dist, &val, &mut base, &mut out);
            for (y, b) in &out {
                let mut f = 0u64;
                for (p, &circ) in dst.free.iter().enumerate() {
                    f |= (b[circ] as u64) << (nft - 1 - p);
                }
                col.push((dst.offset + (y << nft) + f as usize) as u32);
            }
        }
    }
    for col in &mut cols {
        col.sort_unstable();
        let mut reduced: Vec<u32> = Vec::with_capacity(col.len());
        for &t in col.iter() {
            if reduced.last() == Some(&t) {
                reduced.pop();
            } else {
                reduced.push(t);
            }
        }
        *col = reduced;
    }
    Ok((src.offset, cols))
}

/// Images of one generator under one edge map, as `(dist index, circle values)`.
#[allow(clippy::too_many_arguments)]
fn edge_images(
    a: &Dyad,
    src: &StateData,
    dst: &StateData,
    kind: &EdgeKind,
    twisted: bool,
    dist: usize,
    val: &[usize],
    base: &mut [usize],
    out: &mut Vec<(usize, Vec<usize>)>,
) {
    let is_dist = |c: usize| Some(c) == src.dist_circle;
    let dyad_map = a.map_from(src.e);
    match *kind {
        EdgeKind::Merge { from: [x, y], to } => {
            if is_dist(x) || is_dist(y) {
                let other = if is_dist(x) { y } else { x };
                if twisted {
                    // f_m = m ∘ (f ⊗ id)
                    if val[other] == V_PLUS {
                        for &t in dyad_map.apply(dist) {
                            out.push((t, base.to_vec()));
                        }
                    }
                } else if let Some(yv) = trivial_module_m(dist, val[other]) {
                    out.push((yv, base.to_vec()));
                }
            } else if let Some(z) = frobenius_m(val[x], val[y]) {
                base[to] = z;
                out.push((dist, base.to_vec()));
            }
        }
        EdgeKind::Split { from, to: [t1, t2] } => {
            if is_dist(from) {
                let new = if Some(t1) == dst.dist_circle { t2 } else { t1 };
                base[new] = V_MINUS;
                if twisted {
                    // f_Δ = Δ ∘ f
                    for &t in dyad_map.apply(dist) {
                        out.push((t, base.to_vec()));
                    }
                } else {
                    out.push((dist, base.to_vec()));
                }
            } else {
                for &(u, v) in frobenius_delta(val[from]) {
                    base[t1] = u;
                    base[t2] = v;
                    out.push((dist, base.to_vec()));
                }
            }
        }
        EdgeKind::OneToOne { from, to } => {
            if !is_dist(from) {
                base[to] = val[from];
            }
            for &t in dyad_map.apply(dist) {
                out.push((t, base.to_vec()));
            }
        }
    }
}

/// A degree-preserving linear map between two complexes over the same cube,
/// given per level as the image of each generator.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub levels: Vec<Vec<Vec<u32>>>,
}

impl ChainMap {
    /// Whether `φ ∘ d_src = d_dst ∘ φ`.
    pub fn commutes(&self, src: &ChainComplex, dst: &ChainComplex) -> bool {
        let apply = |m: &[Vec<u32>], v: &[u32]| xor_sum(v.iter().flat_map(|&x| m[x as usize].iter().copied()));
        (0..src.diff.len()).all(|l| {
            (0..src.levels[l].len()).all(|g| {
                let lhs = apply(&self.levels[l + 1], &src.diff[l][g]);
                let rhs = apply(&dst.diff[l], &self.levels[l][g]);
                lhs == rhs
            })
        })
    }

    /// Whether every level map is a square invertible matrix over F₂.
    pub fn is_isomorphism(&self) -> bool {
        self.levels.iter().all(|cols| {
            let n = cols.len();
            let rows: Vec<Vec<u32>> = cols.clone();
            crate::homology::rank_of_columns(&rows, n) == n
        })
    }
}

fn xor_sum(it: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut v: Vec<u32> = it.collect();
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// The change-of-marked-point map from the reduced complex marked at `m` to
/// the one marked at `m2`.
///
/// On each state the free circles form the algebra generated by `S_i`
/// (`v₋` on circle `i`) with `S_i² = 0`. With `S_1` the variable of the
/// circle through `m2`, the map is `S_1 ↦ S_1`, `S_i ↦ S_1 + S_i`, extended
/// multiplicatively; in the target, `S_1` names the circle through `m`.
/// Returns both complexes and the map.
pub fn remark_isomorphism(
    d: &DiagramRP2,
    a: &Dyad,
    p: FaceRef,
    m: usize,
    m2: usize,
) -> Result<(ChainComplex, ChainComplex, ChainMap), ComplexError> {
    let c1 = build_reduced_complex(d, a, p, m)?;
    let c2 = build_reduced_complex(d, a, p, m2)?;
    let mut levels = Vec::with_capacity(c1.levels.len());
    for gens in &c1.levels {
        let mut cols = Vec::with_capacity(gens.len());
        for g in gens {
            let s1 = &c1.states[g.state as usize];
            let s2 = &c2.states[g.state as usize];
            let c0 = s1.dist_circle.expect("reduced");
            let cm2 = s2.dist_circle.expect("reduced");
            let nf = s1.free.len();
            let ones: Vec<usize> = (0..nf).filter(|&p| free_bit(g.free, p, nf) == 1).map(|p| s1.free[p]).collect();
            let mut monomials: Vec<Vec<usize>> = Vec::new();
            if c0 == cm2 {
                monomials.push(ones);
            } else if ones.contains(&cm2) {
                monomials.push(ones.iter().map(|&c| if c == cm2 { c0 } else { c }).collect());
            } else {
                for j in 0..ones.len() {
                    let mut mono: Vec<usize> = ones.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c).collect();
                    mono.push(c0);
                    monomials.push(mono);
                }
                monomials.push(ones);
            }
            let nf2 = s2.free.len();
            let img = xor_sum(monomials.iter().map(|mono| {
                let mut f = 0u64;
                for (p, c) in s2.free.iter().enumerate() {
                    if mono.contains(c) {
                        f |= 1 << (nf2 - 1 - p);
                    }
                }
                (s2.offset + (g.dist << nf2) + f as usize) as u32
            }));
            cols.push(img);
        }
        levels.push(cols);
    }
    Ok((c1, c2, ChainMap { levels }))
}

/// Chain-group dimensions per `(i, q)`.
pub fn chain_dims(c: &ChainComplex) -> HashMap<(i32, i32), usize> {
    let mut out = HashMap::new();
    for (l, gens) in c.levels.iter().enumerate() {
        for g in gens {
            *out.entry((c.homological_degree(l), g.q)).or_insert(0) += 1;
        }
    }
    out
}
