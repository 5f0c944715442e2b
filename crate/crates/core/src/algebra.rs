//! Graded F₂ vector spaces, the Frobenius algebra `V`, and dyads.
//!
//! A dyad `(V0, V1, f, g)` is a pair of graded spaces with maps
//! `f: V0 -> V1`, `g: V1 -> V0` of quantum degree −1 such that
//! `f∘g = 0` and `g∘f = 0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::LaurentQ;

/// Index of `v₊` in `V`.
pub const V_PLUS: usize = 0;
/// Index of `v₋` in `V`.
pub const V_MINUS: usize = 1;

/// Quantum degree of a basis element of `V`.
pub fn v_qdeg(x: usize) -> i32 {
    if x == V_PLUS {
        1
    } else {
        -1
    }
}

/// Multiplication on `V`: `v₊` is the unit and `v₋² = 0`.
pub fn frobenius_m(a: usize, b: usize) -> Option<usize> {
    match (a, b) {
        (V_PLUS, V_PLUS) => Some(V_PLUS),
        (V_PLUS, V_MINUS) | (V_MINUS, V_PLUS) => Some(V_MINUS),
        _ => None,
    }
}

/// Comultiplication on `V`: `Δ(v₊) = v₊⊗v₋ + v₋⊗v₊`, `Δ(v₋) = v₋⊗v₋`.
pub fn frobenius_delta(a: usize) -> &'static [(usize, usize)] {
    if a == V_PLUS {
        &[(V_PLUS, V_MINUS), (V_MINUS, V_PLUS)]
    } else {
        &[(V_MINUS, V_MINUS)]
    }
}

/// `V_i` as a trivial `V`-module: `v₊` acts by identity, `v₋` by zero.
pub fn trivial_module_m(y: usize, x: usize) -> Option<usize> {
    (x == V_PLUS).then_some(y)
}

/// `V_i` as a trivial `V`-comodule: `Δ(y) = y ⊗ v₋`.
pub fn trivial_comodule_delta(y: usize) -> (usize, usize) {
    (y, V_MINUS)
}

/// A graded vector space over F₂ with a named basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pub gens: Vec<(String, i32)>,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, i32)>) -> Self {
        GradedSpace { gens: gens.into_iter().map(|(n, q)| (n.into(), q)).collect() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The Frobenius algebra `V = ⟨v₊, v₋⟩` with degrees ±1.
    pub fn frobenius() -> Self {
        Self::new([("v+", 1), ("v-", -1)])
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn qdeg(&self, i: usize) -> i32 {
        self.gens[i].1
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    /// Graded dimension `Σ q^m dim(W_m)`.
    pub fn qdim(&self) -> LaurentQ {
        LaurentQ::from_terms(self.gens.iter().map(|&(_, q)| (q, 1)))
    }

    /// Tensor product with basis ordered lexicographically (left factor most significant).
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut gens = Vec::with_capacity(self.dim() * other.dim());
        for (a, qa) in &self.gens {
            for (b, qb) in &other.gens {
                gens.push((format!("{a}⊗{b}"), qa + qb));
            }
        }
        GradedSpace { gens }
    }
}

/// An F₂-linear map given by the image (a set of basis indices) of each source basis vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearMap {
    pub cols: Vec<Vec<usize>>,
    pub shift: i32,
}

impl LinearMap {
    pub fn zero(domain_dim: usize, shift: i32) -> Self {
        LinearMap { cols: vec![Vec::new(); domain_dim], shift }
    }

    pub fn apply(&self, src: usize) -> &[usize] {
        &self.cols[src]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `self ∘ other` over F₂.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc = BTreeMap::<usize, bool>::new();
                for &m in col {
                    for &t in &self.cols[m] {
                        *acc.entry(t).or_insert(false) ^= true;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v).map(|(t, _)| t).collect()
            })
            .collect();
        LinearMap { cols, shift: self.shift + other.shift }
    }

    fn check(&self, label: &str, dom: &GradedSpace, cod: &GradedSpace, out: &mut Vec<String>) {
        if self.cols.len() != dom.dim() {
            out.push(format!("{label}: {} columns for a {}-dimensional domain", self.cols.len(), dom.dim()));
            return;
        }
        if self.shift != -1 {
            out.push(format!("{label}: declared degree {} is not -1", self.shift));
        }
        for (s, col) in self.cols.iter().enumerate() {
            let mut seen = col.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != col.len() {
                out.push(format!("{label}({}): repeated target", dom.gens[s].0));
            }
            for &t in col {
                if t >= cod.dim() {
                    out.push(format!("{label}({}): target {t} out of range", dom.gens[s].0));
                } else if cod.qdeg(t) != dom.qdeg(s) - 1 {
                    out.push(format!(
                        "{label}({}) = {}: degree {} -> {} is not a shift of -1",
                        dom.gens[s].0,
                        cod.gens[t].0,
                        dom.qdeg(s),
                        cod.qdeg(t)
                    ));
                }
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum DyadError {
    #[error("invalid dyad: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown dyad `{0}`")]
    Unknown(String),
    #[error("json: {0}")]
    Json(String),
}

/// A dyad `(V0, V1, f, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyad {
    pub name: String,
    pub v0: GradedSpace,
    pub v1: GradedSpace,
    pub f: LinearMap,
    pub g: LinearMap,
}

impl Dyad {
    pub fn space(&self, i: u8) -> &GradedSpace {
        if i == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }

    /// `f` when leaving `V0`, `g` when leaving `V1`.
    pub fn map_from(&self, i: u8) -> &LinearMap {
        if i == 0 {
            &self.f
        } else {
            &self.g
        }
    }

    /// Empty iff both maps are homogeneous of degree −1 and both composites vanish.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.f.check("f", &self.v0, &self.v1, &mut out);
        self.g.check("g", &self.v1, &self.v0, &mut out);
        for (label, space) in [("V0", &self.v0), ("V1", &self.v1)] {
            let mut names: Vec<&str> = space.gens.iter().map(|(n, _)| n.as_str()).collect();
            names.sort_unstable();
            if names.windows(2).any(|w| w[0] == w[1]) {
                out.push(format!("{label}: duplicate generator names"));
            }
        }
        if out.is_empty() {
            if !self.f.compose(&self.g).is_zero() {
                out.push("f∘g is nonzero".into());
            }
            if !self.g.compose(&self.f).is_zero() {
                out.push("g∘f is nonzero".into());
            }
        }
        out
    }

    /// `α* = (V1, V0, g, f)`.
    pub fn dual(&self) -> Dyad {
        Dyad {
            name: format!("{}*", self.name),
            v0: self.v1.clone(),
            v1: self.v0.clone(),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// Whether `f` and `g` both vanish.
    pub fn maps_vanish(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// Same spaces with `f` and `g` replaced by zero.
    pub fn with_zero_maps(&self) -> Dyad {
        Dyad {
            name: format!("{}0", self.name),
            f: LinearMap::zero(self.v0.dim(), -1),
            g: LinearMap::zero(self.v1.dim(), -1),
            ..self.clone()
        }
    }

    pub fn from_json(s: &str) -> Result<Dyad, DyadError> {
        let raw: RawDyad = serde_json::from_str(s).map_err(|e| DyadError::Json(e.to_string()))?;
        let v0 = GradedSpace::new(raw.v0);
        let v1 = GradedSpace::new(raw.v1);
        let to_map = |m: &BTreeMap<String, Vec<String>>, dom: &GradedSpace, cod: &GradedSpace| {
            let mut map = LinearMap::zero(dom.dim(), -1);
            for (src, targets) in m {
                let s = dom.index(src).ok_or_else(|| DyadError::Json(format!("unknown generator `{src}`")))?;
                for t in targets {
                    let t = cod.index(t).ok_or_else(|| DyadError::Json(format!("unknown generator `{t}`")))?;
                    map.cols[s].push(t);
                }
            }
            Ok::<_, DyadError>(map)
        };
        let f = to_map(&raw.f, &v0, &v1)?;
        let g = to_map(&raw.g, &v1, &v0)?;
        Ok(Dyad { name: raw.name, v0, v1, f, g })
    }

    pub fn to_json(&self) -> String {
        let map = |m: &LinearMap, dom: &GradedSpace, cod: &GradedSpace| {
            m.cols
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_empty())
                .map(|(s, c)| (dom.gens[s].0.clone(), c.iter().map(|&t| cod.gens[t].0.clone()).collect()))
                .collect()
        };
        let raw = RawDyad {
            name: self.name.clone(),
            v0: self.v0.gens.clone(),
            v1: self.v1.gens.clone(),
            f: map(&self.f, &self.v0, &self.v1),
            g: map(&self.g, &self.v1, &self.v0),
        };
        serde_json::to_string_pretty(&raw).expect("dyad serializes")
    }

    /// A built-in dyad by name (see [`builtin_dyads`]).
    pub fn builtin(name: &str) -> Result<Dyad, DyadError> {
        builtin_dyads()
            .into_iter()
            .find(|d| d.name == name)
            .ok_or_else(|| DyadError::Unknown(name.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawDyad {
    name: String,
    #[serde(rename = "V0")]
    v0: Vec<(String, i32)>,
    #[serde(rename = "V1")]
    v1: Vec<(String, i32)>,
    #[serde(default)]
    f: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    g: BTreeMap<String, Vec<String>>,
}

fn f2(name: &str) -> GradedSpace {
    GradedSpace::new([(name, 0)])
}

fn w_space() -> GradedSpace {
    GradedSpace::new([("a", 1), ("b", 0), ("c", 0), ("d", -1)])
}

fn vbar() -> GradedSpace {
    GradedSpace::new([("vbar+", 1), ("vbar-", -1)])
}

/// `aps`, `a0`, `a1`, `hf`, `hfprime`.
///
/// * `aps = (F₂, F₂, 0, 0)`
/// * `a0 = (F₂, 0, 0, 0)` and its dual `a1 = (0, F₂, 0, 0)`
/// * `hf = (W, V̄, f, g)` with `W = ⟨a,b,c,d⟩` in degrees 1,0,0,−1,
///   `V̄ = ⟨v̄₊, v̄₋⟩` in degrees ±1, `f(b) = f(c) = v̄₋`, `g(v̄₊) = b + c`
/// * `hfprime = (W, V̄, 0, 0)`
pub fn builtin_dyads() -> Vec<Dyad> {
    let zero_maps = |v0: &GradedSpace, v1: &GradedSpace| (LinearMap::zero(v0.dim(), -1), LinearMap::zero(v1.dim(), -1));
    let mut out = Vec::new();
    let (v0, v1) = (f2("1"), f2("1"));
    let (f, g) = zero_maps(&v0, &v1);
    out.push(Dyad { name: "aps".into(), v0, v1, f, g });
    let (v0, v1) = (f2("1"), GradedSpace::zero());
    let (f, g) = zero_maps(&v0, &v1);
    out.push(Dyad { name: "a0".into(), v0, v1, f, g });
    let (v0, v1) = (GradedSpace::zero(), f2("1"));
    let (f, g) = zero_maps(&v0, &v1);
    out.push(Dyad { name: "a1".into(), v0, v1, f, g });
    let f = LinearMap { cols: vec![vec![], vec![1], vec![1], vec![]], shift: -1 };
    let g = LinearMap { cols: vec![vec![1, 2], vec![]], shift: -1 };
    out.push(Dyad { name: "hf".into(), v0: w_space(), v1: vbar(), f, g });
    let (f, g) = zero_maps(&w_space(), &vbar());
    out.push(Dyad { name: "hfprime".into(), v0: w_space(), v1: vbar(), f, g });
    out
}

/// The two-dimensional reading `(V, V, 0, 0)` of the APS dyad, which the
/// unreduced theory with `(F₂, F₂, 0, 0)` reproduces up to the factor `V`.
pub fn aps_two_dimensional() -> Dyad {
    let v = GradedSpace::frobenius();
    Dyad {
        name: "aps-v".into(),
        f: LinearMap::zero(2, -1),
        g: LinearMap::zero(2, -1),
        v0: v.clone(),
        v1: v,
    }
}
