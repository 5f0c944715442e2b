//! Link diagrams on RP² in the disk model.
//!
//! RP² is drawn as a closed disk with `2k` marked boundary points
//! `b_0 .. b_{2k-1}` placed counterclockwise; `b_j` is glued to `b_{j+k}`.
//! Crossings sit in the interior with four slots numbered counterclockwise.
//! Arcs join endpoints (crossing slots or boundary points) without meeting
//! each other. When `k = 0` the whole diagram lies in an affine chart and the
//! crosscap sits in the face named by `outer_face`.

mod moves;
mod orient;
mod smoothing;
mod topology;

pub use moves::{candidate_moves, Move, MoveError, MoveResult};
pub use orient::{Component, OrientError};
pub use smoothing::{Circle, Smoothing};
pub use topology::{FaceComplex, FaceRef};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One end of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Slot { crossing: usize, slot: u8 },
    Boundary(usize),
}

impl Endpoint {
    pub fn slot(crossing: usize, slot: u8) -> Self {
        Endpoint::Slot { crossing, slot }
    }
}

/// A crossing. `over[0]` marks the slot pair {0,2} as the over-strand,
/// `over[1]` marks {1,3}. Exactly one flag is set in a well-formed crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub over: [bool; 2],
}

impl Crossing {
    pub fn over02() -> Self {
        Crossing { over: [true, false] }
    }

    pub fn over13() -> Self {
        Crossing { over: [false, true] }
    }

    /// Parity of the over-strand's slots (0 for {0,2}, 1 for {1,3}), if well-formed.
    pub fn over_parity(&self) -> Option<u8> {
        match self.over {
            [true, false] => Some(0),
            [false, true] => Some(1),
            _ => None,
        }
    }

    pub fn is_over_slot(&self, slot: u8) -> bool {
        self.over[(slot % 2) as usize]
    }

    pub fn toggled(&self) -> Self {
        Crossing { over: [self.over[1], self.over[0]] }
    }

    fn over_pair_str(&self) -> String {
        let mut s = String::new();
        if self.over[0] {
            s.push_str("02");
        }
        if self.over[1] {
            s.push_str("13");
        }
        s
    }

    fn parse_over_pair(s: &str) -> Self {
        Crossing { over: [s.contains("02") || s == "20", s.contains("13") || s == "31"] }
    }
}

/// An arc of the diagram: a path between two endpoints, or a closed loop
/// with no endpoints (only allowed in crossingless, boundaryless diagrams).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arc {
    Path(Endpoint, Endpoint),
    Loop,
}

/// A link diagram on RP².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramRP2 {
    pub name: String,
    pub boundary_points: usize,
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Arc>,
    /// One arc per component; the component is oriented along that arc from
    /// its first endpoint to its second.
    pub orientation_seeds: Option<Vec<usize>>,
    pub basepoint_face: Option<usize>,
    pub marked_arc: Option<usize>,
    /// For `k = 0` diagrams with crossings: which planar face holds the crosscap.
    pub outer_face: usize,
}

/// A state `s ∈ {0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub bits: Vec<bool>,
}

impl State {
    pub fn zeros(n: usize) -> Self {
        State { bits: vec![false; n] }
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        State { bits: (0..n).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.bits.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("diagram is not null-homologous")]
    NotNullHomologous,
    #[error("diagram is null-homologous, class 1 required")]
    NotClassOne,
    #[error("state has length {got}, diagram has {expected} crossings")]
    StateLength { expected: usize, got: usize },
    #[error("circle passes the crosscap an odd number of times and bounds no disk")]
    OddCircle,
    #[error("no face index {0}")]
    NoSuchFace(usize),
    #[error("no arc index {0}")]
    NoSuchArc(usize),
    #[error("no face with region parity 0")]
    NoEvenRegion,
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error("json: {0}")]
    Json(String),
}

/// Result of [`DiagramRP2::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<String>,
    /// ℤ/2 class of each component (only filled when the arc structure is sound).
    pub component_classes: Vec<u8>,
    pub link_class: u8,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl DiagramRP2 {
    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    /// Half the number of boundary points.
    pub fn k(&self) -> usize {
        self.boundary_points / 2
    }

    /// Dense index of an endpoint: `4c + s` for slots, `4n + j` for boundary points.
    pub fn key(&self, e: Endpoint) -> usize {
        match e {
            Endpoint::Slot { crossing, slot } => 4 * crossing + slot as usize,
            Endpoint::Boundary(j) => 4 * self.n() + j,
        }
    }

    pub fn endpoint_of_key(&self, key: usize) -> Endpoint {
        let n = self.n();
        if key < 4 * n {
            Endpoint::slot(key / 4, (key % 4) as u8)
        } else {
            Endpoint::Boundary(key - 4 * n)
        }
    }

    pub fn endpoint_count(&self) -> usize {
        4 * self.n() + self.boundary_points
    }

    /// For each endpoint key, the arc and end (0 or 1) using it.
    /// Only meaningful for diagrams whose arcs pass [`validate`](Self::validate).
    pub fn incidence(&self) -> Vec<(usize, usize)> {
        let mut at = vec![(usize::MAX, 0); self.endpoint_count()];
        for (a, arc) in self.arcs.iter().enumerate() {
            if let Arc::Path(x, y) = arc {
                at[self.key(*x)] = (a, 0);
                at[self.key(*y)] = (a, 1);
            }
        }
        at
    }

    pub fn arc_ends(&self, a: usize) -> Option<(Endpoint, Endpoint)> {
        match self.arcs[a] {
            Arc::Path(x, y) => Some((x, y)),
            Arc::Loop => None,
        }
    }

    /// The endpoint glued to `e` along the strand: the opposite slot at a
    /// crossing, the antipodal point on the boundary.
    pub fn straight_through(&self, e: Endpoint) -> Endpoint {
        match e {
            Endpoint::Slot { crossing, slot } => Endpoint::slot(crossing, (slot + 2) % 4),
            Endpoint::Boundary(j) => Endpoint::Boundary((j + self.k()) % self.boundary_points),
        }
    }

    /// True when the diagram has no boundary points (it lies in an affine chart).
    pub fn is_affine(&self) -> bool {
        self.boundary_points == 0
    }

    pub fn is_free_loops(&self) -> bool {
        self.crossings.is_empty()
            && self.boundary_points == 0
            && self.arcs.iter().all(|a| matches!(a, Arc::Loop))
    }

    /// Checks every structural invariant; returns diagnostics rather than failing.
    pub fn validate(&self) -> Validation {
        let mut v = Vec::new();
        let n = self.n();
        for (c, x) in self.crossings.iter().enumerate() {
            if x.over_parity().is_none() {
                v.push(format!("crossing {c}: over_pair ill-formed"));
            }
        }
        if self.boundary_points % 2 != 0 {
            v.push(format!("boundary point count {} is odd", self.boundary_points));
        }
        let loops = self.arcs.iter().filter(|a| matches!(a, Arc::Loop)).count();
        if loops > 0 && (n > 0 || self.boundary_points > 0 || loops != self.arcs.len()) {
            v.push("closed loop arcs are only allowed in crossingless boundaryless diagrams".into());
        }
        let mut used = vec![0usize; self.endpoint_count()];
        let mut in_range = true;
        for (a, arc) in self.arcs.iter().enumerate() {
            if let Arc::Path(x, y) = arc {
                for e in [x, y] {
                    let ok = match *e {
                        Endpoint::Slot { crossing, slot } => crossing < n && slot < 4,
                        Endpoint::Boundary(j) => j < self.boundary_points,
                    };
                    if ok {
                        used[self.key(*e)] += 1;
                    } else {
                        v.push(format!("arc {a}: endpoint {e:?} out of range"));
                        in_range = false;
                    }
                }
            }
        }
        for (key, &count) in used.iter().enumerate() {
            if count != 1 {
                v.push(format!("endpoint {:?} used {count} times", self.endpoint_of_key(key)));
                in_range = false;
            }
        }
        if self.arcs.is_empty() && n == 0 && self.boundary_points == 0 {
            // The empty link is allowed.
        }
        let mut component_classes = Vec::new();
        if in_range && self.boundary_points % 2 == 0 {
            if let Err(msg) = topology::check_planar(self) {
                v.push(msg);
            }
            let comps = orient::components(self);
            component_classes = comps.iter().map(|c| (c.boundary_passages % 2) as u8).collect();
            if let Some(seeds) = &self.orientation_seeds {
                if let Err(e) = orient::orientation(self) {
                    v.push(e.to_string());
                }
                if seeds.len() != comps.len() {
                    v.push(format!("{} orientation seeds for {} components", seeds.len(), comps.len()));
                }
            }
            if let Some(m) = self.marked_arc {
                if m >= self.arcs.len() {
                    v.push(format!("marked arc {m} out of range"));
                }
            }
        }
        Validation { violations: v, component_classes, link_class: (self.k() % 2) as u8 }
    }

    /// Errors with [`DiagramError::Invalid`] unless the diagram validates cleanly.
    pub fn check_valid(&self) -> Result<(), DiagramError> {
        let val = self.validate();
        if val.is_valid() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(val.violations))
        }
    }

    pub fn check_null_homologous(&self) -> Result<(), DiagramError> {
        self.check_valid()?;
        if self.k() % 2 == 0 {
            Ok(())
        } else {
            Err(DiagramError::NotNullHomologous)
        }
    }

    /// Toggles every crossing; everything else is unchanged.
    pub fn mirror(&self) -> DiagramRP2 {
        let mut d = self.clone();
        for c in &mut d.crossings {
            *c = c.toggled();
        }
        d
    }

    pub fn from_json(s: &str) -> Result<Self, DiagramError> {
        let raw: RawDiagram = serde_json::from_str(s).map_err(|e| DiagramError::Json(e.to_string()))?;
        raw.into_diagram().map_err(DiagramError::Json)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDiagram::from_diagram(self);
        serde_json::to_string_pretty(&raw).expect("diagram serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawCrossing {
    over_pair: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawEndpoint {
    Slot(String, usize, u8),
    Boundary(String, usize),
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    name: String,
    boundary_points: usize,
    crossings: Vec<RawCrossing>,
    arcs: Vec<Vec<RawEndpoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation_seeds: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint_face: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked_arc: Option<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    outer_face: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl RawEndpoint {
    fn to_endpoint(&self) -> Result<Endpoint, String> {
        match self {
            RawEndpoint::Slot(tag, c, s) if tag == "x" => Ok(Endpoint::slot(*c, *s)),
            RawEndpoint::Boundary(tag, j) if tag == "b" => Ok(Endpoint::Boundary(*j)),
            RawEndpoint::Slot(tag, ..) | RawEndpoint::Boundary(tag, _) => {
                Err(format!("unknown endpoint tag `{tag}`"))
            }
        }
    }

    fn from_endpoint(e: Endpoint) -> Self {
        match e {
            Endpoint::Slot { crossing, slot } => RawEndpoint::Slot("x".into(), crossing, slot),
            Endpoint::Boundary(j) => RawEndpoint::Boundary("b".into(), j),
        }
    }
}

impl RawDiagram {
    fn into_diagram(self) -> Result<DiagramRP2, String> {
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (i, a) in self.arcs.iter().enumerate() {
            arcs.push(match a.as_slice() {
                [] => Arc::Loop,
                [x, y] => Arc::Path(x.to_endpoint()?, y.to_endpoint()?),
                _ => return Err(format!("arc {i} must list two endpoints (or none for a loop)")),
            });
        }
        Ok(DiagramRP2 {
            name: self.name,
            boundary_points: self.boundary_points,
            crossings: self.crossings.iter().map(|c| Crossing::parse_over_pair(&c.over_pair)).collect(),
            arcs,
            orientation_seeds: self.orientation_seeds,
            basepoint_face: self.basepoint_face,
            marked_arc: self.marked_arc,
            outer_face: self.outer_face,
        })
    }

    fn from_diagram(d: &DiagramRP2) -> Self {
        RawDiagram {
            name: d.name.clone(),
            boundary_points: d.boundary_points,
            crossings: d.crossings.iter().map(|c| RawCrossing { over_pair: c.over_pair_str() }).collect(),
            arcs: d
                .arcs
                .iter()
                .map(|a| match a {
                    Arc::Path(x, y) => vec![RawEndpoint::from_endpoint(*x), RawEndpoint::from_endpoint(*y)],
                    Arc::Loop => vec![],
                })
                .collect(),
            orientation_seeds: d.orientation_seeds.clone(),
            basepoint_face: d.basepoint_face,
            marked_arc: d.marked_arc,
            outer_face: d.outer_face,
        }
    }
}

/// Builds an affine diagram from a planar-diagram code in the usual
/// convention: each crossing lists its four edge labels counterclockwise
/// starting from the incoming under-strand. Edge labels are oriented so that
/// each label leaves the crossing listing it in slot 2 or in the over-slot it
/// exits through. Returns `None` if the code is malformed.
pub fn from_pd(name: &str, pd: &[[usize; 4]]) -> Option<DiagramRP2> {
    use std::collections::BTreeMap;
    let mut ends: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
    for (c, x) in pd.iter().enumerate() {
        for (s, &label) in x.iter().enumerate() {
            ends.entry(label).or_default().push(Endpoint::slot(c, s as u8));
        }
    }
    let mut arcs = Vec::new();
    let mut labels = Vec::new();
    for (&label, e) in &ends {
        if e.len() != 2 {
            return None;
        }
        labels.push(label);
        arcs.push((e[0], e[1]));
    }
    // Orient each arc so it runs from the slot it exits to the slot it enters.
    // Slot 0 is incoming; slot 2 outgoing; the over strand runs between slots
    // 1 and 3 with direction fixed by label succession (j -> l with l = j+1
    // cyclically means the strand enters at slot 1 and exits at 3).
    let m = labels.len();
    let succ = |a: usize, b: usize| {
        let (ia, ib) = (labels.iter().position(|&l| l == a).unwrap(), labels.iter().position(|&l| l == b).unwrap());
        (ia + 1) % m == ib
    };
    let mut exits = vec![[false; 4]; pd.len()];
    for (c, x) in pd.iter().enumerate() {
        exits[c][2] = true;
        // Over strand goes from slot 1 to slot 3 if label[3] follows label[1].
        if succ(x[1], x[3]) {
            exits[c][3] = true;
        } else {
            exits[c][1] = true;
        }
    }
    let mut d_arcs = Vec::new();
    for &(x, y) in &arcs {
        let exits_at = |e: Endpoint| match e {
            Endpoint::Slot { crossing, slot } => exits[crossing][slot as usize],
            Endpoint::Boundary(_) => false,
        };
        if exits_at(x) && !exits_at(y) {
            d_arcs.push(Arc::Path(x, y));
        } else if exits_at(y) && !exits_at(x) {
            d_arcs.push(Arc::Path(y, x));
        } else {
            return None;
        }
    }
    let mut d = DiagramRP2 {
        name: name.to_string(),
        boundary_points: 0,
        crossings: vec![Crossing::over13(); pd.len()],
        arcs: d_arcs,
        orientation_seeds: None,
        basepoint_face: None,
        marked_arc: None,
        outer_face: 0,
    };
    let comps = orient::components(&d);
    let mut seeds = Vec::new();
    for comp in comps {
        let (a, fwd) = comp.arcs[0];
        if !fwd {
            return None;
        }
        seeds.push(a);
    }
    d.orientation_seeds = Some(seeds);
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unknot() -> DiagramRP2 {
        DiagramRP2 {
            name: "unknot".into(),
            boundary_points: 0,
            crossings: vec![],
            arcs: vec![Arc::Loop],
            orientation_seeds: Some(vec![0]),
            basepoint_face: None,
            marked_arc: None,
            outer_face: 0,
        }
    }

    #[test]
    fn unknot_is_valid_class_zero() {
        let v = unknot().validate();
        assert!(v.is_valid(), "{:?}", v.violations);
        assert_eq!(v.link_class, 0);
        assert_eq!(v.component_classes, vec![0]);
    }

    #[test]
    fn single_boundary_arc_is_class_one() {
        let d = DiagramRP2 {
            name: "line".into(),
            boundary_points: 2,
            crossings: vec![],
            arcs: vec![Arc::Path(Endpoint::Boundary(0), Endpoint::Boundary(1))],
            orientation_seeds: Some(vec![0]),
            basepoint_face: None,
            marked_arc: None,
            outer_face: 0,
        };
        let v = d.validate();
        assert!(v.is_valid(), "{:?}", v.violations);
        assert_eq!(v.link_class, 1);
        assert_eq!(v.component_classes, vec![1]);
        assert_eq!(d.check_null_homologous(), Err(DiagramError::NotNullHomologous));
    }

    #[test]
    fn both_pairs_over_is_reported() {
        let json = r#"{"name":"bad","boundary_points":0,
            "crossings":[{"over_pair":"0213"}],
            "arcs":[[["x",0,0],["x",0,1]],[["x",0,2],["x",0,3]]]}"#;
        let d = DiagramRP2::from_json(json).unwrap();
        let v = d.validate();
        assert!(v.violations.iter().any(|m| m.contains("over_pair ill-formed")), "{:?}", v.violations);
    }

    #[test]
    fn json_roundtrip() {
        let d = from_pd("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let back = DiagramRP2::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let u = unknot();
        assert_eq!(DiagramRP2::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn reused_endpoint_is_reported() {
        let mut d = from_pd("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        d.arcs[0] = d.arcs[1];
        assert!(!d.validate().is_valid());
    }

    #[test]
    fn mirror_is_involution() {
        let d = from_pd("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_ne!(d.mirror(), d);
        assert_eq!(d.mirror().mirror(), d);
    }
}
