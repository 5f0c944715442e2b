//! Smoothings, their circles, and encircling parities.

use std::sync::Arc as Shared;

use crate::util::UnionFind;

use super::{Arc, DiagramError, DiagramRP2, Endpoint, FaceComplex, FaceRef, State};

/// A circle of a smoothing: its arcs in traversal order (starting at the
/// lowest id) and the number of crosscap passages mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub arcs: Vec<usize>,
    pub crosscap_parity: u8,
}

impl Circle {
    pub fn min_arc(&self) -> usize {
        self.arcs[0]
    }
}

/// The result of resolving every crossing of a diagram according to a state.
#[derive(Clone, Debug)]
pub struct Smoothing {
    pub state: State,
    /// Circles ordered by their lowest arc id.
    pub circles: Vec<Circle>,
    pub circle_of_arc: Vec<usize>,
    /// `joins_adjacent[c]`: whether crossing `c` is resolved as 0–1/2–3
    /// (otherwise 0–3/1–2).
    pub joins_adjacent: Vec<bool>,
    pub faces: Shared<FaceComplex>,
}

impl DiagramRP2 {
    /// Whether bit `bit` at crossing `c` joins slots 0–1 and 2–3. The
    /// 0-smoothing turns from the under-strand's slot `u` to slot `u+1`.
    pub fn joins_adjacent(&self, c: usize, bit: bool) -> bool {
        (self.crossings[c].over_parity() == Some(1)) != bit
    }

    pub fn resolve(&self, s: &State) -> Result<Smoothing, DiagramError> {
        self.check_valid()?;
        Ok(self.resolve_with(s, Shared::new(self.face_complex())))
    }

    /// Resolves using a precomputed face complex. Panics on length mismatch.
    pub fn resolve_with(&self, s: &State, faces: Shared<FaceComplex>) -> Smoothing {
        assert_eq!(s.len(), self.n(), "state length");
        let joins: Vec<bool> = (0..self.n()).map(|c| self.joins_adjacent(c, s.bits[c])).collect();
        let at = self.incidence();
        let partner = |e: Endpoint| match e {
            Endpoint::Slot { crossing, slot } => {
                let p = if joins[crossing] { slot ^ 1 } else { 3 - slot };
                Endpoint::slot(crossing, p)
            }
            Endpoint::Boundary(_) => self.straight_through(e),
        };
        let mut circle_of_arc = vec![usize::MAX; self.arcs.len()];
        let mut circles = Vec::new();
        for start in 0..self.arcs.len() {
            if circle_of_arc[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut arcs = Vec::new();
            let mut passages = 0;
            let (mut a, mut entry) = (start, 0usize);
            loop {
                circle_of_arc[a] = id;
                arcs.push(a);
                let Arc::Path(x, y) = self.arcs[a] else { break };
                let exit = if entry == 0 { y } else { x };
                if matches!(exit, Endpoint::Boundary(_)) {
                    passages += 1;
                }
                let (na, end) = at[self.key(partner(exit))];
                if na == start {
                    break;
                }
                a = na;
                entry = end;
            }
            circles.push(Circle { arcs, crosscap_parity: (passages % 2) as u8 });
        }
        Smoothing { state: s.clone(), circles, circle_of_arc, joins_adjacent: joins, faces }
    }

    /// Encircling parity of `p` in the orientation-preserving resolution,
    /// which is the parity of the linking number of the link with the fiber over `p`.
    pub fn region_parity(&self, p: FaceRef) -> Result<u8, DiagramError> {
        self.check_null_homologous()?;
        let sm = self.resolve(&self.seifert_state()?)?;
        sm.encircling_number(p)
    }

    /// Lowest-indexed face whose region parity is 0.
    pub fn canonical_base_face(&self) -> Result<FaceRef, DiagramError> {
        self.check_null_homologous()?;
        let sm = self.resolve(&self.seifert_state()?)?;
        (0..sm.faces.face_count())
            .map(FaceRef)
            .find(|&p| sm.encircling_number(p) == Ok(0))
            .ok_or(DiagramError::NoEvenRegion)
    }

    /// The basepoint face: the explicit override if present, else the canonical one.
    pub fn base_face(&self) -> Result<FaceRef, DiagramError> {
        match self.basepoint_face {
            Some(f) if f < self.face_complex().face_count() => Ok(FaceRef(f)),
            Some(f) => Err(DiagramError::NoSuchFace(f)),
            None => self.canonical_base_face(),
        }
    }
}

impl Smoothing {
    pub fn k(&self) -> usize {
        self.circles.len()
    }

    /// Union-find over lifted faces after resolving crossings, with the arcs
    /// of `keep` (a predicate on arc ids) left as walls.
    fn regions(&self, keep: impl Fn(usize) -> bool) -> UnionFind {
        let fc = &*self.faces;
        let mut uf = UnionFind::new(fc.lifted);
        for (c, corners) in fc.corners.iter().enumerate() {
            let (p, q) = if self.joins_adjacent[c] { (1, 3) } else { (0, 2) };
            for sheet in corners {
                uf.union(sheet[p], sheet[q]);
            }
        }
        for (a, sides) in fc.arc_sides.iter().enumerate() {
            if !keep(a) {
                for side in sides {
                    uf.union(side[0], side[1]);
                }
            }
        }
        uf
    }

    /// Whether `p` lies on the disk side of circle `c`: the two lifts of `p`
    /// are separated on the sphere by the two lifts of the circle.
    pub fn encircles(&self, c: usize, p: FaceRef) -> Result<bool, DiagramError> {
        if self.circles[c].crosscap_parity != 0 {
            return Err(DiagramError::OddCircle);
        }
        let fc = &*self.faces;
        let [x, y] = *fc.orbits.get(p.0).ok_or(DiagramError::NoSuchFace(p.0))?;
        if x == y {
            return Ok(false);
        }
        let mut uf = self.regions(|a| self.circle_of_arc[a] == c);
        Ok(uf.find(x) != uf.find(y))
    }

    /// Number of circles encircling `p`, mod 2. Every circle must have parity 0.
    pub fn encircling_number(&self, p: FaceRef) -> Result<u8, DiagramError> {
        let mut e = 0;
        for c in 0..self.circles.len() {
            e ^= self.encircles(c, p)? as u8;
        }
        Ok(e)
    }

    /// Like [`encircling_number`](Self::encircling_number) but ignores
    /// circles passing the crosscap an odd number of times.
    pub fn encircling_number_trivial(&self, p: FaceRef) -> Result<u8, DiagramError> {
        let mut e = 0;
        for c in 0..self.circles.len() {
            if self.circles[c].crosscap_parity == 0 {
                e ^= self.encircles(c, p)? as u8;
            }
        }
        Ok(e)
    }

    /// Sphere check for the lifted smoothing: disjoint circles on S² cut it
    /// into one more region than there are circles.
    pub fn euler_check(&self) -> bool {
        let lifted_circles: usize = self.circles.iter().map(|c| 2 - c.crosscap_parity as usize).sum();
        self.regions(|_| true).count() == lifted_circles + 1
    }

    /// Index of the circle containing arc `a`.
    pub fn circle_of(&self, a: usize) -> usize {
        self.circle_of_arc[a]
    }
}
