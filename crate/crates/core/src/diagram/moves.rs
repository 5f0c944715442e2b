//! Reidemeister moves on disk-model diagrams.
//!
//! R1–R3 are the planar moves. R4 carries a crossing through the crosscap:
//! it leaves one pair of adjacent boundary points and reappears at the
//! antipodal pair, with the strands' heights exchanged. R5 slides the
//! passage of one strand along the boundary past its neighbour, which
//! creates one crossing on each side of the boundary.

use thiserror::Error;

use super::topology::{disk_dart, disk_faces};
use super::{Arc, Crossing, DiagramRP2, Endpoint, FaceRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move does not match the diagram: {0}")]
    Mismatch(String),
    #[error("move produced an invalid diagram: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

/// A move together with its site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Adds a curl in the middle of `arc`. `side` picks which pair of
    /// adjacent slots carries the small loop.
    R1Insert { arc: usize, side: bool, over02: bool },
    /// Removes a crossing two of whose adjacent slots are joined by an arc.
    R1Delete { crossing: usize },
    /// Pushes `over` across `under` through the face lying to the right of
    /// both (each traversed forward when its flag is set).
    R2Insert { over: usize, over_forward: bool, under: usize, under_forward: bool },
    /// Removes two crossings bounding a bigon where one strand is over at both.
    R2Delete { crossings: [usize; 2] },
    /// Moves a strand across the crossing opposite to the triangle at
    /// corner `corner` (between slots `corner` and `corner + 1`) of `crossing`.
    R3 { crossing: usize, corner: u8 },
    /// Carries the crossing next to boundary segment `b_j b_{j+1}` to the antipodal segment.
    R4 { boundary: usize },
    /// Slides the passages through `b_j` and `b_{j+1}` past each other.
    R5 { boundary: usize },
}

/// Result of a move. `arc_map[a]` is the new id of old arc `a` and whether
/// its stored direction still agrees with the old one.
#[derive(Clone, Debug)]
pub struct MoveResult {
    pub diagram: DiagramRP2,
    pub arc_map: Vec<Option<(usize, bool)>>,
    pub crossing_map: Vec<Option<usize>>,
    /// Old crossings whose neighbourhood changed.
    pub involved: Vec<bool>,
}

type Ends = (Endpoint, Endpoint);

struct Work {
    crossings: Vec<Crossing>,
    arcs: Vec<Ends>,
    arc_map: Vec<Option<(usize, bool)>>,
    crossing_map: Vec<Option<usize>>,
    involved: Vec<bool>,
}

impl Work {
    fn identity(d: &DiagramRP2, arcs: Vec<Ends>) -> Self {
        let m = arcs.len();
        Work {
            crossings: d.crossings.clone(),
            arcs,
            arc_map: (0..m).map(|a| Some((a, true))).collect(),
            crossing_map: (0..d.n()).map(Some).collect(),
            involved: vec![false; d.n()],
        }
    }

    fn add_crossing(&mut self, c: Crossing) -> usize {
        self.crossings.push(c);
        self.crossings.len() - 1
    }

    /// Replaces arc `a` by the chain `path[0]-path[1], path[2]-path[3], ...`,
    /// listed from `path[0]`, which must be one of the arc's ends.
    fn reroute(&mut self, a: usize, mut path: Vec<Endpoint>) {
        if self.arcs[a].0 != path[0] {
            path.reverse();
        }
        self.arcs[a] = (path[0], path[1]);
        for pair in path[2..].chunks(2) {
            self.arcs.push((pair[0], pair[1]));
        }
    }

    fn substitute(&mut self, sigma: &[(Endpoint, Endpoint)], skip: &[usize]) {
        let map = |e: Endpoint| sigma.iter().find(|(from, _)| *from == e).map_or(e, |&(_, to)| to);
        for (a, ends) in self.arcs.iter_mut().enumerate() {
            if !skip.contains(&a) {
                *ends = (map(ends.0), map(ends.1));
            }
        }
    }
}

fn paths(d: &DiagramRP2) -> Result<Vec<Ends>, MoveError> {
    d.arcs
        .iter()
        .map(|a| match *a {
            Arc::Path(x, y) => Ok((x, y)),
            Arc::Loop => Err(MoveError::Mismatch("closed loop arcs carry no move sites".into())),
        })
        .collect()
}

fn slot(c: usize, s: usize) -> Endpoint {
    Endpoint::slot(c, (s % 4) as u8)
}

/// The endpoint joined by an arc to `e`.
fn across(arcs: &[Ends], e: Endpoint) -> (usize, Endpoint) {
    arcs.iter()
        .enumerate()
        .find_map(|(a, &(x, y))| {
            if x == e {
                Some((a, y))
            } else if y == e {
                Some((a, x))
            } else {
                None
            }
        })
        .expect("every endpoint is used")
}

/// Deletes crossings, joining the strands straight through them.
fn remove_crossings(d: &DiagramRP2, arcs: &[Ends], removed: &[usize]) -> (Work, Vec<Arc>) {
    let gone = |e: Endpoint| matches!(e, Endpoint::Slot { crossing, .. } if removed.contains(&crossing));
    let mut crossing_map = vec![None; d.n()];
    let mut crossings = Vec::new();
    for c in 0..d.n() {
        if !removed.contains(&c) {
            crossing_map[c] = Some(crossings.len());
            crossings.push(d.crossings[c]);
        }
    }
    let renumber = |e: Endpoint| match e {
        Endpoint::Slot { crossing, slot } => Endpoint::slot(crossing_map[crossing].unwrap(), slot),
        b => b,
    };
    let mut arc_map = vec![None; arcs.len()];
    let mut out = Vec::new();
    for start in 0..arcs.len() {
        if arc_map[start].is_some() {
            continue;
        }
        let id = out.len();
        arc_map[start] = Some((id, true));
        // Extend forward from the second end, then backward from the first.
        let mut ends = [arcs[start].0, arcs[start].1];
        let mut closed = false;
        for dir in [1usize, 0] {
            let mut e = ends[dir];
            while gone(e) && !closed {
                let Endpoint::Slot { crossing: c, slot: s } = e else { unreachable!() };
                let through = slot(c, s as usize + 2);
                let (b, far) = across(arcs, through);
                if b == start {
                    closed = true;
                    break;
                }
                // Traversed from `through` to `far`; forward along the chain
                // when walking out of the second end.
                let same = (arcs[b].0 == through) == (dir == 1);
                arc_map[b] = Some((id, same));
                e = far;
            }
            ends[dir] = e;
        }
        out.push(if closed { Arc::Loop } else { Arc::Path(renumber(ends[0]), renumber(ends[1])) });
    }
    let mut involved = vec![false; d.n()];
    for &c in removed {
        involved[c] = true;
    }
    let work = Work { crossings, arcs: Vec::new(), arc_map, crossing_map, involved };
    (work, out)
}

impl DiagramRP2 {
    /// Applies a move and returns the rewritten diagram with bookkeeping maps.
    /// Orientation seeds, the marked arc, the basepoint face and the
    /// crosscap face of affine diagrams are carried along.
    pub fn apply_reidemeister(&self, mv: Move) -> Result<MoveResult, MoveError> {
        if let Err(e) = self.check_valid() {
            return Err(MoveError::Invalid(vec![e.to_string()]));
        }
        let arcs = paths(self)?;
        let n = self.n();
        let mismatch = |s: String| Err(MoveError::Mismatch(s));
        let (work, new_arcs): (Work, Vec<Arc>) = match mv {
            Move::R1Insert { arc, side, over02 } => {
                if arc >= arcs.len() {
                    return mismatch(format!("no arc {arc}"));
                }
                let mut w = Work::identity(self, arcs.clone());
                let x = w.add_crossing(if over02 { Crossing::over02() } else { Crossing::over13() });
                let (p, q) = arcs[arc];
                let path = if side {
                    vec![p, slot(x, 0), slot(x, 2), slot(x, 3), slot(x, 1), q]
                } else {
                    vec![p, slot(x, 0), slot(x, 2), slot(x, 1), slot(x, 3), q]
                };
                w.reroute(arc, path);
                let out = w.arcs.iter().map(|&(a, b)| Arc::Path(a, b)).collect();
                (w, out)
            }
            Move::R1Delete { crossing } => {
                if crossing >= n {
                    return mismatch(format!("no crossing {crossing}"));
                }
                let curl = (0..4).any(|s| across(&arcs, slot(crossing, s)).1 == slot(crossing, s + 1));
                if !curl {
                    return mismatch(format!("crossing {crossing} is not a curl"));
                }
                remove_crossings(self, &arcs, &[crossing])
            }
            Move::R2Insert { over, over_forward, under, under_forward } => {
                if over >= arcs.len() || under >= arcs.len() || over == under {
                    return mismatch("R2 needs two distinct arcs".into());
                }
                let start = |a: usize, fwd: bool| if fwd { arcs[a].0 } else { arcs[a].1 };
                let end = |a: usize, fwd: bool| if fwd { arcs[a].1 } else { arcs[a].0 };
                let (xa, ya, xb, yb) = (start(over, over_forward), end(over, over_forward), start(under, under_forward), end(under, under_forward));
                let (face, _) = disk_faces(self);
                if face[disk_dart(self, xa)] != face[disk_dart(self, xb)] {
                    return mismatch("arcs do not bound a common face on the chosen sides".into());
                }
                let mut w = Work::identity(self, arcs.clone());
                let x1 = w.add_crossing(Crossing::over13());
                let x2 = w.add_crossing(Crossing::over13());
                w.reroute(over, vec![xa, slot(x1, 1), slot(x1, 3), slot(x2, 3), slot(x2, 1), ya]);
                w.reroute(under, vec![xb, slot(x2, 0), slot(x2, 2), slot(x1, 0), slot(x1, 2), yb]);
                let out = w.arcs.iter().map(|&(a, b)| Arc::Path(a, b)).collect();
                (w, out)
            }
            Move::R2Delete { crossings: [c1, c2] } => {
                if c1 >= n || c2 >= n || c1 == c2 {
                    return mismatch("R2 needs two distinct crossings".into());
                }
                let bigon = (0..4).any(|i| {
                    (0..4).any(|j| {
                        across(&arcs, slot(c1, i + 1)).1 == slot(c2, j)
                            && across(&arcs, slot(c1, i)).1 == slot(c2, j + 1)
                            && self.crossings[c1].is_over_slot(((i + 1) % 4) as u8)
                                == self.crossings[c2].is_over_slot((j % 4) as u8)
                    })
                });
                if !bigon {
                    return mismatch(format!("crossings {c1} and {c2} do not bound a removable bigon"));
                }
                remove_crossings(self, &arcs, &[c1, c2])
            }
            Move::R3 { crossing, corner } => {
                if crossing >= n {
                    return mismatch(format!("no crossing {crossing}"));
                }
                // Vertices in counterclockwise order around the triangle, with
                // slot t facing the next vertex and t + 1 the previous one.
                let mut tri = vec![(crossing, corner as usize)];
                for _ in 0..2 {
                    let (c, t) = *tri.last().unwrap();
                    match across(&arcs, slot(c, t)).1 {
                        Endpoint::Slot { crossing: c2, slot: s2 } => tri.push((c2, (s2 as usize + 3) % 4)),
                        Endpoint::Boundary(_) => return mismatch("triangle side meets the boundary".into()),
                    }
                }
                let (c, t) = tri[2];
                if across(&arcs, slot(c, t)).1 != slot(crossing, corner as usize + 1) {
                    return mismatch("corner is not a triangle".into());
                }
                if tri[0].0 == tri[1].0 || tri[1].0 == tri[2].0 || tri[0].0 == tri[2].0 {
                    return mismatch("triangle crossings are not distinct".into());
                }
                let over: Vec<bool> = tri.iter().map(|&(c, t)| self.crossings[c].is_over_slot(t as u8)).collect();
                if over.iter().all(|&o| o == over[0]) {
                    return mismatch("the three strands are cyclically layered".into());
                }
                let mut w = Work::identity(self, arcs.clone());
                let mut sigma = Vec::new();
                let mut internal = Vec::new();
                for i in 0..3 {
                    let (x, tx) = tri[i];
                    let (y, ty) = tri[(i + 1) % 3];
                    let (a, _) = across(&arcs, slot(x, tx));
                    internal.push(a);
                    sigma.push((slot(y, ty + 3), slot(x, tx)));
                    sigma.push((slot(x, tx + 2), slot(y, ty + 1)));
                    // The strand now meets the triangle in the opposite order.
                    w.arcs[a] = if arcs[a].0 == slot(x, tx) {
                        (slot(y, ty + 3), slot(x, tx + 2))
                    } else {
                        (slot(x, tx + 2), slot(y, ty + 3))
                    };
                }
                w.substitute(&sigma, &internal);
                for &(c, _) in &tri {
                    w.involved[c] = true;
                }
                let out = w.arcs.iter().map(|&(a, b)| Arc::Path(a, b)).collect();
                (w, out)
            }
            Move::R4 { boundary: j } => {
                let b = self.boundary_points;
                if j >= b {
                    return mismatch(format!("no boundary point {j}"));
                }
                let k = b / 2;
                let bp = |i: usize| Endpoint::Boundary(i % b);
                let (_, e0) = across(&arcs, bp(j));
                let (_, e1) = across(&arcs, bp(j + 1));
                let (Endpoint::Slot { crossing: x, slot: s1 }, Endpoint::Slot { crossing: x0, slot: s0 }) = (e1, e0) else {
                    return mismatch("boundary arcs do not end at a crossing".into());
                };
                let t = s1 as usize;
                if x != x0 || s0 as usize != (t + 3) % 4 {
                    return mismatch("no crossing faces this boundary segment".into());
                }
                for i in [j + k, j + k + 1] {
                    if matches!(across(&arcs, bp(i)).1, Endpoint::Slot { crossing, .. } if crossing == x) {
                        return mismatch("the crossing also faces the antipodal segment".into());
                    }
                }
                let mut w = Work::identity(self, arcs.clone());
                let sigma = [
                    (slot(x, t + 2), bp(j)),
                    (slot(x, t + 1), bp(j + 1)),
                    (bp(j + k + 1), slot(x, t + 1)),
                    (bp(j + k), slot(x, t + 2)),
                    (bp(j + 1), bp(j + k + 1)),
                    (bp(j), bp(j + k)),
                ];
                w.substitute(&sigma, &[]);
                w.involved[x] = true;
                let out = w.arcs.iter().map(|&(a, b)| Arc::Path(a, b)).collect();
                (w, out)
            }
            Move::R5 { boundary: j } => {
                let b = self.boundary_points;
                if b < 4 || j >= b {
                    return mismatch("R5 needs at least two boundary pairs".into());
                }
                let k = b / 2;
                let bp = |i: usize| Endpoint::Boundary(i % b);
                let mut w = Work::identity(self, arcs.clone());
                // The strand through b_j stays over on this side; heights swap across the boundary.
                let x1 = w.add_crossing(Crossing::over02());
                let x2 = w.add_crossing(Crossing::over13());
                let sigma = [
                    (bp(j), slot(x1, 2)),
                    (bp(j + 1), slot(x1, 1)),
                    (bp(j + k), slot(x2, 2)),
                    (bp(j + k + 1), slot(x2, 1)),
                ];
                w.substitute(&sigma, &[]);
                w.arcs.push((slot(x1, 0), bp(j + 1)));
                w.arcs.push((slot(x1, 3), bp(j)));
                w.arcs.push((slot(x2, 0), bp(j + k + 1)));
                w.arcs.push((slot(x2, 3), bp(j + k)));
                let out = w.arcs.iter().map(|&(a, b)| Arc::Path(a, b)).collect();
                (w, out)
            }
        };
        self.finish(work, new_arcs)
    }

    fn finish(&self, w: Work, arcs: Vec<Arc>) -> Result<MoveResult, MoveError> {
        let mut d = DiagramRP2 {
            name: self.name.clone(),
            boundary_points: self.boundary_points,
            crossings: w.crossings,
            arcs,
            orientation_seeds: None,
            basepoint_face: None,
            marked_arc: self.marked_arc.and_then(|m| w.arc_map[m].map(|x| x.0)),
            outer_face: 0,
        };
        let v = d.validate();
        if !v.is_valid() {
            return Err(MoveError::Invalid(v.violations));
        }
        let mut res = MoveResult { diagram: d.clone(), arc_map: w.arc_map, crossing_map: w.crossing_map, involved: w.involved };
        if self.boundary_points == 0 && !d.crossings.is_empty() {
            d.outer_face = self
                .transport_planar(&res, &d, self.outer_face)
                .ok_or_else(|| MoveError::Mismatch("the move touches every corner of the crosscap face".into()))?;
        }
        if let Some(p) = self.basepoint_face {
            res.diagram = d.clone();
            d.basepoint_face = res.transport_face(self, FaceRef(p)).map(|f| f.0);
        }
        // Reseed: keep the old direction on one surviving arc per component.
        if let Ok(dir) = self.orientation() {
            res.diagram = d.clone();
            let mut seeds = Vec::new();
            let comps = d.components();
            for comp in comps {
                let pick = comp.arcs.iter().find_map(|&(a, _)| {
                    (0..self.arcs.len()).find_map(|old| match res.arc_map[old] {
                        Some((na, same)) if na == a => Some((a, dir[old] == same)),
                        _ => None,
                    })
                });
                let Some((a, forward)) = pick else {
                    return Err(MoveError::Mismatch("a component lost all its arcs".into()));
                };
                if !forward {
                    if let Arc::Path(x, y) = d.arcs[a] {
                        d.arcs[a] = Arc::Path(y, x);
                        for m in res.arc_map.iter_mut().flatten() {
                            if m.0 == a {
                                m.1 = !m.1;
                            }
                        }
                    }
                }
                seeds.push(a);
            }
            d.orientation_seeds = Some(seeds);
        }
        let v = d.validate();
        if !v.is_valid() {
            return Err(MoveError::Invalid(v.violations));
        }
        res.diagram = d;
        Ok(res)
    }

    /// Planar face (single-sheet numbering) of an affine diagram after a move,
    /// located through a corner of an untouched crossing.
    fn transport_planar(&self, res: &MoveResult, new: &DiagramRP2, face: usize) -> Option<usize> {
        let (old_faces, _) = disk_faces(self);
        let (new_faces, _) = disk_faces(new);
        (0..self.n()).filter(|&c| !res.involved[c]).find_map(|c| {
            let nc = res.crossing_map[c]?;
            (0..4).find(|&j| old_faces[4 * c + (j + 1) % 4] == face).map(|j| new_faces[4 * nc + (j + 1) % 4])
        })
    }
}

impl MoveResult {
    /// The face of the new diagram that contains a corner of `p` at an
    /// untouched crossing, if there is one.
    pub fn transport_face(&self, old: &DiagramRP2, p: FaceRef) -> Option<FaceRef> {
        let of = old.face_complex();
        let nf = self.diagram.face_complex();
        (0..old.n()).filter(|&c| !self.involved[c]).find_map(|c| {
            let nc = self.crossing_map[c]?;
            (0..4).find(|&j| of.orbit_of[of.corners[c][0][j]] == p.0).map(|j| FaceRef(nf.orbit_of[nf.corners[nc][0][j]]))
        })
    }
}

/// Every move whose parameters are in range for `d`. Most of them will be
/// rejected by [`DiagramRP2::apply_reidemeister`]; the caller filters.
pub fn candidate_moves(d: &DiagramRP2) -> Vec<Move> {
    let (n, m) = (d.n(), d.arcs.len());
    let mut out = Vec::new();
    for arc in 0..m {
        for side in [false, true] {
            for over02 in [false, true] {
                out.push(Move::R1Insert { arc, side, over02 });
            }
        }
    }
    for crossing in 0..n {
        out.push(Move::R1Delete { crossing });
    }
    for over in 0..m {
        for under in 0..m {
            for over_forward in [false, true] {
                for under_forward in [false, true] {
                    out.push(Move::R2Insert { over, over_forward, under, under_forward });
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(Move::R2Delete { crossings: [a, b] });
        }
    }
    for crossing in 0..n {
        for corner in 0..4 {
            out.push(Move::R3 { crossing, corner });
        }
    }
    for boundary in 0..d.boundary_points {
        out.push(Move::R4 { boundary });
        out.push(Move::R5 { boundary });
    }
    out
}

impl Move {
    /// `R1` … `R5`.
    pub fn family(&self) -> &'static str {
        match self {
            Move::R1Insert { .. } | Move::R1Delete { .. } => "R1",
            Move::R2Insert { .. } | Move::R2Delete { .. } => "R2",
            Move::R3 { .. } => "R3",
            Move::R4 { .. } => "R4",
            Move::R5 { .. } => "R5",
        }
    }
}
