//! Encircling by orientability: cutting RP² along a two-sided circle leaves a
//! disk and a Möbius band, and the disk side is the orientable one. The
//! oracle flood-fills the sides of arcs in the disk model, gluing antipodal
//! boundary segments with an orientation flip.

use std::sync::Arc as Shared;

use rp3kh::corpus::corpus;
use rp3kh::diagram::{Arc, DiagramRP2, Endpoint, FaceRef, Smoothing};
use rp3kh::State;

/// Union-find carrying the parity of the path to the root.
struct ParityUf {
    parent: Vec<usize>,
    flip: Vec<bool>,
    odd_cycle: Vec<bool>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), flip: vec![false; n], odd_cycle: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, f) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.flip[x] ^= f;
        (r, self.flip[x])
    }

    fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            if fa ^ fb != flip {
                self.odd_cycle[ra] = true;
            }
            return;
        }
        self.parent[ra] = rb;
        self.flip[ra] = fa ^ fb ^ flip;
        self.odd_cycle[rb] |= self.odd_cycle[ra];
    }
}

/// Piece id of a side of arc `a`: 0 = left of the stored direction.
fn piece(a: usize, right: bool) -> usize {
    2 * a + right as usize
}

/// The side of arc `a` lying to the left (`left = true`) when looking away
/// from its endpoint `end` (0 = first stored end).
fn side_from_end(a: usize, end: usize, left: bool) -> usize {
    piece(a, (end == 0) != left)
}

/// Whether the side of circle `circle` containing the face at corner `corner`
/// of crossing `c` is orientable, plus the number of complementary regions.
/// `outer`: for affine diagrams, a corner of the face containing the crosscap.
fn oracle(d: &DiagramRP2, sm: &Smoothing, circle: usize, (c, corner): (usize, usize), outer: Option<(usize, usize)>) -> (bool, usize) {
    let m = d.arcs.len();
    let mut uf = ParityUf::new(2 * m);
    let ends: Vec<(Endpoint, Endpoint)> = (0..m).map(|a| d.arc_ends(a).unwrap()).collect();
    let find_end = |e: Endpoint| -> (usize, usize) {
        (0..m).find_map(|a| if ends[a].0 == e { Some((a, 0)) } else if ends[a].1 == e { Some((a, 1)) } else { None }).unwrap()
    };
    let corner_piece = |x: usize, j: usize| {
        let (a, end) = find_end(Endpoint::slot(x, j as u8));
        side_from_end(a, end, true)
    };
    for x in 0..d.n() {
        for j in 0..4 {
            let (a, end) = find_end(Endpoint::slot(x, j as u8));
            let (b, end_b) = find_end(Endpoint::slot(x, ((j + 1) % 4) as u8));
            uf.union(side_from_end(a, end, true), side_from_end(b, end_b, false), false);
        }
        let (p, q) = if sm.joins_adjacent[x] { (1, 3) } else { (0, 2) };
        uf.union(corner_piece(x, p), corner_piece(x, q), false);
    }
    let b = d.boundary_points;
    if b > 0 {
        let k = b / 2;
        let segment = |j: usize| {
            let (a, end) = find_end(Endpoint::Boundary(j));
            side_from_end(a, end, false)
        };
        for j in 0..b {
            let (a, end) = find_end(Endpoint::Boundary((j + 1) % b));
            uf.union(segment(j), side_from_end(a, end, true), false);
        }
        for j in 0..k {
            uf.union(segment(j), segment(j + k), true);
        }
    }
    for a in 0..m {
        if sm.circle_of(a) != circle {
            uf.union(piece(a, false), piece(a, true), false);
        }
    }
    if let Some((x, j)) = outer {
        let (r, _) = uf.find(corner_piece(x, j));
        uf.odd_cycle[r] = true;
    }
    let mut roots: Vec<usize> = (0..2 * m).map(|x| uf.find(x).0).collect();
    let (r, _) = uf.find(corner_piece(c, corner));
    let orientable = !uf.odd_cycle[r];
    roots.sort();
    roots.dedup();
    (orientable, roots.len())
}

#[test]
fn encircles_agrees_with_orientability() {
    let mut compared = 0;
    for e in corpus() {
        let d = &e.diagram;
        if d.n() == 0 || d.n() > 5 || d.arcs.iter().any(|a| matches!(a, Arc::Loop)) {
            continue;
        }
        let fc = Shared::new(d.face_complex());
        let corner_of = |f: usize| {
            (0..d.n()).flat_map(|c| (0..4).map(move |j| (c, j))).find(|&(c, j)| fc.orbit_of[fc.corners[c][0][j]] == f)
        };
        for mask in 0..1u64 << d.n() {
            let sm = d.resolve_with(&State::from_mask(mask, d.n()), fc.clone());
            for (ci, circle) in sm.circles.iter().enumerate() {
                if circle.crosscap_parity != 0 {
                    continue;
                }
                for f in 0..fc.face_count() {
                    let Some(at) = corner_of(f) else { continue };
                    let outer = if d.is_affine() { Some(corner_of(d.outer_face).expect("outer face has a corner")) } else { None };
                    let (orientable, regions) = oracle(d, &sm, ci, at, outer);
                    assert_eq!(regions, 2, "{}: a two-sided circle cuts RP² in two", e.name());
                    assert_eq!(sm.encircles(ci, FaceRef(f)).unwrap(), orientable, "{} state {mask:b} circle {ci} face {f}", e.name());
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 1000, "{compared}");
}
