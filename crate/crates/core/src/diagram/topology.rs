//! Faces of the diagram complement, computed on the orientation double cover.
//!
//! The double cover of RP² is a sphere made of two copies of the disk: the
//! `+` sheet is the disk itself, the `-` sheet its antipodal image, so the
//! rotation at every crossing is reversed there. Boundary point `b_j` becomes
//! the equator vertex `E_j`, where the `+` lift of the arc at `b_j` meets the
//! `-` lift of the arc at `b_{j+k}`. Faces are orbits of
//! `d -> next_ccw(twin(d))`, which keeps each face on the right of its darts.

use crate::util::UnionFind;

use super::{Arc, DiagramRP2, Endpoint};

/// A face of RP² minus the diagram, identified with its pair of lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef(pub usize);

/// Face data of the double cover.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    /// Number of lifted faces (faces of the sphere minus the lifted diagram).
    pub lifted: usize,
    /// Deck involution on lifted faces.
    pub deck: Vec<usize>,
    /// The two lifts of each face orbit (equal for a self-conjugate orbit).
    pub orbits: Vec<[usize; 2]>,
    pub orbit_of: Vec<usize>,
    /// `corners[c][sheet][j]`: lifted face at corner `j` (between slots `j`
    /// and `j+1`) of the lift of crossing `c` to `sheet`.
    pub corners: Vec<[[usize; 4]; 2]>,
    /// `arc_sides[a][sheet]`: the lifted faces on either side of the lift of arc `a`.
    pub arc_sides: Vec<[[usize; 2]; 2]>,
    /// `(V, E, F)` of the lifted map including the equator (one sheet for
    /// affine diagrams).
    pub euler: (i64, i64, i64),
}

impl FaceComplex {
    pub fn face_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.euler;
        v - e + f
    }
}

/// Orbits of `d -> next[twin[d]]`, numbered by their smallest dart.
pub(crate) fn trace_faces(twin: &[usize], next: &[usize]) -> (Vec<usize>, usize) {
    let mut face = vec![usize::MAX; twin.len()];
    let mut count = 0;
    for start in 0..twin.len() {
        if face[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while face[d] == usize::MAX {
            face[d] = count;
            d = next[twin[d]];
        }
        count += 1;
    }
    (face, count)
}

/// Rotation system of the disk map: crossings and boundary points as
/// vertices, arcs and boundary segments as edges. Crossing slot `s` of `c`
/// is dart `4c + s`; boundary point `j` has ports `[next, arc, prev]` at
/// `4n + 3j + port`. Unused darts have `twin == usize::MAX`.
pub(crate) fn disk_map(d: &DiagramRP2) -> (Vec<usize>, Vec<usize>) {
    let n = d.n();
    let b = d.boundary_points;
    let darts = 4 * n + 3 * b;
    let bd = |j: usize, port: usize| 4 * n + 3 * j + port;
    let mut twin = vec![usize::MAX; darts];
    let mut next = vec![0; darts];
    for c in 0..n {
        for s in 0..4 {
            next[4 * c + s] = 4 * c + (s + 1) % 4;
        }
    }
    for j in 0..b {
        for p in 0..3 {
            next[bd(j, p)] = bd(j, (p + 1) % 3);
        }
        let j1 = (j + 1) % b;
        twin[bd(j, 0)] = bd(j1, 2);
        twin[bd(j1, 2)] = bd(j, 0);
    }
    for arc in &d.arcs {
        if let Arc::Path(x, y) = *arc {
            let (p, q) = (disk_dart(d, x), disk_dart(d, y));
            twin[p] = q;
            twin[q] = p;
        }
    }
    (twin, next)
}

/// Disk-map dart of an arc endpoint.
pub(crate) fn disk_dart(d: &DiagramRP2, e: Endpoint) -> usize {
    match e {
        Endpoint::Slot { crossing, slot } => 4 * crossing + slot as usize,
        Endpoint::Boundary(j) => 4 * d.n() + 3 * j + 1,
    }
}

/// Planar face of every disk-map dart (face on the right of the dart).
pub(crate) fn disk_faces(d: &DiagramRP2) -> (Vec<usize>, usize) {
    let (twin, next) = disk_map(d);
    trace_faces(&twin, &next)
}

/// Connectivity and Euler check of the disk map.
pub(crate) fn check_planar(d: &DiagramRP2) -> Result<(), String> {
    if d.is_free_loops() {
        return Ok(());
    }
    let (twin, next) = disk_map(d);
    let darts = twin.len();
    if twin.contains(&usize::MAX) {
        return Err("some endpoint is not used by an arc".into());
    }
    let mut uf = UnionFind::new(darts);
    for dd in 0..darts {
        uf.union(dd, twin[dd]);
        uf.union(dd, next[dd]);
    }
    if darts == 0 {
        return Ok(());
    }
    if uf.count() != 1 {
        return Err(format!("diagram is disconnected ({} pieces)", uf.count()));
    }
    let (_, f) = trace_faces(&twin, &next);
    let v = (d.n() + d.boundary_points) as i64;
    let e = (darts / 2) as i64;
    let chi = v - e + f as i64;
    if chi != 2 {
        return Err(format!("arcs are not planar in the disk (V - E + F = {chi})"));
    }
    if d.boundary_points == 0 && d.outer_face >= f {
        return Err(format!("outer_face {} out of range ({} faces)", d.outer_face, f));
    }
    Ok(())
}

impl DiagramRP2 {
    /// Face structure of the double cover. The diagram must be valid.
    pub fn face_complex(&self) -> FaceComplex {
        if self.is_free_loops() {
            return free_loop_faces(self);
        }
        let n = self.n();
        let b = self.boundary_points;
        let k = self.k();
        let darts = 8 * n + 4 * b;
        let xd = |c: usize, sheet: usize, s: usize| 8 * c + 4 * sheet + s;
        let ed = |j: usize, port: usize| 8 * n + 4 * j + port;
        let port_of = |e: Endpoint, sheet: usize| match e {
            Endpoint::Slot { crossing, slot } => xd(crossing, sheet, slot as usize),
            Endpoint::Boundary(j) if sheet == 0 => ed(j, 1),
            Endpoint::Boundary(j) => ed((j + k) % b, 3),
        };
        let mut twin = vec![usize::MAX; darts];
        let mut next = vec![0; darts];
        let mut deck_dart = vec![0; darts];
        for c in 0..n {
            for s in 0..4 {
                next[xd(c, 0, s)] = xd(c, 0, (s + 1) % 4);
                next[xd(c, 1, s)] = xd(c, 1, (s + 3) % 4);
                deck_dart[xd(c, 0, s)] = xd(c, 1, s);
                deck_dart[xd(c, 1, s)] = xd(c, 0, s);
            }
        }
        for j in 0..b {
            for p in 0..4 {
                next[ed(j, p)] = ed(j, (p + 1) % 4);
            }
            let j1 = (j + 1) % b;
            twin[ed(j, 0)] = ed(j1, 2);
            twin[ed(j1, 2)] = ed(j, 0);
            let jk = (j + k) % b;
            deck_dart[ed(j, 0)] = ed(jk, 0);
            deck_dart[ed(j, 2)] = ed(jk, 2);
            deck_dart[ed(j, 1)] = ed(jk, 3);
            deck_dart[ed(j, 3)] = ed(jk, 1);
        }
        for arc in &self.arcs {
            if let Arc::Path(x, y) = *arc {
                for sheet in 0..2 {
                    let (p, q) = (port_of(x, sheet), port_of(y, sheet));
                    twin[p] = q;
                    twin[q] = p;
                }
            }
        }
        let (face, f) = trace_faces(&twin, &next);
        // For affine diagrams the two sheets are separate spheres until the
        // crosscap join; report the count of a single sheet.
        let copies = if b > 0 { 1 } else { 2 };
        let v = ((2 * n + b) / copies) as i64;
        let e = (darts / 2 / copies) as i64;
        let f_count = (f / copies) as i64;

        // Merge across the equator (or join the two outer faces when k = 0).
        let mut uf = UnionFind::new(f);
        if b > 0 {
            for j in 0..b {
                uf.union(face[ed(j, 0)], face[ed((j + 1) % b, 2)]);
            }
        } else {
            let outer = self.outer_face_plus(&face);
            let outer_dart = (0..darts).find(|&dd| dd % 8 < 4 && face[dd] == outer);
            if let Some(dd) = outer_dart {
                uf.union(face[dd], face[twin[deck_dart[dd]]]);
            }
        }
        // Renumber merged faces by smallest dart.
        let mut id = vec![usize::MAX; f];
        let mut lifted = 0;
        let mut lf = vec![0; darts];
        for dd in 0..darts {
            let r = uf.find(face[dd]);
            if id[r] == usize::MAX {
                id[r] = lifted;
                lifted += 1;
            }
            lf[dd] = id[r];
        }
        let mut deck = vec![usize::MAX; lifted];
        for dd in 0..darts {
            let img = lf[twin[deck_dart[dd]]];
            debug_assert!(deck[lf[dd]] == usize::MAX || deck[lf[dd]] == img);
            deck[lf[dd]] = img;
        }
        let mut orbit_of = vec![usize::MAX; lifted];
        let mut orbits = Vec::new();
        for x in 0..lifted {
            if orbit_of[x] == usize::MAX {
                orbit_of[x] = orbits.len();
                orbit_of[deck[x]] = orbits.len();
                orbits.push([x, deck[x]]);
            }
        }
        let corners = (0..n)
            .map(|c| {
                let mut out = [[0; 4]; 2];
                for j in 0..4 {
                    out[0][j] = lf[xd(c, 0, (j + 1) % 4)];
                    out[1][j] = lf[xd(c, 1, j)];
                }
                out
            })
            .collect();
        let arc_sides = self
            .arcs
            .iter()
            .map(|arc| match *arc {
                Arc::Path(x, _) => {
                    let mut out = [[0; 2]; 2];
                    for (sheet, side) in out.iter_mut().enumerate() {
                        let p = port_of(x, sheet);
                        *side = [lf[p], lf[twin[p]]];
                    }
                    out
                }
                Arc::Loop => unreachable!("loops only occur in free-loop diagrams"),
            })
            .collect();
        FaceComplex { lifted, deck, orbits, orbit_of, corners, arc_sides, euler: (v, e, f_count) }
    }

    /// Planar face id (in the `+` sheet numbering) of the outer face of an affine diagram.
    fn outer_face_plus(&self, face: &[usize]) -> usize {
        // Planar faces of the + sheet are numbered in the same order as the
        // faces of the single-copy map, since + darts precede - darts per crossing
        // and both keys grow with 4c + s.
        let mut seen = Vec::new();
        for c in 0..self.n() {
            for s in 0..4 {
                let f = face[8 * c + s];
                if !seen.contains(&f) {
                    seen.push(f);
                }
            }
        }
        seen.sort_unstable();
        seen[self.outer_face.min(seen.len() - 1)]
    }
}

fn free_loop_faces(d: &DiagramRP2) -> FaceComplex {
    let m = d.arcs.len();
    let lifted = 1 + 2 * m;
    let mut deck = vec![0; lifted];
    let mut orbits = vec![[0, 0]];
    let mut orbit_of = vec![0; lifted];
    let mut arc_sides = Vec::new();
    for i in 0..m {
        let (p, q) = (1 + 2 * i, 2 + 2 * i);
        deck[p] = q;
        deck[q] = p;
        orbit_of[p] = i + 1;
        orbit_of[q] = i + 1;
        orbits.push([p, q]);
        arc_sides.push([[p, 0], [q, 0]]);
    }
    // Each lifted loop is a vertex-free circle: V = E, F = 2m + 1.
    FaceComplex {
        lifted,
        deck,
        orbits,
        orbit_of,
        corners: vec![],
        arc_sides,
        euler: (0, 0, 2),
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::from_pd;

    #[test]
    fn trefoil_faces() {
        let d = from_pd("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let fc = d.face_complex();
        assert_eq!(fc.euler, (3, 6, 5));
        // 5 planar faces, the outer one is self-conjugate after the crosscap join.
        assert_eq!(fc.lifted, 9);
        assert_eq!(fc.face_count(), 5);
        assert_eq!(fc.orbits.iter().filter(|o| o[0] == o[1]).count(), 1);
    }

    #[test]
    fn deck_is_free_involution_off_mobius_faces() {
        let d = from_pd("4_1", &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap();
        let fc = d.face_complex();
        for x in 0..fc.lifted {
            assert_eq!(fc.deck[fc.deck[x]], x);
        }
    }
}
