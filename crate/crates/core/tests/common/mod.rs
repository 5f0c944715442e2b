//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rp3kh::algebra::{Dyad, GradedSpace, LinearMap};
use rp3kh::poly::PoincarePoly;

/// Knot Atlas sign rule.
fn positive(x: &[usize; 4]) -> bool {
    let (j, l) = (x[1] as i64, x[3] as i64);
    j - l == 1 || l - j > 1
}

/// Circles of a state as a label -> circle map. Bit 0 joins (i,j),(k,l).
fn circles(pd: &[[usize; 4]], state: u32, mirror: bool) -> (Vec<usize>, usize) {
    let labels = pd.iter().flatten().max().copied().unwrap() + 1;
    let mut parent: Vec<usize> = (0..labels).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (c, x) in pd.iter().enumerate() {
        let bit = (state >> c & 1 == 1) != mirror;
        let pairs = if bit { [(x[0], x[3]), (x[1], x[2])] } else { [(x[0], x[1]), (x[2], x[3])] };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let used: Vec<usize> = pd.iter().flatten().copied().collect();
    let mut ids = BTreeMap::new();
    let mut of = vec![usize::MAX; labels];
    for &l in &used {
        let r = find(&mut parent, l);
        let next = ids.len();
        of[l] = *ids.entry(r).or_insert(next);
    }
    (of, ids.len())
}

fn rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        r += 1;
    }
    r
}

/// Ordinary reduced Khovanov homology over F₂ from a PD code, using only
/// label bookkeeping and dense elimination.
/// `(i, q) -> dim` of reduced Khovanov homology, marked on PD label 1, with
/// the unknot normalized to `q⁰`.
pub fn reduced_khovanov(pd: &[[usize; 4]], mirror: bool) -> BTreeMap<(i32, i32), usize> {
    let n = pd.len();
    let npos = pd.iter().filter(|x| positive(x) != mirror).count() as i32;
    let nneg = n as i32 - npos;
    // generators: (state, labels bitmask with 1 = v-), marked circle forced to v-
    let mut gens: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n + 1];
    let mut info = BTreeMap::new();
    for s in 0..1u32 << n {
        let (of, k) = circles(pd, s, mirror);
        let marked = of[1];
        let r = s.count_ones() as usize;
        for labels in 0..1u32 << k {
            if labels >> marked & 1 == 1 {
                gens[r].push((s, labels));
            }
        }
        info.insert(s, (of, k));
    }
    let qdeg = |s: u32, labels: u32| {
        let k = info[&s].1 as i32;
        let minus = labels.count_ones() as i32;
        (k - 2 * minus) + 1 + s.count_ones() as i32 + npos - 2 * nneg
    };
    // differential from level r to r+1 as dense rows indexed by target
    let image = |s: u32, labels: u32, c: usize| -> Vec<u32> {
        let t = s | 1 << c;
        let (of_s, ks) = &info[&s];
        let (of_t, kt) = &info[&t];
        let x = pd[c];
        let src: Vec<usize> = x.iter().map(|&l| of_s[l]).collect();
        let dst: Vec<usize> = x.iter().map(|&l| of_t[l]).collect();
        let mut s_ids = src.clone();
        s_ids.sort();
        s_ids.dedup();
        let mut t_ids = dst.clone();
        t_ids.sort();
        t_ids.dedup();
        // carry untouched circles
        let mut base = 0u32;
        for a in 0..*ks {
            if !s_ids.contains(&a) {
                let l = (0..of_s.len()).find(|&l| of_s[l] == a).unwrap();
                base |= (labels >> a & 1) << of_t[l];
            }
        }
        let _ = kt;
        match (s_ids.len(), t_ids.len()) {
            (2, 1) => {
                let (a, b) = (labels >> s_ids[0] & 1, labels >> s_ids[1] & 1);
                if a == 1 && b == 1 {
                    vec![]
                } else {
                    vec![base | (a | b) << t_ids[0]]
                }
            }
            (1, 2) => {
                let a = labels >> s_ids[0] & 1;
                if a == 1 {
                    vec![base | 1 << t_ids[0] | 1 << t_ids[1]]
                } else {
                    vec![base | 1 << t_ids[0], base | 1 << t_ids[1]]
                }
            }
            _ => unreachable!("planar diagrams have no 1->1 edges"),
        }
    };
    let mut out = BTreeMap::new();
    let mut ranks = vec![BTreeMap::<i32, usize>::new(); n + 1];
    for r in 0..n {
        let index: BTreeMap<(u32, u32), usize> = gens[r + 1].iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut by_q: BTreeMap<i32, Vec<Vec<u8>>> = BTreeMap::new();
        for &(s, labels) in &gens[r] {
            let mut row = vec![0u8; gens[r + 1].len()];
            for c in (0..n).filter(|&c| s >> c & 1 == 0) {
                for t in image(s, labels, c) {
                    let tgt = (s | 1 << c, t);
                    if let Some(&i) = index.get(&tgt) {
                        row[i] ^= 1;
                    }
                }
            }
            by_q.entry(qdeg(s, labels)).or_default().push(row);
        }
        for (q, rows) in by_q {
            ranks[r].insert(q, rank(rows));
        }
    }
    for r in 0..=n {
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for &(s, labels) in &gens[r] {
            *dims.entry(qdeg(s, labels)).or_insert(0) += 1;
        }
        for (q, dim) in dims {
            let out_rank = ranks[r].get(&q).copied().unwrap_or(0);
            let in_rank = if r == 0 { 0 } else { ranks[r - 1].get(&q).copied().unwrap_or(0) };
            let h = dim - out_rank - in_rank;
            if h > 0 {
                out.insert((r as i32 - nneg, q), h);
            }
        }
    }
    out
}

pub fn as_poly(m: &BTreeMap<(i32, i32), usize>) -> PoincarePoly {
    PoincarePoly::from_terms(m.iter().map(|(&(i, q), &d)| (i, q, d as i64)))
}

/// A random dyad: spaces of dimension at most 4 with degrees in [−2, 2] and
/// random degree −1 maps, pruned until both composites vanish.
pub fn random_dyad(rng: &mut impl Rng, name: String) -> Dyad {
    let space = |rng: &mut dyn rand::RngCore, prefix: &str| {
        let dim = rng.gen_range(0..=4);
        GradedSpace::new((0..dim).map(|i| (format!("{prefix}{i}"), rng.gen_range(-2..=2))))
    };
    let v0 = space(rng, "x");
    let v1 = space(rng, "y");
    let random_map = |rng: &mut dyn rand::RngCore, from: &GradedSpace, to: &GradedSpace| LinearMap {
        cols: (0..from.dim())
            .map(|i| (0..to.dim()).filter(|&j| to.qdeg(j) == from.qdeg(i) - 1 && rng.gen_bool(0.5)).collect())
            .collect(),
        shift: -1,
    };
    let f = random_map(rng, &v0, &v1);
    let mut g = random_map(rng, &v1, &v0);
    // Force f∘g = g∘f = 0: drop columns of g that break either composite.
    for _ in 0..8 {
        let bad_fg = f.compose(&g);
        let gf = g.compose(&f);
        if bad_fg.is_zero() && gf.is_zero() {
            break;
        }
        for (i, col) in bad_fg.cols.iter().enumerate() {
            if !col.is_empty() {
                g.cols[i].clear();
            }
        }
        if !g.compose(&f).is_zero() {
            for i in 0..v1.dim() {
                let hits_image = (0..v0.dim()).any(|k| f.cols[k].contains(&i));
                if hits_image {
                    g.cols[i].clear();
                }
            }
        }
    }
    let d = Dyad { name, v0, v1, f, g };
    assert!(d.validate().is_empty(), "{:?}", d.validate());
    d
}

