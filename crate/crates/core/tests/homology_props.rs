//! Properties of the elimination and of the text format.

use proptest::prelude::*;
use rp3kh::algebra::builtin_dyads;
use rp3kh::complex::{build_default, Variant};
use rp3kh::corpus::lookup;
use rp3kh::homology::{homology_dims, rank_of_columns};
use rp3kh::poly::PoincarePoly;

fn dense_rank(cols: &[Vec<u32>], nrows: usize) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..nrows).map(|r| cols.iter().map(|c| c.iter().filter(|&&x| x as usize == r).count() % 2 == 1).collect()).collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..nrows).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..nrows {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn sparse_rank_matches_dense(cols in prop::collection::vec(prop::collection::btree_set(0u32..80, 0..6), 0..40)) {
        let cols: Vec<Vec<u32>> = cols.into_iter().map(|s| s.into_iter().collect()).collect();
        prop_assert_eq!(rank_of_columns(&cols, 80), dense_rank(&cols, 80));
    }

    #[test]
    fn poincare_text_round_trips(terms in prop::collection::vec((-4i32..4, -9i32..9, 1i64..4), 0..8)) {
        let p = PoincarePoly::from_terms(terms);
        prop_assert_eq!(PoincarePoly::parse(&p.to_string()).unwrap(), p);
    }

    /// Reordering each chain group's basis does not change homology.
    #[test]
    fn homology_ignores_basis_order(seed in any::<u64>(), which in 0usize..5) {
        let d = lookup("p1knot_r5").unwrap();
        let a = &builtin_dyads()[which];
        let c = build_default(&d, a, Variant::Reduced).unwrap();
        let mut shuffled = c.clone();
        let mut state = seed | 1;
        let mut next = || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
        let perms: Vec<Vec<usize>> = c.levels.iter().map(|l| {
            let mut p: Vec<usize> = (0..l.len()).collect();
            for i in (1..p.len()).rev() { p.swap(i, (next() % (i as u64 + 1)) as usize); }
            p
        }).collect();
        // perms[l][new] = old
        for (l, p) in perms.iter().enumerate() {
            shuffled.levels[l] = p.iter().map(|&old| c.levels[l][old]).collect();
        }
        for l in 0..c.diff.len() {
            let mut inv = vec![0u32; perms[l + 1].len()];
            for (new, &old) in perms[l + 1].iter().enumerate() { inv[old] = new as u32; }
            shuffled.diff[l] = perms[l].iter().map(|&old| {
                let mut t: Vec<u32> = c.diff[l][old].iter().map(|&x| inv[x as usize]).collect();
                t.sort_unstable();
                t
            }).collect();
        }
        prop_assert_eq!(homology_dims(&shuffled).unwrap(), homology_dims(&c).unwrap());
    }
}
