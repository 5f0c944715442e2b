//! Homology over F₂ of the complexes built in [`crate::complex`].

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::ChainComplex;
use crate::poly::{LaurentQ, PoincarePoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the differential does not preserve the quantum grading")]
    NotQGraded,
    #[error("d∘d is nonzero at level {level}: generator {source_gen} reaches {target} an odd number of times")]
    NotAComplex { level: usize, source_gen: usize, target: u32 },
}

/// Rank over F₂ of a sparse matrix given by columns (each a list of row indices below `nrows`).
pub fn rank_of_columns(cols: &[Vec<u32>], nrows: usize) -> usize {
    let words = nrows.div_ceil(64).max(1);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    for col in cols {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r as usize / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(lead) = v.iter().position(|&w| w != 0).map(|i| i * 64 + v[i].trailing_zeros() as usize) else {
                break;
            };
            match pivots.get(&lead) {
                Some(p) => v.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Splits each level by a grading key and returns, per level, the slice of
/// every generator and its position inside the slice.
fn slices(c: &ChainComplex, key: impl Fn(i32) -> i32) -> Vec<(Vec<i32>, Vec<usize>, HashMap<i32, usize>)> {
    c.levels
        .iter()
        .map(|gens| {
            let mut sizes: HashMap<i32, usize> = HashMap::new();
            let mut slice = Vec::with_capacity(gens.len());
            let mut pos = Vec::with_capacity(gens.len());
            for g in gens {
                let s = key(g.q);
                let e = sizes.entry(s).or_insert(0);
                slice.push(s);
                pos.push(*e);
                *e += 1;
            }
            (slice, pos, sizes)
        })
        .collect()
}

/// Dimensions of homology per `(level, slice key)`.
fn graded_dims(c: &ChainComplex, key: impl Fn(i32) -> i32) -> Result<BTreeMap<(usize, i32), usize>, HomologyError> {
    c.verify_d_squared()
        .map_err(|(level, source_gen, target)| HomologyError::NotAComplex { level, source_gen, target })?;
    let sl = slices(c, key);
    // rank of d_l restricted to each slice
    let ranks: Vec<HashMap<i32, usize>> = (0..c.diff.len())
        .into_par_iter()
        .map(|l| {
            let (src_slice, _, sizes) = &sl[l];
            let (_, dst_pos, dst_sizes) = &sl[l + 1];
            let mut cols: HashMap<i32, Vec<Vec<u32>>> = HashMap::new();
            for (g, targets) in c.diff[l].iter().enumerate() {
                cols.entry(src_slice[g])
                    .or_default()
                    .push(targets.iter().map(|&t| dst_pos[t as usize] as u32).collect());
            }
            sizes
                .keys()
                .map(|s| {
                    let r = cols.get(s).map_or(0, |cs| rank_of_columns(cs, dst_sizes.get(s).copied().unwrap_or(0)));
                    (*s, r)
                })
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    for (l, (_, _, sizes)) in sl.iter().enumerate() {
        for (&s, &dim) in sizes {
            let out_rank = ranks.get(l).and_then(|r| r.get(&s)).copied().unwrap_or(0);
            let in_rank = if l == 0 { 0 } else { ranks[l - 1].get(&s).copied().unwrap_or(0) };
            let h = dim - out_rank - in_rank;
            if h > 0 {
                out.insert((l, s), h);
            }
        }
    }
    Ok(out)
}

/// Bigraded homology dimensions `(i, q) -> dim`.
pub fn homology_dims(c: &ChainComplex) -> Result<BTreeMap<(i32, i32), usize>, HomologyError> {
    if !c.q_graded {
        return Err(HomologyError::NotQGraded);
    }
    Ok(graded_dims(c, |q| q)?.into_iter().map(|((l, q), d)| ((c.homological_degree(l), q), d)).collect())
}

/// Homology dimensions per homological degree, ignoring the quantum grading.
pub fn homology_dims_t(c: &ChainComplex) -> Result<BTreeMap<i32, usize>, HomologyError> {
    Ok(graded_dims(c, |_| 0)?.into_iter().map(|((l, _), d)| (c.homological_degree(l), d)).collect())
}

/// Poincaré polynomial `Σ dim H^{i,q} t^i q^q`.
pub fn poincare(c: &ChainComplex) -> Result<PoincarePoly, HomologyError> {
    Ok(PoincarePoly::from_terms(homology_dims(c)?.into_iter().map(|((i, q), d)| (i, q, d as i64))))
}

/// Poincaré polynomial in `t` alone (all terms at `q^0`).
pub fn poincare_t(c: &ChainComplex) -> Result<PoincarePoly, HomologyError> {
    Ok(PoincarePoly::from_terms(homology_dims_t(c)?.into_iter().map(|(i, d)| (i, 0, d as i64))))
}

/// The q-graded Poincaré polynomial when the complex is q-graded, else the one in `t` alone.
pub fn poincare_any(c: &ChainComplex) -> Result<PoincarePoly, HomologyError> {
    if c.q_graded {
        poincare(c)
    } else {
        poincare_t(c)
    }
}

/// `p(t = −1)`.
pub fn euler_characteristic(p: &PoincarePoly) -> LaurentQ {
    p.at_t_minus_one()
}

/// Graded Euler characteristic of the chain groups, `Σ (-1)^i q^q dim C^{i,q}`.
pub fn chain_euler(c: &ChainComplex) -> LaurentQ {
    let mut out = LaurentQ::zero();
    for (l, gens) in c.levels.iter().enumerate() {
        let sign = if c.homological_degree(l).rem_euclid(2) == 0 { 1 } else { -1 };
        for g in gens {
            out.add_term(g.q, sign);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(rank_of_columns(&[vec![0, 1], vec![1, 2], vec![0, 2]], 3), 2);
        assert_eq!(rank_of_columns(&[vec![0], vec![1], vec![2]], 3), 3);
        assert_eq!(rank_of_columns(&[vec![], vec![]], 0), 0);
        assert_eq!(rank_of_columns(&[vec![70, 3], vec![3], vec![70]], 71), 2);
    }
}
