//! Ordinary reduced Khovanov homology over F₂, computed from a PD code with
//! nothing but label bookkeeping and dense elimination, against `a0`.

mod common;

use common::{as_poly, reduced_khovanov};
use rp3kh::algebra::Dyad;
use rp3kh::complex::{build_default, Variant};
use rp3kh::corpus::KNOT_PDS;
use rp3kh::diagram::from_pd;
use rp3kh::homology::poincare;
use rp3kh::poly::{LaurentQ, PoincarePoly};
use rp3kh::skein::jones;

#[test]
fn oracle_trefoil_is_known() {
    let pd = KNOT_PDS[0].1;
    let left = as_poly(&reduced_khovanov(pd, false));
    assert_eq!(left, PoincarePoly::from_terms([(-3, -8, 1), (-2, -6, 1), (0, -2, 1)]));
    assert_eq!(left.total(), 3);
    assert_eq!(left.at_t_minus_one(), LaurentQ::from_terms([(-2, 1), (-6, 1), (-8, -1)]));
}

#[test]
fn a0_matches_ordinary_reduced_khovanov() {
    let a0 = Dyad::builtin("a0").unwrap();
    let determinants = [3, 5, 5, 7, 9, 11, 13, 7];
    for ((name, pd), det) in KNOT_PDS.iter().zip(determinants) {
        for mirror in [false, true] {
            let mut d = from_pd(name, pd).unwrap();
            if mirror {
                d = d.mirror();
            }
            let oracle = as_poly(&reduced_khovanov(pd, mirror));
            let ours = poincare(&build_default(&d, &a0, Variant::Reduced).unwrap()).unwrap();
            assert_eq!(ours, oracle, "{name} mirror={mirror}");
            // alternating knots are thin: total rank is the determinant
            assert_eq!(oracle.total(), det, "{name}");
            assert_eq!(oracle.at_t_minus_one(), jones(&d, 0).unwrap(), "{name}");
        }
    }
}
