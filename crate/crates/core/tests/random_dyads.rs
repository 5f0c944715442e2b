//! d² = 0 for random dyads: small graded spaces, random degree −1 maps with
//! both composites zero.

mod common;

use common::random_dyad;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rp3kh::algebra::Dyad;
use rp3kh::complex::{build_default, Variant};
use rp3kh::corpus::{corpus, Family};

#[test]
fn d_squared_vanishes_for_random_dyads() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let dyads: Vec<Dyad> = (0..50).map(|i| random_dyad(&mut rng, format!("random{i}"))).collect();
    assert!(dyads.iter().filter(|d| !d.maps_vanish()).count() >= 10);
    let entries: Vec<_> = corpus().into_iter().filter(|e| e.family != Family::Class1).collect();
    entries.par_iter().for_each(|e| {
        for a in &dyads {
            for v in [Variant::Reduced, Variant::Unreduced] {
                let c = build_default(&e.diagram, a, v).unwrap();
                assert!(c.verify_d_squared().is_ok(), "{} {} {v:?}", e.name(), a.name);
            }
        }
    });
}
