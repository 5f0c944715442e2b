//! Even and odd Kauffman brackets by skein recursion, and the Jones polynomials.
//!
//! Brackets use `⟨X⟩ = ⟨0-smoothing⟩ − q⟨1-smoothing⟩` and evaluate a
//! crossingless diagram with `k` circles to `(q + q⁻¹)^(k−1)`; the parity
//! variants keep only the leaves whose encircling number matches.

use std::sync::Arc as Shared;

use crate::algebra::Dyad;
use crate::complex::{build_reduced_complex, ComplexError};
use crate::diagram::{DiagramError, DiagramRP2, FaceComplex, FaceRef, State};
use crate::homology::poincare;
use crate::poly::LaurentQ;

/// Leaf filter for the recursion.
#[derive(Clone, Copy)]
enum Filter {
    Parity(FaceRef, u8),
    All,
}

fn recurse(d: &DiagramRP2, fc: &Shared<FaceComplex>, filter: Filter, bits: &mut Vec<bool>) -> Result<LaurentQ, DiagramError> {
    if bits.len() == d.n() {
        let sm = d.resolve_with(&State { bits: bits.clone() }, fc.clone());
        if let Filter::Parity(p, i) = filter {
            if sm.encircling_number(p)? != i {
                return Ok(LaurentQ::zero());
            }
        }
        let ones = bits.iter().filter(|&&b| b).count();
        let sign = if ones % 2 == 0 { 1 } else { -1 };
        return Ok(&LaurentQ::monomial(ones as i32, sign) * &LaurentQ::q_plus_q_inv().pow(sm.k() as u32 - 1));
    }
    let mut out = LaurentQ::zero();
    for b in [false, true] {
        bits.push(b);
        out += &recurse(d, fc, filter, bits)?;
        bits.pop();
    }
    Ok(out)
}

fn run(d: &DiagramRP2, filter: Filter) -> Result<LaurentQ, DiagramError> {
    d.check_null_homologous()?;
    let fc = Shared::new(d.face_complex());
    if let Filter::Parity(p, _) = filter {
        if p.0 >= fc.face_count() {
            return Err(DiagramError::NoSuchFace(p.0));
        }
    }
    if d.n() == 0 {
        return recurse(d, &fc, filter, &mut Vec::new());
    }
    let branch = |b: bool| recurse(d, &fc, filter, &mut vec![b]);
    let (zero, one) = rayon::join(|| branch(false), || branch(true));
    Ok(&zero? + &one?)
}

/// Even (`parity = 0`) or odd (`parity = 1`) bracket `⟨L⟩_i^P`.
pub fn bracket(d: &DiagramRP2, p: FaceRef, parity: u8) -> Result<LaurentQ, DiagramError> {
    run(d, Filter::Parity(p, parity))
}

/// The bracket with every leaf counted.
pub fn total_bracket(d: &DiagramRP2) -> Result<LaurentQ, DiagramError> {
    run(d, Filter::All)
}

/// `J_i = (−1)^{n−} q^{n+ − 2n−} ⟨L⟩_i` at the diagram's basepoint face.
pub fn jones(d: &DiagramRP2, parity: u8) -> Result<LaurentQ, DiagramError> {
    let (np, nm) = d.crossing_signs()?;
    let b = bracket(d, d.base_face()?, parity)?;
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(&LaurentQ::monomial(np as i32 - 2 * nm as i32, sign) * &b)
}

/// `qdim(V₀)·J₀ + qdim(V₁)·J₁`.
pub fn expected_euler(d: &DiagramRP2, a: &Dyad) -> Result<LaurentQ, DiagramError> {
    Ok(&a.v0.qdim() * &jones(d, 0)? + &a.v1.qdim() * &jones(d, 1)?)
}

/// Whether the Euler characteristic of the reduced homology matches the skein side.
pub fn check_euler(d: &DiagramRP2, a: &Dyad) -> Result<bool, ComplexError> {
    let c = build_reduced_complex(d, a, d.base_face()?, d.marked_arc.unwrap_or(0))?;
    let h = poincare(&c)?;
    Ok(h.at_t_minus_one() == expected_euler(d, a)?)
}
