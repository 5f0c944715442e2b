//! The bundled diagram corpus.
//!
//! Affine knots come from planar diagram codes, the RP² diagrams are small
//! enumerated examples plus a few obtained by moves, and the class-1 entries
//! are links whose class in `H₁(RP²)` is nonzero.

use crate::diagram::{from_pd, Arc, DiagramRP2, Endpoint, Move};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Misses the crosscap entirely.
    Affine,
    /// Null-homologous, passes the crosscap.
    Rp2,
    /// Class 1 in `H₁(RP²; Z/2)`.
    Class1,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Rp2 => "rp2",
            Family::Class1 => "class1",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "affine" => Ok(Family::Affine),
            "rp2" => Ok(Family::Rp2),
            "class1" => Ok(Family::Class1),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub family: Family,
    pub diagram: DiagramRP2,
}

impl Entry {
    pub fn name(&self) -> &str {
        &self.diagram.name
    }
}

const P1KNOT: &str = include_str!("../data/p1knot.json");

const ENUMERATED: &[(&str, &str)] = &[
    ("rp2_n1_k2_1", include_str!("../data/corpus/rp2_n1_k2_1.json")),
    ("rp2_n1_k2_2", include_str!("../data/corpus/rp2_n1_k2_2.json")),
    ("rp2_n1_k2_3", include_str!("../data/corpus/rp2_n1_k2_3.json")),
    ("rp2_n2_k2_1", include_str!("../data/corpus/rp2_n2_k2_1.json")),
    ("rp2_n2_k2_2", include_str!("../data/corpus/rp2_n2_k2_2.json")),
    ("rp2_n2_k2_3", include_str!("../data/corpus/rp2_n2_k2_3.json")),
    ("rp2_n2_k2_4", include_str!("../data/corpus/rp2_n2_k2_4.json")),
    ("rp2_n3_k2_1", include_str!("../data/corpus/rp2_n3_k2_1.json")),
    ("rp2_n3_k2_2", include_str!("../data/corpus/rp2_n3_k2_2.json")),
    ("rp2_n3_k2_3", include_str!("../data/corpus/rp2_n3_k2_3.json")),
    ("rp2_n3_k2_4", include_str!("../data/corpus/rp2_n3_k2_4.json")),
    ("class1_n1_k1_1", include_str!("../data/corpus/class1_n1_k1_1.json")),
    ("class1_n1_k1_2", include_str!("../data/corpus/class1_n1_k1_2.json")),
    ("class1_n1_k1_3", include_str!("../data/corpus/class1_n1_k1_3.json")),
    ("class1_n2_k1_1", include_str!("../data/corpus/class1_n2_k1_1.json")),
    ("class1_n2_k1_2", include_str!("../data/corpus/class1_n2_k1_2.json")),
    ("class1_n2_k1_3", include_str!("../data/corpus/class1_n2_k1_3.json")),
    ("class1_n3_k1_1", include_str!("../data/corpus/class1_n3_k1_1.json")),
    ("class1_n3_k1_2", include_str!("../data/corpus/class1_n3_k1_2.json")),
    ("class1_n3_k1_3", include_str!("../data/corpus/class1_n3_k1_3.json")),
];

/// Knot Atlas PD codes. The 3_1 entry there is the left-handed trefoil.
pub const KNOT_PDS: &[(&str, &[[usize; 4]])] = &[
    ("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]),
    ("4_1", &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    ("5_1", &[[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]]),
    ("5_2", &[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
    ("6_1", &[[1, 4, 2, 5], [7, 10, 8, 11], [3, 9, 4, 8], [9, 3, 10, 2], [5, 12, 6, 1], [11, 6, 12, 7]]),
    ("6_2", &[[1, 4, 2, 5], [5, 10, 6, 11], [3, 9, 4, 8], [9, 3, 10, 2], [7, 12, 8, 1], [11, 6, 12, 7]]),
    ("6_3", &[[4, 2, 5, 1], [8, 4, 9, 3], [12, 9, 1, 10], [10, 5, 11, 6], [6, 11, 7, 12], [2, 8, 3, 7]]),
    ("7_1", &[[1, 8, 2, 9], [3, 10, 4, 11], [5, 12, 6, 13], [7, 14, 8, 1], [9, 2, 10, 3], [11, 4, 12, 5], [13, 6, 14, 7]]),
];

/// The three-crossing knot in RP² with five known reduced homologies.
pub fn p1knot() -> DiagramRP2 {
    DiagramRP2::from_json(P1KNOT).expect("bundled p1knot parses")
}

/// A single free loop.
pub fn unknot() -> DiagramRP2 {
    DiagramRP2 {
        name: "unknot".into(),
        boundary_points: 0,
        crossings: vec![],
        arcs: vec![Arc::Loop],
        orientation_seeds: Some(vec![0]),
        basepoint_face: None,
        marked_arc: None,
        outer_face: 0,
    }
}

/// The projective line: one arc between antipodal boundary points.
pub fn line() -> DiagramRP2 {
    DiagramRP2 {
        name: "line".into(),
        boundary_points: 2,
        crossings: vec![],
        arcs: vec![Arc::Path(Endpoint::Boundary(0), Endpoint::Boundary(1))],
        orientation_seeds: Some(vec![0]),
        basepoint_face: None,
        marked_arc: None,
        outer_face: 0,
    }
}

/// A crossingless circle passing the crosscap twice.
pub fn double_passage() -> DiagramRP2 {
    DiagramRP2 {
        name: "double_passage".into(),
        boundary_points: 4,
        crossings: vec![],
        arcs: vec![
            Arc::Path(Endpoint::Boundary(0), Endpoint::Boundary(1)),
            Arc::Path(Endpoint::Boundary(2), Endpoint::Boundary(3)),
        ],
        orientation_seeds: Some(vec![0]),
        basepoint_face: None,
        marked_arc: None,
        outer_face: 0,
    }
}

fn moved(d: &DiagramRP2, mv: Move, name: &str) -> DiagramRP2 {
    let mut out = d.apply_reidemeister(mv).unwrap_or_else(|e| panic!("{name}: {e}")).diagram;
    out.name = name.into();
    out
}

fn renamed(mut d: DiagramRP2, name: &str) -> DiagramRP2 {
    d.name = name.into();
    d
}

/// Affine knots up to seven crossings, with the right-handed trefoil and the unknot.
pub fn affine_knots() -> Vec<DiagramRP2> {
    let mut out = vec![unknot()];
    for (name, pd) in KNOT_PDS {
        let d = from_pd(name, pd).expect("bundled PD codes are valid");
        if *name == "3_1" {
            out.push(renamed(d.clone(), "3_1_left"));
            out.push(renamed(d.mirror(), "3_1_right"));
        } else {
            out.push(d);
        }
    }
    out
}

/// Every bundled diagram.
pub fn corpus() -> Vec<Entry> {
    let mut out: Vec<Entry> = affine_knots().into_iter().map(|diagram| Entry { family: Family::Affine, diagram }).collect();
    let p1 = p1knot();
    let mut rp2 = vec![
        p1.clone(),
        renamed(p1.mirror(), "p1knot_mirror"),
        moved(&p1, Move::R4 { boundary: 2 }, "p1knot_r4"),
        moved(&p1, Move::R5 { boundary: 0 }, "p1knot_r5"),
        moved(&p1, Move::R1Insert { arc: 0, side: false, over02: true }, "p1knot_r1"),
        double_passage(),
    ];
    let mut class1 = vec![line(), moved(&line(), Move::R1Insert { arc: 0, side: false, over02: false }, "line_curl")];
    for (name, json) in ENUMERATED {
        let d = DiagramRP2::from_json(json).expect("bundled corpus parses");
        debug_assert_eq!(&d.name, name);
        if d.k() % 2 == 1 {
            class1.push(d);
        } else {
            rp2.push(d);
        }
    }
    out.extend(rp2.into_iter().map(|diagram| Entry { family: Family::Rp2, diagram }));
    out.extend(class1.into_iter().map(|diagram| Entry { family: Family::Class1, diagram }));
    out
}

/// Looks up a corpus diagram by name.
pub fn lookup(name: &str) -> Option<DiagramRP2> {
    corpus().into_iter().find(|e| e.name() == name).map(|e| e.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_classified() {
        let c = corpus();
        assert!(c.len() > 30);
        for e in &c {
            let v = e.diagram.validate();
            assert!(v.is_valid(), "{}: {:?}", e.name(), v.violations);
            let expected = match e.family {
                Family::Affine => e.diagram.is_affine() && v.link_class == 0,
                Family::Rp2 => !e.diagram.is_affine() && v.link_class == 0,
                Family::Class1 => v.link_class == 1,
            };
            assert!(expected, "{} misfiled", e.name());
            assert!(e.diagram.n() <= 7);
        }
        let mut names: Vec<_> = c.iter().map(|e| e.name().to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }
}
