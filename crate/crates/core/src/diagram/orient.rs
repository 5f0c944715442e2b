//! Link components, orientations and crossing signs.

use thiserror::Error;

use super::{Arc, DiagramRP2, Endpoint, State};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientError {
    #[error("diagram carries no orientation")]
    Unoriented,
    #[error("orientation seed {0} is not an arc")]
    BadSeed(usize),
    #[error("component containing arc {0} has no orientation seed")]
    Unseeded(usize),
    #[error("two seeds orient the component containing arc {0}")]
    DoubleSeed(usize),
}

/// A link component as a cyclic sequence of `(arc, forward)` pairs, where
/// `forward` means the traversal runs from the arc's first endpoint to its second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<(usize, bool)>,
    pub boundary_passages: usize,
}

/// Walks the strand from `(arc, forward)` until it closes up.
fn walk(d: &DiagramRP2, at: &[(usize, usize)], start: usize) -> Component {
    let mut arcs = Vec::new();
    let mut passages = 0;
    let (mut a, mut fwd) = (start, true);
    loop {
        arcs.push((a, fwd));
        let Arc::Path(x, y) = d.arcs[a] else { break };
        let exit = if fwd { y } else { x };
        if matches!(exit, Endpoint::Boundary(_)) {
            passages += 1;
        }
        let next = d.straight_through(exit);
        let (na, end) = at[d.key(next)];
        a = na;
        fwd = end == 0;
        if a == start && fwd {
            break;
        }
    }
    Component { arcs, boundary_passages: passages }
}

/// Components ordered by their lowest arc id; each starts at that arc, forward.
/// Assumes every endpoint is used exactly once.
pub fn components(d: &DiagramRP2) -> Vec<Component> {
    let at = d.incidence();
    let mut seen = vec![false; d.arcs.len()];
    let mut out = Vec::new();
    for a in 0..d.arcs.len() {
        if seen[a] {
            continue;
        }
        let comp = walk(d, &at, a);
        for &(b, _) in &comp.arcs {
            seen[b] = true;
        }
        out.push(comp);
    }
    out
}

/// Direction of every arc (`true` = first endpoint to second) from the seeds.
pub fn orientation(d: &DiagramRP2) -> Result<Vec<bool>, OrientError> {
    let seeds = d.orientation_seeds.as_ref().ok_or(OrientError::Unoriented)?;
    let at = d.incidence();
    let mut dir: Vec<Option<bool>> = vec![None; d.arcs.len()];
    for &s in seeds {
        if s >= d.arcs.len() {
            return Err(OrientError::BadSeed(s));
        }
        if dir[s].is_some() {
            return Err(OrientError::DoubleSeed(s));
        }
        for (a, fwd) in walk(d, &at, s).arcs {
            if dir[a].is_some() {
                return Err(OrientError::DoubleSeed(s));
            }
            dir[a] = Some(fwd);
        }
    }
    dir.iter()
        .enumerate()
        .map(|(a, x)| x.ok_or(OrientError::Unseeded(a)))
        .collect()
}

impl DiagramRP2 {
    /// Arc directions derived from the orientation seeds.
    pub fn orientation(&self) -> Result<Vec<bool>, OrientError> {
        orientation(self)
    }

    pub fn components(&self) -> Vec<Component> {
        components(self)
    }

    /// Sign of every crossing: `+1` when the under-strand enters one slot
    /// counterclockwise after the over-strand enters.
    pub fn signs(&self) -> Result<Vec<i8>, OrientError> {
        let dir = orientation(self)?;
        let mut incoming = vec![[false; 4]; self.n()];
        for (a, arc) in self.arcs.iter().enumerate() {
            if let Arc::Path(x, y) = arc {
                let head = if dir[a] { y } else { x };
                if let Endpoint::Slot { crossing, slot } = *head {
                    incoming[crossing][slot as usize] = true;
                }
            }
        }
        Ok(self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let over = x.over_parity().unwrap_or(0);
                let o_in = (0..4u8).find(|&s| s % 2 == over && incoming[c][s as usize]).unwrap_or(0);
                let u_in = (0..4u8).find(|&s| s % 2 != over && incoming[c][s as usize]).unwrap_or(0);
                if u_in == (o_in + 1) % 4 {
                    1
                } else {
                    -1
                }
            })
            .collect())
    }

    /// `(n_+, n_-)`.
    pub fn crossing_signs(&self) -> Result<(usize, usize), OrientError> {
        let s = self.signs()?;
        let plus = s.iter().filter(|&&x| x > 0).count();
        Ok((plus, s.len() - plus))
    }

    /// The orientation-preserving resolution: 0 at positive crossings, 1 at negative.
    pub fn seifert_state(&self) -> Result<State, OrientError> {
        Ok(State { bits: self.signs()?.iter().map(|&s| s < 0).collect() })
    }
}
