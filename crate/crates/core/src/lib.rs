//! Khovanov-type homology of link diagrams on RP², parameterized by a dyad.

pub mod algebra;
pub mod complex;
pub mod corpus;
pub mod diagram;
pub mod homology;
pub mod poly;
pub mod skein;
pub mod verify;
mod util;

pub use diagram::{Arc, Crossing, DiagramError, DiagramRP2, Endpoint, FaceRef, State};
pub use poly::{LaurentQ, PoincarePoly};
