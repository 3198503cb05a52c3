//! Exact knot invariants from planar diagrams, with constructions of
//! annulus-twist and ribbon knot families.

pub mod diagram;
pub mod linalg;
pub mod poly;

pub use diagram::{BraidWord, Crossing, DiagramError, FramedKnot, PlanarDiagram, Sign};
pub use poly::LaurentPoly;
pub mod invariants;
pub mod seifert;
pub mod families;
pub mod verify;
