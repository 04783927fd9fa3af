//! B-diagrams: a Hopf algebra of decorated graphs modelling normal ordering
//! in the Heisenberg–Weyl algebra, together with its fusion (word) model,
//! enumeration, and set-partition embeddings.

pub mod diagram;
pub mod enumeration;
pub mod fusion;
pub mod heisenberg;
pub mod hopf;
pub mod partitions;
pub mod selftest;

pub use diagram::{compose, juxtapose, star_expand, BDiagram, DecoratedPath, DiagramError, DiagramStats, HalfEdge, RawDiagram};
pub use fusion::{FusionLetter, FusionMonomial, FusionSum};
pub use heisenberg::{NormalMonomial, NormalPoly, OperatorExpr, Route};
pub use hopf::{Coeff, DiagramSum, Endomorphism, TensorSum};
