//! Finite representations of hyperbolic Coxeter groups.
//!
//! A Coxeter polyhedron's reflection group is realised over the ring of
//! integers of a real quadratic field, reduced modulo a prime ideal, and the
//! kernel of the resulting finite representation is tested for torsion.

pub mod coxdiagram;
pub mod finred;
pub mod fqmatrix;
pub mod glue;
pub mod groupengine;
pub mod linalg;
pub mod numberfield;
pub mod pipeline;
pub mod tensorid;
pub mod torsion;
pub mod vinberg;
