//! Polyhedral adjunction invariants of lattice polytopes in exact arithmetic.
//!
//! The pipeline goes: canonical facet description ([`polytope`]) → the
//! mountain LP for the Q-codegree, the core and its normals
//! ([`adjunction`]) → normal-fan invariants ([`fan`]) → the lattice of
//! admissible shifts and the finite candidate set of codegrees
//! ([`spectrum`]). [`lp`] is the exact simplex engine underneath.

pub mod adjunction;
pub mod error;
pub mod fan;
pub mod format;
pub mod generators;
pub mod lp;
pub mod polytope;
pub mod ratmath;
pub mod spectrum;

pub use adjunction::{AdjunctionReport, LemmaOutcome, LemmaReport};
pub use error::{Error, Result};
pub use fan::{Cone, GorensteinCertificate, NormalFan};
pub use polytope::{AffineSubspace, HPolytope, HSystem, Region, RelativePolytope};
pub use ratmath::{IntMatrix, IntVector, RatMatrix, RatVector, Rational};

pub use spectrum::{CoreNormalConfig, SpectrumLattice};
