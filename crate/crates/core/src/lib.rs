//! Extended affine Hecke algebras with unequal parameters: root data and
//! decorated affine diagrams, the extended affine Weyl group, T-basis
//! arithmetic with Bernstein and central elements, and the finite-dimensional
//! modules (characters, induced and reflection modules) together with their
//! discreteness and supersingular mod-p reduction.

pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod rep;
pub mod root_data;
pub mod hecke;
pub mod weyl;

pub use laurent::LaurentScalar;
pub use root_data::{build_root_datum, CartanType, Family, LatticeChoice, OmegaGroup, RootDatum, RootDataError};
pub use hecke::{HeckeAlgebra, HeckeElt, HeckeError, SpecTarget, Specialized};
pub use weyl::{AffineRoot, ExtWeylElt, WeylError};
