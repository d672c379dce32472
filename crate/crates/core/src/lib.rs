//! Shape-invariant superpotentials whose translated parameters `m_1 … m_n`
//! enter through their mean `M` and through arbitrary translation invariants
//! `I_j(m_1, …, m_n)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`invariants`]: parameter vectors and the invariant expression language
//! - [`specfun`]: orthogonal polynomials, terminating hypergeometric series, Gamma
//! - [`families`]: the thirteen closed-form superpotential families
//! - [`spectra`]: eigenenergies, normalisation recursions and eigenfunctions
//! - [`extensions`]: the eleven rational extensions and their compatibility checks
//! - [`verify`]: independent numerical oracles (grids, quadrature, finite differences)

pub mod error;
pub mod extensions;
pub mod families;
pub mod invariants;
pub mod specfun;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use extensions::{ExtensionCase, ExtensionSpec, ExtendedSuperpotential};
pub use families::{ConstructionData, Coupling, Domain, FamilyId, FamilyParams};
pub use invariants::{InvariantExpr, ParamVector};
pub use spectra::{EigenState, IndexRange, NormKind};
pub use verify::{Grid, GridReport, OracleSpec};
