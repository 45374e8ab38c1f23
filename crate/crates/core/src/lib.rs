//! Exact ladder-operator algebra for the Legendre and associated Legendre
//! equations.
//!
//! Polynomials are built by iterating first-order ladder operators, every
//! operator identity of the construction is checked as an exact equality of
//! normal-ordered differential operators, and a small shape-invariance engine
//! turns level shifts into spectra.
//!
//! All arithmetic is exact over the ring `Q[x, (1-x^2)^(±1/2)]`; see [`ring`].

pub mod cli;
pub mod diffop;
pub mod error;
pub mod ladder;
pub mod polynomials;
pub mod ring;
pub mod serde_fraction;
pub mod shape_invariance;
pub mod sweep;

pub use diffop::DiffOperator;
pub use error::{Error, Result};
pub use ladder::{verify_identity, IdentityId, IdentityReport, PartnerKind, Residual};
pub use polynomials::{AssocMethod, LegendreMethod};
pub use ring::{HalfPower, Rational, UniPoly};
pub use shape_invariance::{SpectrumResult, SuperpotentialFamily};
