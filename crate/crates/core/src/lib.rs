//! Exact computations with modules of covariants `(k[V] ⊗ M)^G` for finite matrix groups over a
//! prime field or the rationals.
//!
//! The pipeline: enumerate a [`MatGroup`] from generators, build a [`GModule`], compute graded
//! pieces of the covariants with [`covspace`], then use [`freeness`] to get the s-invariant as a
//! sum over reflecting hyperplanes, the product of linear forms `F_M`, and a decision on whether
//! the covariants form a free module over the invariant ring. [`series`] covers Molien series and
//! the expansion at `t = 1`; [`extensions`] applies all of this to `k[V]^G ⊂ k[V]^H`.

pub mod covariant;
pub mod covspace;
pub mod error;
pub mod extensions;
pub mod field;
pub mod freeness;
pub mod group;
pub mod matrix;
pub mod module;
pub mod par;
pub mod poly;
pub mod polymat;
pub mod ratfun;
pub mod series;

pub use covariant::Covariant;
pub use covspace::{InvariantSpaceBasis, TruncatedSeries};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use freeness::{FreenessReport, FreenessStatus, SInvariantReport};
pub use group::{HyperplaneRecord, MatGroup, Reflection, ReflectionKind};
pub use matrix::Matrix;
pub use module::GModule;
pub use poly::{Monomial, Poly};
pub use ratfun::{RationalFunction, UniPoly};
pub use series::SeriesInvariants;

/// Engine version reported by the command-line front end.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
