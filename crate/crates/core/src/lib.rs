//! Exact computation with matroids over skew tracts and skew hyperfields.
//!
//! The crate is organized around a handful of small, immutable data types:
//!
//! * [`tract`] — the algebraic kernels (sign, Krasner, phase, `GF(p)`, the
//!   dihedral hyperfield, integer layerings) with the null-sum predicate and
//!   exact group arithmetic; [`props`] holds the desk-scale property
//!   checkers (stringency, Pathetic Cancellation and friends).
//! * [`tvec`] — vectors over a tract with supports, scalar actions and the
//!   involution-twisted orthogonality pairing.
//! * [`underlying`] and [`matroid`] — matroids over a tract: canonical
//!   projective circuit representatives, the classical underlying matroid,
//!   circuit-axiom checking, elimination and duality.
//! * [`qp`] — quasi-Plücker coordinates, their axiom suites and the
//!   conversions to and from circuit data.
//! * [`minors`] — deletion, contraction, rescaling and induced cocircuit
//!   functions.
//! * [`extension`] — single-element extensions: localizations, extended
//!   bases and coordinates, modular-elimination cocircuits, and the rank-2
//!   characterization checks.
//! * [`io`] and [`fixtures`] — file formats and the embedded reference
//!   fixtures used by the command line front end.

pub mod error;
pub mod extension;
pub mod fixtures;
pub mod io;
pub mod matroid;
pub mod minors;
pub mod props;
pub mod qp;
pub mod tract;
pub mod turn;
pub mod tvec;
pub mod underlying;

pub use error::{Error, Result};
pub use extension::{
    CharacterizeVerdict, ExtensionResult, Localization, Provenance,
};
pub use matroid::{AxiomCheck, AxiomMode, AxiomReport, Chirality, TMatroid};
pub use props::{PropertyVerdict, SampleSpec};
pub use qp::{BasisFamily, QuasiPlucker};
pub use tract::{FormalSum, GroupElem, TractDescriptor, TractKind, TractValue};
pub use turn::Turn;
pub use tvec::{GroundSet, MulOrder, Side, TVector};
pub use underlying::UnderlyingMatroid;
