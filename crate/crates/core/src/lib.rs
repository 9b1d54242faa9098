//! Combinatorics of the Kottwitz–Rapoport stratification of Siegel moduli
//! spaces with parahoric level.
//!
//! The crate is organised bottom-up:
//!
//! * [`weyl`] — the extended affine Weyl group of `GSp_2n`: elements, the
//!   affine action on `Z^2n`, length, reduced words, Bruhat order and Hasse
//!   diagrams.
//! * [`admissible`] — the `μ`-permissible and `μ`-admissible sets for
//!   `μ = (1^n, 0^n)`, the p-rank grading and monomial matrix representatives.
//! * [`local_model`] — lattice chains over `F_q`: points of the local model,
//!   the `(σ_i, τ_i)` invariants, a relative-position classifier and exhaustive
//!   point censuses.
//! * [`strata`] — component counts for parahoric p-rank strata, the
//!   supersingular mass formulas and small point-counting loci.

pub mod admissible;
pub mod error;
pub mod local_model;
pub mod strata;
pub mod weyl;

pub use error::{Error, Result};
