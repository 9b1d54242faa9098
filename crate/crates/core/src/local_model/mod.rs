//! Points of the local model over `F_q`, their chain invariants and their
//! Kottwitz–Rapoport strata.

mod census;
mod chain;
pub mod fp;
mod invariants;
mod signature;

pub use census::{census, enumerate_points, CensusReport, CensusRow};
pub use chain::{
    monomial_point, reduce_pulled_back_form, standard_form, FlagChainPoint, PointRecord,
    StandardChainContext,
};
pub use invariants::{
    chain_invariants, group_scheme_kind, kr_from_profile, second_invariants, table1_csv, table2_csv,
    table3_csv,
    tau_criterion, GroupSchemeKind, InvariantProfile, TABLE_2, TABLE_3,
};
pub use signature::{
    classify, lattice_chain, point_from_lattices, signature, standard_lattice, truncated_form,
    Signature, SignatureIndex,
};
