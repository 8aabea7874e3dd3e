//! Lattice groups in log coordinates and the co-Hopfian determinant
//! criterion.

mod bch;
mod endo;
mod lattice;
mod search;

pub use bch::{bch, dynkin_coefficients, GroupLaw, Word};
pub use endo::{
    classify_endomorphism, exp_ad_automorphism, image_index, induces_identity_on_abelianization,
    product_with_line_witness, same_rank_epi_check, EpiVerdict, LieEndomorphism,
};
pub use lattice::{
    coset_index_oracle, is_adapted_basis, lattice_closure_check, lattice_closure_check_exact, ClosureReport,
    Counterexample, LatticePoint, Offender, DEFAULT_ORACLE_CAP,
};
pub use search::{
    certify_cohopfian, certify_cohopfian_with_budget, cohopf_witness_check, free_columns, witness_search,
    CoHopfVerdict, SearchStats, VerdictKind, DEFAULT_NODE_BUDGET, DEFAULT_SEARCH_BOUND,
};
