//! Windowed matrix realizations of the representation families and the
//! constructions built on them.

mod casimir;
mod decompose;
mod families;
mod limit;
mod params;
mod reconstruct;
mod rep;
mod relations;
mod window;

pub use casimir::{casimir_of, CasimirReport};
pub use decompose::{decompose_degenerate, degenerate_s, Decomposition, GeneratorBlocks};
pub use families::{
    non_extendable_exponent, nonclassical_matrix, one_dim_iso2_matrix, one_dim_reps, pi_rs_eval,
    pi_rs_matrix, poles_on_window, r_rs_matrix, Iso2Matrices, OneDimFamily, Signs, LADDER_MARGIN,
};
pub use limit::{classical_i_limit, classical_limit_sample, LimitSample};
pub use params::Params;
pub use rep::RepParams;
pub use reconstruct::{reconstruct_from_seed, Degeneracy, Reconstruction, StepCheck};
pub use relations::{
    check_iso2_relations, check_m2_relations, eval_words, eval_words_scaled, iso2_relation_words, m2_relation_words,
    RelationReport,
};
pub use window::{SparseVec, Window, WindowedOperator};
