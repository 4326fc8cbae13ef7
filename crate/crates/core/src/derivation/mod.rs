//! Inner-derivation witnesses for finite unitary groups.
//!
//! Matrix derivations are never handled by running the fixed-point argument
//! on `B(C^d)` itself: with the operator norm that space lacks the required
//! normal structure. Instead `B(C^d)` is embedded in `B(C^d, ℓ∞(Γ))`, which is
//! isometric to `ℓ∞(Γ, C^d)` and has it with constant `√3/2`.

pub mod action;
pub mod cocycle;
pub mod embedding;
pub mod group_algebra;
pub mod matrix;
pub mod similarity;
pub mod witness;

pub use action::{affine_images, build_affine_action, AffineAction};
pub use cocycle::{cocycle_defect, extend_along_words, extend_cocycle, inner_generator_values, DerivationData, COCYCLE_TOL};
pub use embedding::{
    embed_norming_set, extend_unitary_tilde, operator_to_point, point_to_operator, standard_basis,
    tilde_matrix, NormingSet,
};
pub use group_algebra::{
    check_point_mass_cocycle, finite_group_algebra_witness, group_algebra_residual,
    inner_point_mass_cocycle, FiniteGroup, GroupAlgebraMethod, GroupAlgebraWitness, PointMassCocycle,
    Scalars,
};
pub use matrix::{op_norm, realify, row_sup_norm, CMatrix, CVector, MatrixElement, C64};
pub use similarity::{build_similarity, upper_triangular_representation, SimilarityChecks, SimilarityReport};
pub use witness::{
    averaging_witness, least_squares_witness, solve_witness, witness_residual, WitnessMethod,
    WitnessReport, WitnessResidual, EXACT_WITNESS_TOL,
};
