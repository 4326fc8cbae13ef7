//! Fixtures shared by the criterion benchmarks.

use isofix_core::derivation::{
    embed_norming_set, extend_cocycle, inner_generator_values, standard_basis, DerivationData,
    MatrixElement, NormingSet,
};
use isofix_core::families::{quaternion_generators, random_complex_matrix, random_signed_permutation_group};
use isofix_core::{group_closure, FiberPermIsometry, GroupSpec, SeededRng, SupPoint};

pub fn signed_permutation_instance(seed: u64, n: usize) -> (GroupSpec<FiberPermIsometry>, SupPoint) {
    let mut rng = SeededRng::new(seed);
    let group = random_signed_permutation_group(&mut rng, n, 48).expect("group");
    let x0 = isofix_core::families::random_dyadic_point(&mut rng, n);
    (group, x0)
}

pub fn quaternion_instance(seed: u64) -> (GroupSpec<MatrixElement>, DerivationData, NormingSet) {
    let mut rng = SeededRng::new(seed);
    let group = group_closure(quaternion_generators(), 64, 1e-10).expect("Q8");
    let t0 = random_complex_matrix(&mut rng, 2, 2);
    let delta = extend_cocycle(&group, &inner_generator_values(&group, &t0), 1e-8).expect("cocycle");
    let gamma = embed_norming_set(&group, &standard_basis(2)).expect("norming set");
    (group, delta, gamma)
}

/// `count` Gaussian points in `R^k`, flattened row by row.
pub fn gaussian_points(seed: u64, count: usize, k: usize) -> Vec<Vec<f64>> {
    let mut rng = SeededRng::new(seed);
    (0..count).map(|_| (0..k).map(|_| rng.normal()).collect()).collect()
}
