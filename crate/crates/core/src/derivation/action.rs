use crate::derivation::cocycle::DerivationData;
use crate::derivation::embedding::{extend_unitary_tilde, fiber_map, operator_to_point, NormingSet};
use crate::derivation::matrix::{CMatrix, MatrixElement};
use crate::error::{Error, Result};
use crate::orbit::{group_closure, FiberPermIsometry, GroupElement, GroupSpec};

pub const ACTION_TOL: f64 = 1e-10;

/// The affine isometric action `α(g)x = g̃ x g⁻¹ + J δ(g) g⁻¹` on
/// `B(C^d, ℓ∞(Γ)) ≅ ℓ∞(Γ, R^{2d})`.
#[derive(Debug, Clone)]
pub struct AffineAction {
    /// `α(g_i)` for every element `g_i` of the source group, same indexing.
    pub images: Vec<FiberPermIsometry>,
    /// `π_{g_i}` for every element.
    pub tildes: Vec<Vec<usize>>,
}

impl AffineAction {
    /// `J δ(g_i) g_i⁻¹` for every element: the orbit of `0`.
    pub fn translations(&self) -> impl Iterator<Item = &crate::geometry::SupPoint> {
        self.images.iter().map(FiberPermIsometry::translation)
    }
}

/// `α(g)` for every element, without checking that `g ↦ α(g)` is a homomorphism.
pub fn affine_images(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<AffineAction> {
    if delta.values().len() != group.len() {
        return Err(Error::Dimension(format!(
            "derivation table has {} entries for a group of order {}",
            delta.values().len(),
            group.len()
        )));
    }
    let j = gamma.embedding();
    let mut images = Vec::with_capacity(group.len());
    let mut tildes = Vec::with_capacity(group.len());
    for (g, dg) in group.elements().iter().zip(delta.values()) {
        let perm = extend_unitary_tilde(g, gamma)?;
        let translation = operator_to_point(&(&j * dg * g.inverse()));
        let map = fiber_map(g);
        images.push(FiberPermIsometry::new(
            perm.clone(),
            vec![map; gamma.len()],
            translation,
        )?);
        tildes.push(perm);
    }
    Ok(AffineAction { images, tildes })
}

/// The action as a closed group of isometries, checked to be a homomorphic
/// image: `α(g)α(h) = α(gh)` within `1e-10` for every pair.
pub fn build_affine_action(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<(AffineAction, GroupSpec<FiberPermIsometry>)> {
    let action = affine_images(group, delta, gamma)?;
    let table = group.multiplication_table()?;
    for (a, row) in table.iter().enumerate() {
        for (b, &ab) in row.iter().enumerate() {
            let lhs = action.images[a].compose(&action.images[b])?.signature();
            let rhs = action.images[ab].signature();
            let gap = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if gap > ACTION_TOL * (1.0 + delta_scale(delta)) {
                return Err(Error::CocycleInconsistent {
                    left: group.label(a),
                    right: group.label(b),
                    violation: gap,
                });
            }
        }
    }
    let generators = (0..group.generators().len())
        .map(|s| {
            let idx = group.left_multiply(s, 0);
            action.images[idx].clone()
        })
        .collect();
    let closed = group_closure(generators, group.len(), ACTION_TOL * (1.0 + delta_scale(delta)))?;
    Ok((action, closed))
}

fn delta_scale(delta: &DerivationData) -> f64 {
    delta
        .values()
        .iter()
        .map(|m: &CMatrix| m.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}
