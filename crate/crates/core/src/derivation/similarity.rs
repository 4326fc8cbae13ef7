//! Block operators relating the derivation to a group of isometries.
//!
//! With `S = [[J, T], [0, J]]`, `u(g) = [[g, −δ(g)], [0, g]]` and
//! `G̃ = diag(g̃, g̃)`, a witness `T` gives `S u(g) = G̃ S`, so `G̃` restricted
//! to `Y = S(C^d ⊕ C^d)` is similar to `u(g)`.

use serde::Serialize;

use crate::derivation::cocycle::DerivationData;
use crate::derivation::embedding::{extend_unitary_tilde, tilde_matrix, NormingSet};
use crate::derivation::matrix::{op_norm, CMatrix, MatrixElement};
use crate::error::{Error, Result};
use crate::orbit::GroupSpec;

pub const SIMILARITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SimilarityChecks {
    /// `max ‖u(g)u(h) − u(gh)‖` over all pairs.
    pub homomorphism: f64,
    /// `max ‖S u(g) − G̃ S‖` over all elements.
    pub intertwining: f64,
    /// `max ‖u(g)u(g⁻¹) − I‖`.
    pub inverse: f64,
    /// `‖S⁻¹ S − I‖` with `S⁻¹ = [[J⁺, −J⁺TJ⁺], [0, J⁺]]` on `Y`.
    pub left_inverse: f64,
    /// `σ_max(S) / σ_min(S)`.
    pub condition_number: f64,
    pub worst_element: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct SimilarityReport {
    pub s: CMatrix,
    pub s_inverse: CMatrix,
    pub checks: SimilarityChecks,
}

fn block(tl: &CMatrix, tr: &CMatrix, bl: &CMatrix, br: &CMatrix) -> CMatrix {
    let (r1, c1) = tl.shape();
    let (r2, c2) = br.shape();
    let mut out = CMatrix::zeros(r1 + r2, c1 + c2);
    out.view_mut((0, 0), (r1, c1)).copy_from(tl);
    out.view_mut((0, c1), (r1, c2)).copy_from(tr);
    out.view_mut((r1, 0), (r2, c1)).copy_from(bl);
    out.view_mut((r1, c1), (r2, c2)).copy_from(br);
    out
}

/// `u(g) = [[g, −δ(g)], [0, g]]`.
pub fn upper_triangular_representation(g: &MatrixElement, dg: &CMatrix) -> CMatrix {
    let d = g.dim();
    block(g.matrix(), &(-dg), &CMatrix::zeros(d, d), g.matrix())
}

pub fn build_similarity(
    witness: &CMatrix,
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<SimilarityReport> {
    let j = gamma.embedding();
    if witness.shape() != j.shape() {
        return Err(Error::Dimension("witness shape does not match the embedding".into()));
    }
    let d = gamma.dim();
    let m = gamma.len();
    let j_plus = gamma.left_inverse()?;
    let s = block(&j, witness, &CMatrix::zeros(m, d), &j);
    let s_inverse = block(
        &j_plus,
        &(-(&j_plus * witness * &j_plus)),
        &CMatrix::zeros(d, m),
        &j_plus,
    );

    let us: Vec<CMatrix> = group
        .elements()
        .iter()
        .zip(delta.values())
        .map(|(g, dg)| upper_triangular_representation(g, dg))
        .collect();
    let table = group.multiplication_table()?;
    let inverses = group.inverses(&table)?;
    let id2 = CMatrix::identity(2 * d, 2 * d);

    let mut homomorphism: f64 = 0.0;
    let mut intertwining: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    let mut worst = (0.0, 0usize);
    for (a, row) in table.iter().enumerate() {
        for (b, &ab) in row.iter().enumerate() {
            homomorphism = homomorphism.max(op_norm(&(&us[a] * &us[b] - &us[ab])));
        }
        let p = tilde_matrix(&extend_unitary_tilde(group.element(a), gamma)?);
        let big = block(&p, &CMatrix::zeros(m, m), &CMatrix::zeros(m, m), &p);
        let gap = op_norm(&(&s * &us[a] - big * &s));
        intertwining = intertwining.max(gap);
        let inv_gap = op_norm(&(&us[a] * &us[inverses[a]] - &id2));
        inverse = inverse.max(inv_gap);
        let local = gap.max(inv_gap);
        if local > worst.0 {
            worst = (local, a);
        }
    }
    let left_inverse = op_norm(&(&s_inverse * &s - &id2));
    let sv = s.singular_values();
    let condition_number = sv.max() / sv.min();
    let passed = homomorphism <= SIMILARITY_TOL
        && intertwining <= SIMILARITY_TOL
        && inverse <= SIMILARITY_TOL
        && left_inverse <= SIMILARITY_TOL;
    Ok(SimilarityReport {
        s,
        s_inverse,
        checks: SimilarityChecks {
            homomorphism,
            intertwining,
            inverse,
            left_inverse,
            condition_number,
            worst_element: group.label(worst.1),
            passed,
        },
    })
}
