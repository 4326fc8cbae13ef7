//! Witnesses `T: C^d → ℓ∞(Γ)` with `J δ(g) = T g − g̃ T` for all `g`.
//!
//! Three independent routes:
//!
//! * `OrbitCenter`: fiberwise enclosing-ball center of the orbit of `0`
//!   under the affine action, a common fixed point of the action;
//! * `Averaging`: the barycenter `(1/|G|) Σ_g J δ(g) g⁻¹` of the same orbit,
//!   fixed because affine maps preserve barycenters;
//! * `LeastSquares`: minimum-norm solution of the stacked linear system
//!   `T g − g̃ T = J δ(g)` over all `g`, solved by SVD. This route never
//!   touches the action, the orbit or any center computation.

use serde::Serialize;

use crate::derivation::action::affine_images;
use crate::derivation::cocycle::DerivationData;
use crate::derivation::embedding::{extend_unitary_tilde, point_to_operator, NormingSet};
use crate::derivation::matrix::{op_norm, row_sup_norm, CMatrix, CVector, MatrixElement, C64};
use crate::error::{Error, Result};
use crate::geometry::{urns_center, PointCloud, SpaceDescriptor};
use crate::orbit::GroupSpec;

/// Above this residual a witness is reported as not exact.
pub const EXACT_WITNESS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMethod {
    OrbitCenter,
    Averaging,
    LeastSquares,
}

impl WitnessMethod {
    pub const ALL: [WitnessMethod; 3] = [
        WitnessMethod::OrbitCenter,
        WitnessMethod::Averaging,
        WitnessMethod::LeastSquares,
    ];
}

/// Residual of a candidate witness over the whole group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessResidual {
    /// `max_g` of the largest row norm of `J δ(g) − (T g − g̃ T)`.
    pub model: f64,
    /// `max_g` of the spectral norm of the same matrix.
    pub operator: f64,
    /// Label of the element attaining the model maximum.
    pub worst_element: String,
}

impl WitnessResidual {
    pub fn max(&self) -> f64 {
        self.model.max(self.operator)
    }
}

#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub method: WitnessMethod,
    /// `|Γ|×d`, rows indexed by the norming set.
    pub witness: CMatrix,
    pub residual: WitnessResidual,
    /// Residual above [`EXACT_WITNESS_TOL`]: no exact witness in the model.
    pub no_exact_witness: bool,
    /// The iterative enclosing-ball path was used (orbit-center method only).
    pub approximate: bool,
    pub converged: bool,
}

/// `J δ(g) − (T g − g̃ T)` maximized over the group.
pub fn witness_residual(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
    witness: &CMatrix,
) -> Result<WitnessResidual> {
    let j = gamma.embedding();
    if witness.shape() != j.shape() {
        return Err(Error::Dimension(format!(
            "witness has shape {:?}, expected {:?}",
            witness.shape(),
            j.shape()
        )));
    }
    let mut out = WitnessResidual {
        model: 0.0,
        operator: 0.0,
        worst_element: group.label(0),
    };
    for (i, (g, dg)) in group.elements().iter().zip(delta.values()).enumerate() {
        let perm = extend_unitary_tilde(g, gamma)?;
        let tilde_t = CMatrix::from_fn(witness.nrows(), witness.ncols(), |r, c| witness[(perm[r], c)]);
        let diff = &j * dg - (witness * g.matrix() - tilde_t);
        let model = row_sup_norm(&diff);
        if model > out.model {
            out.model = model;
            out.worst_element = group.label(i);
        }
        out.operator = out.operator.max(op_norm(&diff));
    }
    Ok(out)
}

pub fn solve_witness(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
    method: WitnessMethod,
) -> Result<WitnessReport> {
    let (witness, approximate, converged) = match method {
        WitnessMethod::OrbitCenter => orbit_center_witness(group, delta, gamma)?,
        WitnessMethod::Averaging => (averaging_witness(group, delta, gamma)?, false, true),
        WitnessMethod::LeastSquares => (least_squares_witness(group, delta, gamma)?, false, true),
    };
    let residual = witness_residual(group, delta, gamma, &witness)?;
    Ok(WitnessReport {
        method,
        no_exact_witness: !(residual.max() <= EXACT_WITNESS_TOL),
        witness,
        residual,
        approximate,
        converged,
    })
}

fn orbit_center_witness(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<(CMatrix, bool, bool)> {
    let action = affine_images(group, delta, gamma)?;
    let cloud = PointCloud::new(action.translations().cloned().collect())?;
    let space = SpaceDescriptor::fiber_hilbert(gamma.len(), 2 * gamma.dim());
    let center = urns_center(&cloud, &space)?;
    Ok((point_to_operator(&center.point)?, center.approximate, center.converged))
}

/// `(1/|G|) Σ_g J δ(g) g⁻¹`.
pub fn averaging_witness(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<CMatrix> {
    if delta.values().len() != group.len() {
        return Err(Error::Dimension("derivation table does not match the group".into()));
    }
    let j = gamma.embedding();
    let mut sum = CMatrix::zeros(gamma.len(), gamma.dim());
    for (g, dg) in group.elements().iter().zip(delta.values()) {
        sum += &j * dg * g.inverse();
    }
    Ok(sum / C64::new(group.len() as f64, 0.0))
}

/// Minimum-norm least-squares solution of `T g − g̃ T = J δ(g)` for all `g`.
///
/// Unknowns are the entries of `T` in row-major order; each group element
/// contributes `|Γ|·d` equations.
pub fn least_squares_witness(
    group: &GroupSpec<MatrixElement>,
    delta: &DerivationData,
    gamma: &NormingSet,
) -> Result<CMatrix> {
    if delta.values().len() != group.len() {
        return Err(Error::Dimension("derivation table does not match the group".into()));
    }
    let m = gamma.len();
    let d = gamma.dim();
    let unknowns = m * d;
    let rows = group.len() * unknowns;
    let j = gamma.embedding();
    let mut a = CMatrix::zeros(rows, unknowns);
    let mut b = CVector::zeros(rows);
    for (e, (g, dg)) in group.elements().iter().zip(delta.values()).enumerate() {
        let perm = extend_unitary_tilde(g, gamma)?;
        let rhs = &j * dg;
        let gm = g.matrix();
        for r in 0..m {
            for c in 0..d {
                let row = e * unknowns + r * d + c;
                for l in 0..d {
                    a[(row, r * d + l)] += gm[(l, c)];
                }
                a[(row, perm[r] * d + c)] -= C64::new(1.0, 0.0);
                b[row] = rhs[(r, c)];
            }
        }
    }
    let svd = a.svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-12;
    let x = svd
        .solve(&b, cutoff)
        .map_err(|e| Error::Invalid(format!("least-squares solve failed: {e}")))?;
    Ok(CMatrix::from_fn(m, d, |r, c| x[r * d + c]))
}
