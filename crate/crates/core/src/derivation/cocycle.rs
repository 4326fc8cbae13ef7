//! Derivation values on a finite unitary group.
//!
//! On group elements the derivation law reads `δ(gh) = δ(g)h + gδ(h)`.
//! Values are prescribed on generators and propagated along the Cayley graph;
//! every Cayley edge is then checked, which is equivalent to the law holding
//! on all pairs.

use crate::derivation::matrix::{op_norm, CMatrix, MatrixElement};
use crate::error::{Error, Result};
use crate::orbit::GroupSpec;

pub const COCYCLE_TOL: f64 = 1e-8;

/// `δ(g)` for every element of a closed group, indexed like the group.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationData {
    generators: Vec<CMatrix>,
    extended: Vec<CMatrix>,
}

impl DerivationData {
    /// Wraps a full table without checking the derivation law. Used to feed
    /// deliberately inconsistent data to the solvers.
    pub fn from_table_unchecked(extended: Vec<CMatrix>) -> Self {
        Self {
            generators: Vec::new(),
            extended,
        }
    }

    pub fn generator_values(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.extended
    }

    pub fn value(&self, i: usize) -> &CMatrix {
        &self.extended[i]
    }

    pub fn values_mut(&mut self) -> &mut [CMatrix] {
        &mut self.extended
    }
}

fn check_shapes(group: &GroupSpec<MatrixElement>, values: &[CMatrix]) -> Result<usize> {
    let d = group.identity().dim();
    if let Some(bad) = values.iter().position(|v| v.shape() != (d, d)) {
        return Err(Error::Dimension(format!(
            "derivation value {bad} has shape {:?}, expected ({d}, {d})",
            values[bad].shape()
        )));
    }
    Ok(d)
}

/// `δ(g)h + gδ(h)`.
fn leibniz(dg: &CMatrix, g: &MatrixElement, dh: &CMatrix, h: &MatrixElement) -> CMatrix {
    dg * h.matrix() + g.matrix() * dh
}

/// Extends generator values along the recorded words without checking that
/// alternative words agree. Used to feed inconsistent data to the solvers.
pub fn extend_along_words(group: &GroupSpec<MatrixElement>, generator_values: &[CMatrix]) -> Result<DerivationData> {
    if generator_values.len() != group.generators().len() {
        return Err(Error::Dimension(format!(
            "{} derivation values for {} generators",
            generator_values.len(),
            group.generators().len()
        )));
    }
    let d = check_shapes(group, generator_values)?;
    let mut extended = vec![CMatrix::zeros(d, d); group.len()];
    for i in 1..group.len() {
        let (s, j) = group.parent(i).expect("non-identity element has a parent edge");
        extended[i] = leibniz(&generator_values[s], &group.generators()[s], &extended[j], group.element(j));
    }
    Ok(DerivationData {
        generators: generator_values.to_vec(),
        extended,
    })
}

/// Extends generator values to the whole group, rejecting data that admits
/// no extension. The error names the generator and element whose edge failed.
pub fn extend_cocycle(
    group: &GroupSpec<MatrixElement>,
    generator_values: &[CMatrix],
    tol: f64,
) -> Result<DerivationData> {
    let extended = extend_along_words(group, generator_values)?.extended;
    for s in 0..group.generators().len() {
        for j in 0..group.len() {
            let target = group.left_multiply(s, j);
            let along = leibniz(&generator_values[s], &group.generators()[s], &extended[j], group.element(j));
            let violation = op_norm(&(along - &extended[target]));
            if violation > tol {
                return Err(Error::CocycleInconsistent {
                    left: format!("g{s}"),
                    right: group.label(j),
                    violation,
                });
            }
        }
    }
    Ok(DerivationData {
        generators: generator_values.to_vec(),
        extended,
    })
}

/// Largest violation of the derivation law over all `|G|²` pairs.
pub fn cocycle_defect(group: &GroupSpec<MatrixElement>, data: &DerivationData, table: &[Vec<usize>]) -> Result<f64> {
    check_shapes(group, data.values())?;
    let mut worst: f64 = 0.0;
    for (a, row) in table.iter().enumerate() {
        for (b, &ab) in row.iter().enumerate() {
            let rhs = leibniz(data.value(a), group.element(a), data.value(b), group.element(b));
            worst = worst.max(op_norm(&(data.value(ab) - rhs)));
        }
    }
    Ok(worst)
}

/// `δ(g) = T₀g − gT₀` on the generators.
pub fn inner_generator_values(group: &GroupSpec<MatrixElement>, t0: &CMatrix) -> Vec<CMatrix> {
    group
        .generators()
        .iter()
        .map(|g| t0 * g.matrix() - g.matrix() * t0)
        .collect()
}
