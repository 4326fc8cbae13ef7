//! Complex matrices and unitary group elements.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::orbit::GroupElement;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const UNITARY_TOL: f64 = 1e-10;

/// Largest singular value.
pub fn op_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().max()
}

/// Largest Euclidean row norm: the norm of `a` as an operator `C^d → ℓ∞(Γ)`.
pub fn row_sup_norm(a: &CMatrix) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Real `2d×2d` form `[[Re A, −Im A], [Im A, Re A]]` acting on `[Re v; Im v]`.
pub fn realify(a: &CMatrix) -> DMatrix<f64> {
    let (r, c) = a.shape();
    DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = a[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Element of a finite subgroup of `U(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElement(CMatrix);

impl MatrixElement {
    /// Checks `U*U = I` within `1e-10`.
    pub fn unitary(u: CMatrix) -> Result<Self> {
        if !u.is_square() || u.nrows() == 0 {
            return Err(Error::Dimension(format!("unitary must be square, got {:?}", u.shape())));
        }
        if u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("matrix has non-finite entries".into()));
        }
        let defect = max_abs(&(u.adjoint() * &u - CMatrix::identity(u.nrows(), u.nrows())));
        if defect > UNITARY_TOL {
            return Err(Error::Invalid(format!("matrix is not unitary (defect {defect:.3e})")));
        }
        Ok(Self(u))
    }

    pub fn from_real(rows: usize, entries: &[f64]) -> Result<Self> {
        let u = DMatrix::from_row_slice(rows, rows, entries).map(|v| C64::new(v, 0.0));
        Self::unitary(u)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inverse(&self) -> CMatrix {
        self.0.adjoint()
    }
}

impl GroupElement for MatrixElement {
    fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("unitaries of different size".into()));
        }
        Ok(Self(&self.0 * &other.0))
    }

    fn identity_like(&self) -> Self {
        Self(CMatrix::identity(self.dim(), self.dim()))
    }

    fn signature(&self) -> Vec<f64> {
        self.0.iter().flat_map(|z| [z.re, z.im]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realified_product_matches() {
        let a = CMatrix::from_row_slice(2, 2, &[
            C64::new(1.0, 2.0), C64::new(0.5, -1.0),
            C64::new(-0.3, 0.0), C64::new(0.0, 1.5),
        ]);
        let v = CVector::from_vec(vec![C64::new(0.2, -0.7), C64::new(1.1, 0.4)]);
        let av = &a * &v;
        let rv = realify(&a) * nalgebra::DVector::from_vec(vec![v[0].re, v[1].re, v[0].im, v[1].im]);
        for i in 0..2 {
            assert!((rv[i] - av[i].re).abs() < 1e-14);
            assert!((rv[i + 2] - av[i].im).abs() < 1e-14);
        }
    }

    #[test]
    fn non_unitary_rejected() {
        assert!(MatrixElement::from_real(2, &[1.0, 1.0, 0.0, 1.0]).is_err());
        assert!(MatrixElement::from_real(2, &[0.0, -1.0, 1.0, 0.0]).is_ok());
    }

    #[test]
    fn norms() {
        let a = CMatrix::from_row_slice(2, 2, &[
            C64::new(3.0, 0.0), C64::new(0.0, 4.0),
            C64::new(0.0, 0.0), C64::new(1.0, 0.0),
        ]);
        assert!((row_sup_norm(&a) - 5.0).abs() < 1e-14);
        assert!(op_norm(&a) >= 5.0 - 1e-12);
    }
}
