//! Embedding `C^d → ℓ∞(Γ)` through a finite norming set and the induced
//! extension `g ↦ g̃` of unitaries to index permutations.
//!
//! `J h = (⟨h, γ⟩)_{γ ∈ Γ}` with `⟨h, γ⟩ = γ* h`, so `J` has rows `γ*`.
//! If `Γ` is invariant under every `g*`, then `(J g h)_γ = (J h)_{g*γ}`, i.e.
//! `J g = g̃ J` where `g̃` permutes indices.
//!
//! Operators `F: C^d → ℓ∞(Γ)` are `|Γ|×d` matrices with norm the largest row
//! norm. They correspond to points of `ℓ∞(Γ, R^{2d})` by sending row `γ` to
//! its Riesz vector `conj(row)ᵀ`, realified as `[Re; Im]`. Under this map
//! `F ↦ g̃ F g⁻¹` becomes "permute fibers by `g̃`, apply `g` to each fiber".

use nalgebra::DMatrix;

use crate::derivation::matrix::{CMatrix, CVector, MatrixElement, C64};
use crate::error::{Error, Result};
use crate::geometry::SupPoint;
use crate::orbit::GroupSpec;

pub const NORMING_TOL: f64 = 1e-10;

/// Finite set of unit vectors `Γ ⊂ C^d`, closed under `γ ↦ g*γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormingSet {
    vectors: Vec<CVector>,
}

fn max_diff(a: &CVector, b: &CVector) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

impl NormingSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn position(&self, v: &CVector) -> Option<usize> {
        self.vectors.iter().position(|w| max_diff(w, v) <= NORMING_TOL)
    }

    /// The `|Γ|×d` matrix of `J`.
    pub fn embedding(&self) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(self.len(), d, |r, c| self.vectors[r][c].conj())
    }

    /// `J h`.
    pub fn embed_vector(&self, h: &CVector) -> CVector {
        self.embedding() * h
    }

    /// Left inverse `(J*J)⁻¹J*` of the embedding.
    pub fn left_inverse(&self) -> Result<CMatrix> {
        let j = self.embedding();
        let gram = j.adjoint() * &j;
        let inv = gram
            .try_inverse()
            .ok_or_else(|| Error::Invalid("norming set does not span C^d".into()))?;
        Ok(inv * j.adjoint())
    }
}

pub fn standard_basis(d: usize) -> Vec<CVector> {
    (0..d)
        .map(|i| CVector::from_fn(d, |j, _| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }))
        .collect()
}

/// Union of the `G*`-orbits of `seeds`, deduplicated within `1e-10`.
pub fn embed_norming_set(group: &GroupSpec<MatrixElement>, seeds: &[CVector]) -> Result<NormingSet> {
    let d = group.identity().dim();
    if seeds.is_empty() {
        return Err(Error::Invalid("norming set needs at least one seed".into()));
    }
    let mut set = NormingSet { vectors: Vec::new() };
    for (i, s) in seeds.iter().enumerate() {
        if s.len() != d {
            return Err(Error::Dimension(format!("seed {i} has length {}, expected {d}", s.len())));
        }
        if (s.norm() - 1.0).abs() > NORMING_TOL {
            return Err(Error::Invalid(format!("seed {i} is not a unit vector")));
        }
        for g in group.elements() {
            let v = g.matrix().adjoint() * s;
            if set.position(&v).is_none() {
                set.vectors.push(v);
            }
        }
    }
    Ok(set)
}

/// The permutation `π` with `γ_{π(i)} = g*γ_i`, so `(g̃ z)_i = z_{π(i)}`.
pub fn extend_unitary_tilde(g: &MatrixElement, gamma: &NormingSet) -> Result<Vec<usize>> {
    if g.dim() != gamma.dim() {
        return Err(Error::Dimension("unitary and norming set of different dimension".into()));
    }
    let adj = g.matrix().adjoint();
    gamma
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            gamma.position(&(&adj * v)).ok_or_else(|| {
                Error::Invariance(format!("g* maps norming vector {i} outside the set"))
            })
        })
        .collect()
}

/// Matrix `P` of `g̃` on `ℓ∞(Γ)`: `P[i, π(i)] = 1`.
pub fn tilde_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut p = CMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = C64::new(1.0, 0.0);
    }
    p
}

/// `F` (`|Γ|×d`) as a point of `ℓ∞(Γ, R^{2d})`.
pub fn operator_to_point(f: &CMatrix) -> SupPoint {
    let (m, d) = f.shape();
    let mut data = Vec::with_capacity(m * 2 * d);
    for r in 0..m {
        data.extend((0..d).map(|c| f[(r, c)].re));
        data.extend((0..d).map(|c| -f[(r, c)].im));
    }
    SupPoint::new(m, 2 * d, data).expect("finite operator entries")
}

/// Inverse of [`operator_to_point`].
pub fn point_to_operator(p: &SupPoint) -> Result<CMatrix> {
    if p.k() % 2 != 0 {
        return Err(Error::Dimension(format!("fiber dimension {} is not even", p.k())));
    }
    let d = p.k() / 2;
    Ok(CMatrix::from_fn(p.m(), d, |r, c| {
        let f = p.fiber(r);
        C64::new(f[c], -f[d + c])
    }))
}

/// Real `2d×2d` fiber map of `g`.
pub fn fiber_map(g: &MatrixElement) -> DMatrix<f64> {
    crate::derivation::matrix::realify(g.matrix())
}
