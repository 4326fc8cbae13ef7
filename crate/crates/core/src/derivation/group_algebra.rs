//! Derivations from the group algebra of a finite group into `ℓ∞(G)`.
//!
//! `ℓ∞(G)` is the dual of `ℓ₁(G)` under convolution, with point-mass actions
//! `(x·δ_g)(u) = x(gu)` and `(δ_g·x)(u) = x(ug)`. A derivation is determined
//! by `D(g) = δ(δ_g) ∈ ℓ∞(G)` subject to
//!
//! ```text
//! D(gh)(u) = D(g)(hu) + D(h)(ug)
//! ```
//!
//! and is inner when `D(g)(u) = t(gu) − t(ug)` for some `t ∈ ℓ∞(G)`. Such `t`
//! is a common fixed point of `(α(g)x)(u) = x(g⁻¹ug) + D(g)(g⁻¹u)`.

use serde::{Deserialize, Serialize};

use crate::derivation::matrix::C64;
use crate::error::{Error, Result};
use crate::fixed_point::orbit_center_fixed_point;
use crate::geometry::{SpaceDescriptor, SupPoint};
use crate::orbit::{group_closure, FiberPermIsometry, GroupSpec, Permutation};

/// Multiplication table of a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_closed<E: crate::orbit::GroupElement>(group: &GroupSpec<E>) -> Result<Self> {
        let table = group.multiplication_table()?;
        let inverse = group.inverses(&table)?;
        let labels = (0..group.len()).map(|i| group.label(i)).collect();
        Ok(Self { table, inverse, labels })
    }

    pub fn from_permutations(generators: Vec<Permutation>, max_size: usize) -> Result<Self> {
        Self::from_closed(&group_closure(generators, max_size, 0.0)?)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_permutations(vec![Permutation::cycle(n)], n).expect("cyclic group closes")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(vec![Permutation::cycle(3), Permutation::transposition(3, 0, 1)], 6)
            .expect("S3 closes")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scalars {
    Real,
    Complex,
}

/// `D(g)` for every group element: `values[g][u]`.
pub type PointMassCocycle = Vec<Vec<C64>>;

/// `D(g)(u) = t(gu) − t(ug)`.
pub fn inner_point_mass_cocycle(group: &FiniteGroup, t: &[C64]) -> PointMassCocycle {
    let n = group.order();
    (0..n)
        .map(|g| (0..n).map(|u| t[group.mul(g, u)] - t[group.mul(u, g)]).collect())
        .collect()
}

fn check_shape(group: &FiniteGroup, values: &PointMassCocycle) -> Result<()> {
    let n = group.order();
    if values.len() != n || values.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("cocycle table must be {n}x{n}")));
    }
    Ok(())
}

/// Verifies the point-mass derivation law on all pairs.
pub fn check_point_mass_cocycle(group: &FiniteGroup, values: &PointMassCocycle, tol: f64) -> Result<()> {
    check_shape(group, values)?;
    let n = group.order();
    for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            let violation = (0..n)
                .map(|u| (values[gh][u] - values[g][group.mul(h, u)] - values[h][group.mul(u, g)]).norm())
                .fold(0.0, f64::max);
            if violation > tol {
                return Err(Error::CocycleInconsistent {
                    left: group.label(g).to_string(),
                    right: group.label(h).to_string(),
                    violation,
                });
            }
        }
    }
    Ok(())
}

/// `max_{g,u} |D(g)(u) − (t(gu) − t(ug))|`.
pub fn group_algebra_residual(group: &FiniteGroup, values: &PointMassCocycle, t: &[C64]) -> f64 {
    let inner = inner_point_mass_cocycle(group, t);
    values
        .iter()
        .zip(&inner)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

fn to_point(values: &[C64], scalars: Scalars) -> SupPoint {
    let data: Vec<f64> = match scalars {
        Scalars::Real => values.iter().map(|z| z.re).collect(),
        Scalars::Complex => values.iter().flat_map(|z| [z.re, z.im]).collect(),
    };
    let k = if scalars == Scalars::Real { 1 } else { 2 };
    SupPoint::new(values.len(), k, data).expect("finite values")
}

fn from_point(p: &SupPoint, scalars: Scalars) -> Vec<C64> {
    p.fibers()
        .map(|f| match scalars {
            Scalars::Real => C64::new(f[0], 0.0),
            Scalars::Complex => C64::new(f[0], f[1]),
        })
        .collect()
}

/// `α(g)` for every element of the group.
pub fn group_algebra_action(
    group: &FiniteGroup,
    values: &PointMassCocycle,
    scalars: Scalars,
) -> Result<Vec<FiberPermIsometry>> {
    check_shape(group, values)?;
    let n = group.order();
    let k = if scalars == Scalars::Real { 1 } else { 2 };
    (0..n)
        .map(|g| {
            let gi = group.inv(g);
            let perm: Vec<usize> = (0..n).map(|u| group.mul(group.mul(gi, u), g)).collect();
            let shifted: Vec<C64> = (0..n).map(|u| values[g][group.mul(gi, u)]).collect();
            let maps = vec![nalgebra::DMatrix::identity(k, k); n];
            FiberPermIsometry::new(perm, maps, to_point(&shifted, scalars))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupAlgebraMethod {
    OrbitCenter,
    Averaging,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraWitness {
    pub t: Vec<C64>,
    pub residual: f64,
    pub method: GroupAlgebraMethod,
}

/// Finds `t ∈ ℓ∞(G)` with `D(g) = t·δ_g − δ_g·t` for every `g`.
///
/// Real data lives in the box space (`c = 1/2`), complex data in
/// `ℓ∞(G, R²)` (`c = √3/2`).
pub fn finite_group_algebra_witness(
    group: &FiniteGroup,
    values: &PointMassCocycle,
    scalars: Scalars,
    method: GroupAlgebraMethod,
    tol: f64,
) -> Result<GroupAlgebraWitness> {
    if scalars == Scalars::Real && values.iter().flatten().any(|z| z.im != 0.0) {
        return Err(Error::Invalid("real scalars requested for complex cocycle values".into()));
    }
    check_point_mass_cocycle(group, values, tol)?;
    let n = group.order();
    let images = group_algebra_action(group, values, scalars)?;
    let t = match method {
        GroupAlgebraMethod::OrbitCenter => {
            let closed = group_closure(images, n, 1e-10)?;
            let space = match scalars {
                Scalars::Real => SpaceDescriptor::box_real(n),
                Scalars::Complex => SpaceDescriptor::fiber_hilbert(n, 2),
            };
            let k = if scalars == Scalars::Real { 1 } else { 2 };
            let fixed = orbit_center_fixed_point(&closed, &SupPoint::zeros(n, k), &space)?;
            from_point(&fixed.point, scalars)
        }
        GroupAlgebraMethod::Averaging => {
            let mut acc = vec![C64::new(0.0, 0.0); n];
            for img in &images {
                for (a, v) in acc.iter_mut().zip(from_point(img.translation(), scalars)) {
                    *a += v / n as f64;
                }
            }
            acc
        }
    };
    let residual = group_algebra_residual(group, values, &t);
    Ok(GroupAlgebraWitness { t, residual, method })
}
