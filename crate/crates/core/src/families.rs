//! Standard test groups and seeded random instances.

use crate::derivation::{CMatrix, MatrixElement, C64};
use crate::error::{Error, Result};
use crate::geometry::SupPoint;
use crate::orbit::{group_closure, FiberPermIsometry, GroupSpec};
use crate::rng::SeededRng;

/// `i = diag(i, −i)` and `j = [[0, 1], [−1, 0]]`, generating `Q₈ ⊂ U(2)`.
pub fn quaternion_generators() -> Vec<MatrixElement> {
    let z = C64::new(0.0, 0.0);
    let i = CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 1.0), z, z, C64::new(0.0, -1.0)]);
    let j = CMatrix::from_row_slice(2, 2, &[z, C64::new(1.0, 0.0), C64::new(-1.0, 0.0), z]);
    vec![
        MatrixElement::unitary(i).expect("unitary"),
        MatrixElement::unitary(j).expect("unitary"),
    ]
}

/// 3-cycle and transposition as permutation matrices, generating `S₃ ⊂ U(3)`.
pub fn symmetric3_generators() -> Vec<MatrixElement> {
    vec![
        MatrixElement::from_real(3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]).expect("permutation"),
        MatrixElement::from_real(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).expect("permutation"),
    ]
}

/// Rotation of the plane by `2π/n`, generating `C_n ⊂ U(2)`.
pub fn rotation_generator(n: usize) -> MatrixElement {
    let a = std::f64::consts::TAU / n as f64;
    let (s, c) = a.sin_cos();
    MatrixElement::from_real(2, &[c, -s, s, c]).expect("rotation")
}

/// Entries with independent standard normal real and imaginary parts.
pub fn random_complex_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> CMatrix {
    let mut out = CMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let re = rng.normal();
            let im = rng.normal();
            out[(r, c)] = C64::new(re, im);
        }
    }
    out
}

/// Dyadic point of real `ℓ∞^n` (multiples of `1/16` in `[-4, 4]`).
pub fn random_dyadic_point(rng: &mut SeededRng, n: usize) -> SupPoint {
    SupPoint::real((0..n).map(|_| rng.dyadic(4, 4)).collect()).expect("finite")
}

/// Random signed-permutation group on `ℓ∞^n` conjugated by a dyadic
/// translation, closed with at most `cap` elements.
///
/// One or two random signed permutations are drawn; generator sets whose
/// closure exceeds `cap` are redrawn. All data are dyadic so that the box
/// iteration on them is exact in floating point.
pub fn random_signed_permutation_group(
    rng: &mut SeededRng,
    n: usize,
    cap: usize,
) -> Result<GroupSpec<FiberPermIsometry>> {
    for attempt in 0..1000 {
        let center: Vec<f64> = (0..n).map(|_| rng.dyadic(4, 4)).collect();
        let count = if attempt < 200 { 1 + rng.index(2) } else { 1 };
        let mut gens = Vec::with_capacity(count);
        for _ in 0..count {
            let perm = rng.permutation(n);
            let signs: Vec<f64> = (0..n).map(|_| rng.sign()).collect();
            // g(x) = L(x − c) + c
            let translation = (0..n).map(|i| center[i] - signs[i] * center[perm[i]]).collect();
            gens.push(FiberPermIsometry::signed_permutation(perm, &signs, translation)?);
        }
        match group_closure(gens, cap, 1e-10) {
            Ok(g) => return Ok(g),
            Err(Error::ClosureCap { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ClosureCap { cap })
}

/// Finite unitary groups with a fixed generator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixFamily {
    /// `Q₈ ⊂ U(2)`.
    Quaternion,
    /// `S₃ ⊂ U(3)` as permutation matrices.
    Symmetric3,
    /// `C_n ⊂ U(2)` as plane rotations.
    Cyclic(usize),
}

impl MatrixFamily {
    pub fn generators(self) -> Vec<MatrixElement> {
        match self {
            MatrixFamily::Quaternion => quaternion_generators(),
            MatrixFamily::Symmetric3 => symmetric3_generators(),
            MatrixFamily::Cyclic(n) => vec![rotation_generator(n)],
        }
    }

    pub fn dim(self) -> usize {
        match self {
            MatrixFamily::Symmetric3 => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> String {
        match self {
            MatrixFamily::Quaternion => "Q8".into(),
            MatrixFamily::Symmetric3 => "S3".into(),
            MatrixFamily::Cyclic(n) => format!("C{n}"),
        }
    }

    pub fn group(self) -> Result<GroupSpec<MatrixElement>> {
        let cap = match self {
            MatrixFamily::Cyclic(n) => n,
            _ => 8,
        };
        group_closure(self.generators(), cap, 1e-10)
    }
}

/// Inner derivation data `δ(g) = T₀g − gT₀` on the generators.
#[derive(Debug, Clone)]
pub struct InnerInstance {
    pub t0: CMatrix,
    pub generator_values: Vec<CMatrix>,
}

/// Draws `T₀` with standard normal complex entries.
pub fn random_inner_instance(rng: &mut SeededRng, group: &GroupSpec<MatrixElement>) -> InnerInstance {
    let d = group.identity().dim();
    let t0 = random_complex_matrix(rng, d, d);
    let generator_values = crate::derivation::inner_generator_values(group, &t0);
    InnerInstance { t0, generator_values }
}

/// Adds `eps` to the entry of `value` where `g` has its largest modulus.
///
/// For unitary `g` this moves `tr(δ(g)g⁻¹)` by `eps·conj(g_rc) ≠ 0`. On a
/// finite group every derivation is inner and has `tr(δ(g)g⁻¹) = 0`, so the
/// perturbed data extends to no derivation at all.
pub fn corrupt_value(value: &mut CMatrix, g: &MatrixElement, eps: f64) {
    let m = g.matrix();
    let (mut best, mut at) = (0.0, (0, 0));
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if m[(r, c)].norm() > best {
                best = m[(r, c)].norm();
                at = (r, c);
            }
        }
    }
    value[at] += C64::new(eps, 0.0);
}

/// Random points `y` with `M ⊆ B(y, c·diam M)`, drawn around `z`.
///
/// Each fiber starts at `z_γ` plus a uniform direction scaled by
/// `c·diam M·u`, and is halved toward `z_γ` until it lies within `c·diam M`
/// of every `x_γ`. Requires `z` itself to satisfy that condition.
pub fn hypothesis_samples(
    rng: &mut SeededRng,
    cloud: &crate::geometry::PointCloud,
    z: &SupPoint,
    c: f64,
    count: usize,
) -> Result<Vec<SupPoint>> {
    use crate::geometry::point::fiber_distance;
    let radius = c * crate::geometry::cloud_diameter(cloud)?;
    let (m, k) = (z.m(), z.k());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut data = Vec::with_capacity(m * k);
        for g in 0..m {
            let dir: Vec<f64> = (0..k).map(|_| rng.normal()).collect();
            let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
            let mut s = radius * rng.unit() / norm;
            let zg = z.fiber(g);
            let mut y: Vec<f64> = zg.iter().zip(&dir).map(|(a, b)| a + s * b).collect();
            while cloud.points().iter().any(|x| fiber_distance(x.fiber(g), &y) > radius) {
                s *= 0.5;
                if s < 1e-300 {
                    y = zg.to_vec();
                    break;
                }
                y = zg.iter().zip(&dir).map(|(a, b)| a + s * b).collect();
            }
            data.extend(y);
        }
        out.push(SupPoint::new(m, k, data)?);
    }
    Ok(out)
}
