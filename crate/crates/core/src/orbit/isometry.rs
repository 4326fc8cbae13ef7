use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::SupPoint;
use crate::orbit::group::GroupElement;

const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Isometry of `ℓ∞(Γ, R^k)` of the form
/// `(φx)_γ = U_γ · x_{perm(γ)} + t_γ` with orthogonal `U_γ`.
///
/// With `k = 1` and `U_γ = ±1` these are the signed permutations plus
/// translations of real `ℓ∞^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPermIsometry {
    perm: Vec<usize>,
    maps: Vec<DMatrix<f64>>,
    translation: SupPoint,
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

impl FiberPermIsometry {
    pub fn new(perm: Vec<usize>, maps: Vec<DMatrix<f64>>, translation: SupPoint) -> Result<Self> {
        let m = perm.len();
        let k = translation.k();
        if maps.len() != m || translation.m() != m {
            return Err(Error::Dimension(format!(
                "isometry with {m} indices, {} fiber maps, translation over {} indices",
                maps.len(),
                translation.m()
            )));
        }
        check_permutation(&perm)?;
        for (gamma, u) in maps.iter().enumerate() {
            if u.nrows() != k || u.ncols() != k {
                return Err(Error::Dimension(format!(
                    "fiber map {gamma} is {}x{}, expected {k}x{k}",
                    u.nrows(),
                    u.ncols()
                )));
            }
            let defect = (u.transpose() * u - DMatrix::identity(k, k)).amax();
            if defect > ORTHOGONALITY_TOL {
                return Err(Error::Invalid(format!(
                    "fiber map {gamma} is not orthogonal (defect {defect:.3e})"
                )));
            }
        }
        Ok(Self {
            perm,
            maps,
            translation,
        })
    }

    pub fn identity(m: usize, k: usize) -> Self {
        Self {
            perm: (0..m).collect(),
            maps: vec![DMatrix::identity(k, k); m],
            translation: SupPoint::zeros(m, k),
        }
    }

    pub fn translation_by(t: SupPoint) -> Self {
        let mut id = Self::identity(t.m(), t.k());
        id.translation = t;
        id
    }

    /// `x ↦ (s_i · x_{perm(i)} + t_i)_i` on real `ℓ∞^n`.
    pub fn signed_permutation(perm: Vec<usize>, signs: &[f64], translation: Vec<f64>) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1.0) {
            return Err(Error::Invalid("signs must be ±1".into()));
        }
        let maps = signs.iter().map(|&s| DMatrix::from_element(1, 1, s)).collect();
        Self::new(perm, maps, SupPoint::real(translation)?)
    }

    pub fn m(&self) -> usize {
        self.perm.len()
    }

    pub fn k(&self) -> usize {
        self.translation.k()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn fiber_maps(&self) -> &[DMatrix<f64>] {
        &self.maps
    }

    pub fn translation(&self) -> &SupPoint {
        &self.translation
    }

    fn check_space(&self, m: usize, k: usize) -> Result<()> {
        if self.m() != m || self.k() != k {
            return Err(Error::Dimension(format!(
                "isometry on (m={}, k={}) applied in (m={m}, k={k})",
                self.m(),
                self.k()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, x: &SupPoint) -> Result<SupPoint> {
        self.check_space(x.m(), x.k())?;
        let k = self.k();
        let mut out = Vec::with_capacity(self.m() * k);
        for (gamma, (&src, u)) in self.perm.iter().zip(&self.maps).enumerate() {
            let xs = x.fiber(src);
            let t = self.translation.fiber(gamma);
            for i in 0..k {
                let row: f64 = (0..k).map(|j| u[(i, j)] * xs[j]).sum();
                out.push(row + t[i]);
            }
        }
        SupPoint::new(self.m(), k, out)
    }

    /// `self ∘ other`, acting as `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        other.check_space(self.m(), self.k())?;
        let m = self.m();
        let k = self.k();
        let mut perm = Vec::with_capacity(m);
        let mut maps = Vec::with_capacity(m);
        let mut t = Vec::with_capacity(m * k);
        for gamma in 0..m {
            let mid = self.perm[gamma];
            perm.push(other.perm[mid]);
            let u = &self.maps[gamma];
            maps.push(u * &other.maps[mid]);
            let tb = other.translation.fiber(mid);
            let ta = self.translation.fiber(gamma);
            for i in 0..k {
                t.push((0..k).map(|j| u[(i, j)] * tb[j]).sum::<f64>() + ta[i]);
            }
        }
        Ok(Self {
            perm,
            maps,
            translation: SupPoint::new(m, k, t)?,
        })
    }

    pub fn invert(&self) -> Self {
        let m = self.m();
        let k = self.k();
        let mut inv_perm = vec![0; m];
        for (gamma, &p) in self.perm.iter().enumerate() {
            inv_perm[p] = gamma;
        }
        let mut maps = Vec::with_capacity(m);
        let mut t = Vec::with_capacity(m * k);
        for &src in &inv_perm {
            let ut = self.maps[src].transpose();
            let ts = self.translation.fiber(src);
            for i in 0..k {
                t.push(-(0..k).map(|j| ut[(i, j)] * ts[j]).sum::<f64>());
            }
            maps.push(ut);
        }
        Self {
            perm: inv_perm,
            maps,
            translation: SupPoint::new(m, k, t).expect("finite translation"),
        }
    }

    /// Images of the origin, of every basis point and of one fixed
    /// off-axis point, concatenated. Two isometries act identically iff these
    /// agree.
    pub fn probe_images(&self) -> Vec<f64> {
        let m = self.m();
        let k = self.k();
        let dim = m * k;
        let mut probes = Vec::with_capacity(dim + 2);
        probes.push(SupPoint::zeros(m, k));
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            probes.push(SupPoint::new(m, k, e).expect("basis point"));
        }
        let off_axis = (0..dim).map(|i| ((i as f64 + 1.0) * 0.618_033_988_749_895).fract() - 0.5).collect();
        probes.push(SupPoint::new(m, k, off_axis).expect("probe point"));
        probes
            .iter()
            .flat_map(|p| self.apply(p).expect("probe in same space").into_vec())
            .collect()
    }
}

impl GroupElement for FiberPermIsometry {
    fn compose(&self, other: &Self) -> Result<Self> {
        FiberPermIsometry::compose(self, other)
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.m(), self.k())
    }

    fn signature(&self) -> Vec<f64> {
        self.probe_images()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sup_distance;

    fn swap() -> FiberPermIsometry {
        FiberPermIsometry::signed_permutation(vec![1, 0], &[1.0, 1.0], vec![0.0, 0.0]).unwrap()
    }

    #[test]
    fn swap_is_an_involution() {
        let s = swap();
        let ss = s.compose(&s).unwrap();
        assert_eq!(ss, FiberPermIsometry::identity(2, 1));
    }

    #[test]
    fn identity_is_neutral() {
        let s = FiberPermIsometry::signed_permutation(vec![1, 2, 0], &[-1.0, 1.0, -1.0], vec![0.5, 1.0, 2.0])
            .unwrap();
        let id = FiberPermIsometry::identity(3, 1);
        assert_eq!(id.compose(&s).unwrap(), s);
        assert_eq!(s.compose(&id).unwrap(), s);
    }

    #[test]
    fn translation_inverse() {
        let t = FiberPermIsometry::translation_by(SupPoint::real(vec![1.0, -2.0]).unwrap());
        let inv = t.invert();
        assert_eq!(inv.translation().as_slice(), &[-1.0, 2.0]);
        assert_eq!(FiberPermIsometry::identity(2, 1).invert(), FiberPermIsometry::identity(2, 1));
    }

    #[test]
    fn composition_matches_evaluation() {
        let a = FiberPermIsometry::signed_permutation(vec![2, 0, 1], &[1.0, -1.0, 1.0], vec![0.25, 0.0, -1.0])
            .unwrap();
        let b = FiberPermIsometry::signed_permutation(vec![1, 0, 2], &[-1.0, -1.0, 1.0], vec![1.0, 2.0, 3.0])
            .unwrap();
        let x = SupPoint::real(vec![0.3, -0.7, 1.1]).unwrap();
        let lhs = a.compose(&b).unwrap().apply(&x).unwrap();
        let rhs = a.apply(&b.apply(&x).unwrap()).unwrap();
        assert!(sup_distance(&lhs, &rhs).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(FiberPermIsometry::signed_permutation(vec![0, 0], &[1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(FiberPermIsometry::signed_permutation(vec![0, 1], &[2.0, 1.0], vec![0.0, 0.0]).is_err());
        let shear = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            FiberPermIsometry::new(vec![0], vec![shear], SupPoint::zeros(1, 2)),
            Err(Error::Invalid(_))
        ));
        let a = FiberPermIsometry::identity(2, 1);
        let b = FiberPermIsometry::identity(3, 1);
        assert!(matches!(a.compose(&b), Err(Error::Dimension(_))));
    }
}
