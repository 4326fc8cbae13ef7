use crate::error::{Error, Result};

/// Euclidean distance between two fibers of equal length.
pub fn fiber_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn fiber_norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Element of `ℓ∞(Γ, R^k)` for a finite index set `Γ = {0, .., m-1}`.
///
/// Stored fiber-major: fiber `γ` occupies `data[γ*k .. (γ+1)*k]`. With `k = 1`
/// this is a point of real `ℓ∞^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupPoint {
    m: usize,
    k: usize,
    data: Vec<f64>,
}

impl SupPoint {
    pub fn new(m: usize, k: usize, data: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("fiber dimension must be at least 1".into()));
        }
        if data.len() != m * k {
            return Err(Error::Dimension(format!(
                "expected {} coordinates for m={m}, k={k}, got {}",
                m * k,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("point has non-finite coordinates".into()));
        }
        Ok(Self { m, k, data })
    }

    /// Point of real `ℓ∞^n` (fiber dimension 1).
    pub fn real(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords.len(), 1, coords)
    }

    pub fn from_fibers(fibers: &[Vec<f64>]) -> Result<Self> {
        let k = fibers
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Dimension("point needs at least one fiber".into()))?;
        if fibers.iter().any(|f| f.len() != k) {
            return Err(Error::Dimension("fibers of unequal dimension".into()));
        }
        Self::new(fibers.len(), k, fibers.concat())
    }

    pub fn zeros(m: usize, k: usize) -> Self {
        Self {
            m,
            k,
            data: vec![0.0; m * k],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn fiber(&self, gamma: usize) -> &[f64] {
        &self.data[gamma * self.k..(gamma + 1) * self.k]
    }

    pub fn fiber_mut(&mut self, gamma: usize) -> &mut [f64] {
        &mut self.data[gamma * self.k..(gamma + 1) * self.k]
    }

    pub fn fibers(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.k)
    }

    pub fn same_space(&self, other: &SupPoint) -> bool {
        self.m == other.m && self.k == other.k
    }

    pub fn norm(&self) -> f64 {
        self.fibers().map(fiber_norm).fold(0.0, f64::max)
    }
}

/// Sup over `γ` of the Euclidean distance between fibers.
pub fn sup_distance(x: &SupPoint, y: &SupPoint) -> Result<f64> {
    if !x.same_space(y) {
        return Err(Error::Dimension(format!(
            "points live in different spaces: (m={}, k={}) vs (m={}, k={})",
            x.m, x.k, y.m, y.k
        )));
    }
    Ok(x.fibers()
        .zip(y.fibers())
        .map(|(a, b)| fiber_distance(a, b))
        .fold(0.0, f64::max))
}

/// Finite set of points in a common `ℓ∞(Γ, R^k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<SupPoint>,
}

impl PointCloud {
    pub fn new(points: Vec<SupPoint>) -> Result<Self> {
        if let Some(first) = points.first() {
            if points.iter().any(|p| !p.same_space(first)) {
                return Err(Error::Dimension("cloud mixes points of different spaces".into()));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[SupPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(m, k)` of the ambient space, if the cloud is nonempty.
    pub fn shape(&self) -> Option<(usize, usize)> {
        self.points.first().map(|p| (p.m, p.k))
    }

    /// The set `{x_γ : x ∈ M}` for one index `γ`.
    pub fn fiber_set(&self, gamma: usize) -> Vec<&[f64]> {
        self.points.iter().map(|p| p.fiber(gamma)).collect()
    }
}

/// Exact pairwise maximum of [`sup_distance`].
pub fn cloud_diameter(cloud: &PointCloud) -> Result<f64> {
    if cloud.is_empty() {
        return Err(Error::Domain("diameter of an empty cloud".into()));
    }
    let pts = cloud.points();
    let mut diam: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            diam = diam.max(sup_distance(a, b)?);
        }
    }
    Ok(diam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        let x = SupPoint::real(vec![1.0, 0.0]).unwrap();
        let y = SupPoint::real(vec![0.0, 1.0]).unwrap();
        assert_eq!(sup_distance(&x, &x).unwrap(), 0.0);
        assert_eq!(sup_distance(&x, &y).unwrap(), 1.0);

        let a = SupPoint::new(1, 2, vec![0.0, 0.0]).unwrap();
        let b = SupPoint::new(1, 2, vec![3.0, 4.0]).unwrap();
        assert_eq!(sup_distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = SupPoint::new(2, 1, vec![0.0, 0.0]).unwrap();
        let b = SupPoint::new(1, 2, vec![0.0, 0.0]).unwrap();
        assert!(matches!(sup_distance(&a, &b), Err(Error::Dimension(_))));
        assert!(PointCloud::new(vec![a, b]).is_err());
        assert!(SupPoint::new(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn diameter_examples() {
        let p = SupPoint::real(vec![1.0, 0.0]).unwrap();
        let q = SupPoint::real(vec![0.0, 1.0]).unwrap();
        let single = PointCloud::new(vec![p.clone()]).unwrap();
        assert_eq!(cloud_diameter(&single).unwrap(), 0.0);
        let pair = PointCloud::new(vec![p, q]).unwrap();
        assert_eq!(cloud_diameter(&pair).unwrap(), 1.0);
        let empty = PointCloud::new(vec![]).unwrap();
        assert!(matches!(cloud_diameter(&empty), Err(Error::Domain(_))));
    }
}
