//! Centers with the uniform relative normal structure property.
//!
//! A space has the property with constant `c < 1` if every bounded admissible
//! `M` has a point `z_M` with
//!
//! 1. `d(x, z_M) <= c·diam M` for all `x ∈ M`, and
//! 2. `d(y, z_M) <= c·diam M` whenever `M ⊂ B(y, c·diam M)`.
//!
//! Real `ℓ∞^n` has it with `c = 1/2` (midpoint of the bounding box).
//! `ℓ∞(Γ, R^k)` has it with `c = √3/2` (fiberwise smallest-enclosing-ball
//! centers, whose radii are at most `diam/√2`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::boxes::SupBox;
use crate::geometry::point::{cloud_diameter, sup_distance, PointCloud, SupPoint};
use crate::geometry::seb::{seb_center_with, SebMethod, SebOptions};

pub const BOX_CONSTANT: f64 = 0.5;
pub const FIBER_CONSTANT: f64 = 0.866_025_403_784_438_6; // √3/2

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SpaceKind {
    BoxReal { n: usize },
    FiberHilbert { m: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub urns_constant: f64,
}

impl SpaceDescriptor {
    pub fn box_real(n: usize) -> Self {
        Self {
            kind: SpaceKind::BoxReal { n },
            urns_constant: BOX_CONSTANT,
        }
    }

    pub fn fiber_hilbert(m: usize, k: usize) -> Self {
        Self {
            kind: SpaceKind::FiberHilbert { m, k },
            urns_constant: FIBER_CONSTANT,
        }
    }

    /// `(m, k)` of the points of this space.
    pub fn shape(&self) -> (usize, usize) {
        match self.kind {
            SpaceKind::BoxReal { n } => (n, 1),
            SpaceKind::FiberHilbert { m, k } => (m, k),
        }
    }

    pub fn check_point(&self, p: &SupPoint) -> Result<()> {
        if (p.m(), p.k()) != self.shape() {
            return Err(Error::Dimension(format!(
                "point of shape (m={}, k={}) in space of shape {:?}",
                p.m(),
                p.k(),
                self.shape()
            )));
        }
        Ok(())
    }
}

/// Result of [`urns_center`].
#[derive(Debug, Clone, PartialEq)]
pub struct UrnsCenter {
    pub point: SupPoint,
    /// Largest per-fiber ball radius (0 in box space).
    pub max_radius: f64,
    /// Some fiber went through the iterative enclosing-ball path.
    pub approximate: bool,
    /// Every fiber solve met its tolerance.
    pub converged: bool,
    /// Largest duality gap reported by an iterative fiber solve.
    pub max_gap: f64,
}

pub fn urns_center(cloud: &PointCloud, space: &SpaceDescriptor) -> Result<UrnsCenter> {
    urns_center_with(cloud, space, &SebOptions::default())
}

pub fn urns_center_with(
    cloud: &PointCloud,
    space: &SpaceDescriptor,
    opts: &SebOptions,
) -> Result<UrnsCenter> {
    let first = cloud
        .points()
        .first()
        .ok_or_else(|| Error::Domain("center of an empty cloud".into()))?;
    space.check_point(first)?;
    if cloud.points().iter().all(|p| p == first) {
        return Ok(UrnsCenter {
            point: first.clone(),
            max_radius: 0.0,
            approximate: false,
            converged: true,
            max_gap: 0.0,
        });
    }
    match space.kind {
        SpaceKind::BoxReal { .. } => Ok(UrnsCenter {
            point: SupBox::bounding(cloud)?.center(),
            max_radius: 0.0,
            approximate: false,
            converged: true,
            max_gap: 0.0,
        }),
        SpaceKind::FiberHilbert { m, k } => {
            let mut data = Vec::with_capacity(m * k);
            let mut out = UrnsCenter {
                point: first.clone(),
                max_radius: 0.0,
                approximate: false,
                converged: true,
                max_gap: 0.0,
            };
            for gamma in 0..m {
                let ball = seb_center_with(&cloud.fiber_set(gamma), opts)?;
                data.extend_from_slice(&ball.center);
                out.max_radius = out.max_radius.max(ball.radius);
                out.approximate |= ball.method == SebMethod::DualGradient;
                out.converged &= ball.converged;
                out.max_gap = out.max_gap.max(ball.gap);
            }
            out.point = SupPoint::new(m, k, data)?;
            Ok(out)
        }
    }
}

/// Outcome of checking both defining conditions for a candidate center.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateCheck {
    pub diameter: f64,
    pub bound: f64,
    /// `max_{x∈M} d(x, z)`.
    pub max_distance_to_center: f64,
    /// Samples `y` that satisfied `M ⊂ B(y, c·diam M)`.
    pub hypotheses_met: usize,
    /// `max d(y, z)` over those samples (0 when none).
    pub max_distance_from_samples: f64,
    pub first_bullet: bool,
    pub second_bullet: bool,
}

impl CertificateCheck {
    pub fn holds(&self) -> bool {
        self.first_bullet && self.second_bullet
    }
}

/// Checks both conditions for `z` against `M`, testing the second one on
/// every sample `y` that satisfies its hypothesis. Comparisons allow `tol`.
pub fn check_urns_certificate(
    cloud: &PointCloud,
    z: &SupPoint,
    c: f64,
    y_samples: &[SupPoint],
    tol: f64,
) -> Result<CertificateCheck> {
    let diameter = cloud_diameter(cloud)?;
    let bound = c * diameter;
    let mut max_to_center: f64 = 0.0;
    for x in cloud.points() {
        max_to_center = max_to_center.max(sup_distance(x, z)?);
    }
    let mut hypotheses_met = 0;
    let mut max_from_samples: f64 = 0.0;
    for y in y_samples {
        let mut contained = true;
        for x in cloud.points() {
            if sup_distance(x, y)? > bound + tol {
                contained = false;
                break;
            }
        }
        if contained {
            hypotheses_met += 1;
            max_from_samples = max_from_samples.max(sup_distance(y, z)?);
        }
    }
    Ok(CertificateCheck {
        diameter,
        bound,
        max_distance_to_center: max_to_center,
        hypotheses_met,
        max_distance_from_samples: max_from_samples,
        first_bullet: max_to_center <= bound + tol,
        second_bullet: max_from_samples <= bound + tol,
    })
}

/// True iff both defining conditions hold; a sample set with no hypothesis
/// satisfied passes the second condition vacuously.
pub fn verify_urns_certificate(
    cloud: &PointCloud,
    z: &SupPoint,
    c: f64,
    y_samples: &[SupPoint],
    tol: f64,
) -> Result<bool> {
    Ok(check_urns_certificate(cloud, z, c, y_samples, tol)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((FIBER_CONSTANT - 3f64.sqrt() / 2.0).abs() < 1e-16);
        assert_eq!(SpaceDescriptor::box_real(3).urns_constant, 0.5);
    }

    #[test]
    fn singleton_cloud_center_is_the_point() {
        let p = SupPoint::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let cloud = PointCloud::new(vec![p.clone()]).unwrap();
        let z = urns_center(&cloud, &SpaceDescriptor::fiber_hilbert(2, 3)).unwrap();
        assert_eq!(z.point, p);
        assert!(verify_urns_certificate(&cloud, &p, 0.3, &[], 0.0).unwrap());
    }

    #[test]
    fn per_fiber_midpoints() {
        let cloud = PointCloud::new(vec![
            SupPoint::real(vec![1.0, 0.0]).unwrap(),
            SupPoint::real(vec![0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        for space in [SpaceDescriptor::box_real(2), SpaceDescriptor::fiber_hilbert(2, 1)] {
            let z = urns_center(&cloud, &space).unwrap();
            assert_eq!(z.point.as_slice(), &[0.5, 0.5]);
        }
    }

    #[test]
    fn far_point_fails_first_bullet() {
        let cloud = PointCloud::new(vec![
            SupPoint::real(vec![1.0, 0.0]).unwrap(),
            SupPoint::real(vec![0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let far = SupPoint::real(vec![10.0, 10.0]).unwrap();
        let check = check_urns_certificate(&cloud, &far, 0.5, &[], 1e-12).unwrap();
        assert!(!check.first_bullet);
        assert!(check.second_bullet);
    }

    #[test]
    fn wrong_space_is_rejected() {
        let cloud = PointCloud::new(vec![SupPoint::real(vec![1.0, 0.0]).unwrap()]).unwrap();
        assert!(urns_center(&cloud, &SpaceDescriptor::box_real(3)).is_err());
        let empty = PointCloud::new(vec![]).unwrap();
        assert!(matches!(
            urns_center(&empty, &SpaceDescriptor::box_real(2)),
            Err(Error::Domain(_))
        ));
    }
}
