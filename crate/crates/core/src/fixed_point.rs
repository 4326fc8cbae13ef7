//! Common fixed points of finite isometry groups.
//!
//! Two constructions:
//!
//! * [`iterate_box`] runs the admissible-set contraction exactly in real
//!   `ℓ∞^n`: `A_0 = ⋂_g B(g·x0, diam orbit)`, `A_{n+1} = H(A_n)` with
//!   `c = 1/2`, picking `x_n` as the midpoint of `A_n`. Every `A_n` is
//!   `G`-invariant and `diam A_{n+1} <= diam A_n / 2`.
//! * [`orbit_center_fixed_point`] takes the canonical center of the orbit of
//!   `x0`. The center is isometry-equivariant and the orbit is `G`-invariant,
//!   so the center is fixed. This is the only method used in `ℓ∞(Γ, R^k)`
//!   with `k > 1`, where admissible sets have no finite representation.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    box_center, box_h, cloud_diameter, sup_distance, urns_center, Admissible, SpaceDescriptor,
    SupBox, SupPoint, BOX_CONSTANT,
};
use crate::orbit::{orbit, FiberPermIsometry, GroupSpec};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Tolerance,
    MaxIter,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub step: usize,
    pub diameter: f64,
    pub point: SupPoint,
    pub set: SupBox,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<TraceStep>,
    pub terminated: Termination,
}

impl IterationTrace {
    /// CSV with header `step,diameter,x0,..,x{n-1}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,diameter");
        let dim = self.steps.first().map_or(0, |s| s.point.as_slice().len());
        for i in 0..dim {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for s in &self.steps {
            let _ = write!(out, "{},{}", s.step, s.diameter);
            for v in s.point.as_slice() {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxIteration {
    pub point: SupPoint,
    pub trace: IterationTrace,
}

impl BoxIteration {
    pub fn converged(&self) -> bool {
        self.trace.terminated == Termination::Tolerance
    }
}

/// Exact admissible-set contraction in real `ℓ∞^n`.
///
/// Stops once `diam A_n <= tol`; the midpoint of that `A_n` is then within
/// `tol` of every `g·x` since `A_n` is `G`-invariant. Hitting `max_iter`
/// returns the last midpoint with [`Termination::MaxIter`].
pub fn iterate_box(
    group: &GroupSpec<FiberPermIsometry>,
    x0: &SupPoint,
    tol: f64,
    max_iter: usize,
) -> Result<BoxIteration> {
    if x0.k() != 1 {
        return Err(Error::Dimension(format!(
            "box iteration needs a real ℓ∞^n point, got fiber dimension {}",
            x0.k()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let cloud = orbit(group, x0)?;
    let radius = cloud_diameter(&cloud)?;
    let mut current = Admissible::ball_intersection(cloud.points(), radius)?;
    let mut steps = Vec::new();
    let mut n = 0;
    loop {
        let set = current
            .as_box()
            .cloned()
            .ok_or_else(|| Error::Domain("admissible set became empty".into()))?;
        let diameter = set.diameter();
        let point = box_center(&current)?;
        steps.push(TraceStep {
            step: n,
            diameter,
            point: point.clone(),
            set,
        });
        if diameter <= tol {
            return Ok(BoxIteration {
                point,
                trace: IterationTrace {
                    steps,
                    terminated: Termination::Tolerance,
                },
            });
        }
        if n >= max_iter {
            return Ok(BoxIteration {
                point,
                trace: IterationTrace {
                    steps,
                    terminated: Termination::MaxIter,
                },
            });
        }
        current = box_h(&current, BOX_CONSTANT);
        n += 1;
    }
}

/// Center of the orbit of `x0`, fixed by `G` through equivariance.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterFixedPoint {
    pub point: SupPoint,
    pub residual: f64,
    pub orbit_size: usize,
    /// The iterative enclosing-ball path was used in some fiber.
    pub approximate: bool,
    pub converged: bool,
}

pub fn orbit_center_fixed_point(
    group: &GroupSpec<FiberPermIsometry>,
    x0: &SupPoint,
    space: &SpaceDescriptor,
) -> Result<CenterFixedPoint> {
    space.check_point(x0)?;
    let cloud = orbit(group, x0)?;
    let center = urns_center(&cloud, space)?;
    let residual = residual(group, &center.point)?;
    Ok(CenterFixedPoint {
        point: center.point,
        residual,
        orbit_size: cloud.len(),
        approximate: center.approximate,
        converged: center.converged,
    })
}

/// `max_{g ∈ G} d(g·x, x)`.
pub fn residual(group: &GroupSpec<FiberPermIsometry>, x: &SupPoint) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g in group.elements() {
        worst = worst.max(sup_distance(&g.apply(x)?, x)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::group_closure;

    fn swap_group() -> GroupSpec<FiberPermIsometry> {
        let swap = FiberPermIsometry::signed_permutation(vec![1, 0], &[1.0, 1.0], vec![0.0, 0.0]).unwrap();
        group_closure(vec![swap], 10, 1e-10).unwrap()
    }

    #[test]
    fn fixed_start_stops_at_step_zero() {
        let g = swap_group();
        let x0 = SupPoint::real(vec![0.75, 0.75]).unwrap();
        let run = iterate_box(&g, &x0, 1e-10, 200).unwrap();
        assert_eq!(run.point, x0);
        assert_eq!(run.trace.steps.len(), 1);
        assert_eq!(run.trace.steps[0].diameter, 0.0);
    }

    #[test]
    fn swap_converges_to_diagonal_midpoint() {
        let g = swap_group();
        let x0 = SupPoint::real(vec![1.0, 0.0]).unwrap();
        let run = iterate_box(&g, &x0, 1e-10, 200).unwrap();
        assert!(run.converged());
        assert_eq!(run.point.as_slice(), &[0.5, 0.5]);
        assert_eq!(residual(&g, &run.point).unwrap(), 0.0);
        assert_eq!(residual(&g, &x0).unwrap(), 1.0);

        let center = orbit_center_fixed_point(&g, &x0, &SpaceDescriptor::box_real(2)).unwrap();
        assert_eq!(center.point.as_slice(), &[0.5, 0.5]);
        assert_eq!(center.residual, 0.0);
    }

    #[test]
    fn max_iter_flags_partial_result() {
        let g = swap_group();
        let x0 = SupPoint::real(vec![1.0, 0.0]).unwrap();
        let run = iterate_box(&g, &x0, 1e-10, 0).unwrap();
        assert_eq!(run.trace.terminated, Termination::MaxIter);
        assert_eq!(run.trace.steps.len(), 1);
    }

    #[test]
    fn rejects_fiber_points_and_bad_tolerance() {
        let g = swap_group();
        let x0 = SupPoint::real(vec![1.0, 0.0]).unwrap();
        assert!(iterate_box(&g, &x0, 0.0, 10).is_err());
        let fiber = SupPoint::new(1, 2, vec![0.0, 0.0]).unwrap();
        assert!(iterate_box(&g, &fiber, 1e-10, 10).is_err());
    }

    #[test]
    fn trace_csv_layout() {
        let g = swap_group();
        let x0 = SupPoint::real(vec![1.0, 0.0]).unwrap();
        let run = iterate_box(&g, &x0, 1e-10, 200).unwrap();
        let csv = run.trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("step,diameter,x0,x1"));
        assert_eq!(lines.next(), Some("0,1,0.5,0.5"));
    }
}
