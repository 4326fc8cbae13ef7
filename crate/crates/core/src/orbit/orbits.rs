use crate::error::Result;
use crate::geometry::{cloud_diameter, sup_distance, PointCloud, SupPoint};
use crate::orbit::group::GroupSpec;
use crate::orbit::isometry::FiberPermIsometry;

/// Deduplication tolerance for orbit points.
pub const ORBIT_TOL: f64 = 1e-10;

/// `{g·x0 : g ∈ G}` with points closer than [`ORBIT_TOL`] merged.
pub fn orbit(group: &GroupSpec<FiberPermIsometry>, x0: &SupPoint) -> Result<PointCloud> {
    let mut points: Vec<SupPoint> = Vec::new();
    for g in group.elements() {
        let y = g.apply(x0)?;
        let mut seen = false;
        for p in &points {
            if sup_distance(p, &y)? <= ORBIT_TOL {
                seen = true;
                break;
            }
        }
        if !seen {
            points.push(y);
        }
    }
    PointCloud::new(points)
}

/// `sup_{g,h} d(g·x0, h·x0)`.
pub fn orbit_diameter(group: &GroupSpec<FiberPermIsometry>, x0: &SupPoint) -> Result<f64> {
    cloud_diameter(&orbit(group, x0)?)
}
