use isofix_core::{group_closure, orbit_center_fixed_point, SpaceDescriptor};
use serde::Serialize;

use crate::error::{RunError, Status};
use crate::runner::{Context, KindOutcome};
use crate::scenario::{fiber_isometry, fiber_point, schema, FiberScenario};
use crate::verify::{isometry_residual, MISMATCH_TOL};

use super::GROUP_CAP;

#[derive(Debug, Serialize)]
struct FiberInstance {
    index: usize,
    group_order: usize,
    orbit_size: usize,
    point: Vec<Vec<f64>>,
    residual: f64,
    approximate: bool,
    converged: bool,
    status: Status,
}

pub fn run(s: &FiberScenario, ctx: &Context) -> Result<KindOutcome, RunError> {
    if s.m == 0 || s.k == 0 {
        return Err(schema("m and k must be positive"));
    }
    if s.generators.is_empty() {
        return Err(schema("a group needs at least one generator"));
    }
    let gens = s
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| fiber_isometry(g, s.m, s.k, i))
        .collect::<Result<Vec<_>, _>>()?;
    let x0 = fiber_point(&s.x0, s.m, s.k, "x0")?;
    let group = group_closure(gens, GROUP_CAP, 1e-9)?;
    let fp = orbit_center_fixed_point(&group, &x0, &SpaceDescriptor::fiber_hilbert(s.m, s.k))?;
    let recomputed = isometry_residual(group.elements(), &fp.point);
    let mut out = KindOutcome::default();
    let mut status = Status::Ok;
    if !fp.converged || recomputed > ctx.tol {
        status = Status::NonConvergence;
    }
    if (recomputed - fp.residual).abs() > MISMATCH_TOL {
        status = Status::Failed;
        out.warnings.push(format!(
            "solver residual {:e} disagrees with recomputed {recomputed:e}",
            fp.residual
        ));
    }
    if fp.approximate {
        out.warnings
            .push("iterative enclosing-ball path used in some fiber; center is approximate".into());
    }
    out.absorb_residual(recomputed);
    let record = FiberInstance {
        index: 0,
        group_order: group.len(),
        orbit_size: fp.orbit_size,
        point: fp.point.fibers().map(<[f64]>::to_vec).collect(),
        residual: recomputed,
        approximate: fp.approximate,
        converged: fp.converged,
        status,
    };
    out.push(&record, status);
    Ok(out)
}
