use isofix_core::families::{random_dyadic_point, random_signed_permutation_group};
use isofix_core::geometry::BOX_CONSTANT;
use isofix_core::{
    group_closure, iterate_box, orbit_center_fixed_point, residual, FiberPermIsometry, GroupSpec, SeededRng,
    SpaceDescriptor, SupPoint, Termination, DEFAULT_MAX_ITER,
};
use serde::Serialize;

use crate::error::{RunError, Status};
use crate::runner::{Context, KindOutcome};
use crate::scenario::{schema, signed_permutation, BoxMethod, BoxScenario};
use crate::verify::{isometry_residual, MISMATCH_TOL};

use super::GROUP_CAP;

#[derive(Debug, Serialize)]
struct BoxInstance {
    index: usize,
    group_order: usize,
    x0: Vec<f64>,
    point: Vec<f64>,
    residual: f64,
    steps: Option<usize>,
    terminated: Option<Termination>,
    final_diameter: Option<f64>,
    /// `diam A_{n+1} <= diam A_n / 2` at every recorded step.
    contraction_holds: Option<bool>,
    trace_file: Option<String>,
    status: Status,
}

pub fn run(s: &BoxScenario, ctx: &Context) -> Result<KindOutcome, RunError> {
    let n = s.n;
    if n == 0 {
        return Err(schema("n must be positive"));
    }
    let max_iter = s.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    let mut out = KindOutcome::default();
    match (&s.generators, &s.random) {
        (Some(gens), None) => {
            let gens = gens
                .iter()
                .enumerate()
                .map(|(i, g)| signed_permutation(g, n, i))
                .collect::<Result<Vec<_>, _>>()?;
            if gens.is_empty() {
                return Err(schema("a group needs at least one generator"));
            }
            let x0 = s.x0.clone().ok_or_else(|| schema("x0 is required with explicit generators"))?;
            if x0.len() != n {
                return Err(schema(format!("x0 has length {}, expected {n}", x0.len())));
            }
            let x0 = SupPoint::real(x0).map_err(|e| schema(format!("x0: {e}")))?;
            let group = group_closure(gens, GROUP_CAP, 1e-10)?;
            solve(&mut out, ctx, s.method, &group, &x0, max_iter, 0, format!("{}.csv", ctx.name))?;
        }
        (None, Some(random)) => {
            if s.x0.is_some() {
                return Err(schema("x0 is drawn from the seed in random mode"));
            }
            for i in 0..random.instances {
                let mut rng = SeededRng::fork(ctx.seed, i as u64);
                let group = random_signed_permutation_group(&mut rng, n, random.max_order)?;
                let x0 = random_dyadic_point(&mut rng, n);
                let file = format!("{}_{i:03}.csv", ctx.name);
                solve(&mut out, ctx, s.method, &group, &x0, max_iter, i, file)?;
            }
        }
        _ => return Err(schema("give exactly one of `generators` or `random`")),
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn solve(
    out: &mut KindOutcome,
    ctx: &Context,
    method: BoxMethod,
    group: &GroupSpec<FiberPermIsometry>,
    x0: &SupPoint,
    max_iter: usize,
    index: usize,
    trace_name: String,
) -> Result<(), RunError> {
    let mut record = BoxInstance {
        index,
        group_order: group.len(),
        x0: x0.as_slice().to_vec(),
        point: Vec::new(),
        residual: f64::NAN,
        steps: None,
        terminated: None,
        final_diameter: None,
        contraction_holds: None,
        trace_file: None,
        status: Status::Ok,
    };
    let (point, solver_residual) = match method {
        BoxMethod::Iterate => {
            let run = iterate_box(group, x0, ctx.tol, max_iter)?;
            let steps = &run.trace.steps;
            let contraction = steps
                .windows(2)
                .all(|w| w[1].diameter <= BOX_CONSTANT * w[0].diameter);
            record.steps = Some(steps.len() - 1);
            record.terminated = Some(run.trace.terminated);
            record.final_diameter = steps.last().map(|s| s.diameter);
            record.contraction_holds = Some(contraction);
            if run.trace.terminated == Termination::MaxIter {
                record.status = Status::NonConvergence;
            }
            if !contraction {
                record.status = Status::Failed;
            }
            if ctx.trace_dir.is_some() {
                let file = ctx.write_trace(trace_name, &run.trace.to_csv())?;
                out.trace_files.push(file.clone());
                record.trace_file = Some(file);
            }
            let r = residual(group, &run.point)?;
            (run.point, r)
        }
        BoxMethod::OrbitCenter => {
            let fp = orbit_center_fixed_point(group, x0, &SpaceDescriptor::box_real(x0.m()))?;
            if fp.residual > ctx.tol {
                record.status = Status::NonConvergence;
            }
            (fp.point, fp.residual)
        }
    };
    let recomputed = isometry_residual(group.elements(), &point);
    if (recomputed - solver_residual).abs() > MISMATCH_TOL {
        record.status = Status::Failed;
        out.warnings.push(format!(
            "instance {index}: solver residual {solver_residual:e} disagrees with recomputed {recomputed:e}"
        ));
    }
    if record.status == Status::Ok && recomputed > 2.0 * ctx.tol {
        record.status = Status::Failed;
    }
    record.point = point.as_slice().to_vec();
    record.residual = recomputed;
    out.absorb_residual(recomputed);
    let status = record.status;
    out.push(&record, status);
    Ok(())
}
