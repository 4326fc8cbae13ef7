use isofix_core::families::hypothesis_samples;
use isofix_core::geometry::{check_urns_certificate, urns_center, CertificateCheck};
use isofix_core::{PointCloud, SeededRng, SpaceDescriptor, SupBox, SupPoint};
use serde::Serialize;

use crate::error::{RunError, Status};
use crate::runner::{Context, KindOutcome};
use crate::scenario::{fiber_point, schema, SpaceName, UrnsScenario};
use crate::verify::{max_distance, MISMATCH_TOL};

/// Default number of hypothesis samples per cloud.
pub const DEFAULT_SAMPLES: usize = 50;

#[derive(Debug, Serialize)]
struct UrnsInstance {
    index: usize,
    m: usize,
    k: usize,
    points: usize,
    constant: f64,
    center: Vec<Vec<f64>>,
    check: CertificateCheck,
    holds: bool,
    approximate: bool,
    converged: bool,
    status: Status,
}

pub fn run(s: &UrnsScenario, ctx: &Context) -> Result<KindOutcome, RunError> {
    let samples = s.samples.unwrap_or(DEFAULT_SAMPLES);
    let mut out = KindOutcome::default();
    match (&s.points, &s.bounds, &s.random) {
        (Some(points), None, None) => {
            let (m, k) = s.m.zip(s.k).ok_or_else(|| schema("explicit points need m and k"))?;
            let pts = points
                .iter()
                .enumerate()
                .map(|(i, p)| fiber_point(p, m, k, &format!("point {i}")))
                .collect::<Result<Vec<_>, _>>()?;
            let space = space_for(s.space.unwrap_or(SpaceName::Fiber), m, k)?;
            let cloud = PointCloud::new(pts).map_err(|e| schema(e.to_string()))?;
            certify(&mut out, ctx, &space, &cloud, samples, 0)?;
        }
        (None, Some(bounds), None) => {
            let bx = SupBox::new(bounds.lo.clone(), bounds.hi.clone()).map_err(|e| schema(format!("box: {e}")))?;
            if bx.dim() == 0 || bx.dim() > 12 {
                return Err(schema("box dimension must be between 1 and 12"));
            }
            if s.space == Some(SpaceName::Fiber) {
                return Err(schema("a box input lives in the box space"));
            }
            let space = SpaceDescriptor::box_real(bx.dim());
            let cloud = PointCloud::new(bx.vertices()).map_err(|e| schema(e.to_string()))?;
            certify(&mut out, ctx, &space, &cloud, samples, 0)?;
        }
        (None, None, Some(random)) => {
            if random.max_m == 0 || random.k == 0 || random.max_points == 0 {
                return Err(schema("random clouds need positive max_m, k and max_points"));
            }
            for i in 0..random.instances {
                let mut rng = SeededRng::fork(ctx.seed, i as u64);
                let m = 1 + rng.index(random.max_m);
                let count = if random.max_points >= 2 {
                    2 + rng.index(random.max_points - 1)
                } else {
                    1
                };
                let pts = (0..count)
                    .map(|_| SupPoint::new(m, random.k, (0..m * random.k).map(|_| rng.normal()).collect()))
                    .collect::<Result<Vec<_>, _>>()?;
                let space = space_for(s.space.unwrap_or(SpaceName::Fiber), m, random.k)?;
                certify(&mut out, ctx, &space, &PointCloud::new(pts)?, samples, i)?;
            }
        }
        _ => return Err(schema("give exactly one of `points`, `box` or `random`")),
    }
    Ok(out)
}

fn space_for(name: SpaceName, m: usize, k: usize) -> Result<SpaceDescriptor, RunError> {
    match name {
        SpaceName::Box if k == 1 => Ok(SpaceDescriptor::box_real(m)),
        SpaceName::Box => Err(schema("the box space needs k = 1")),
        SpaceName::Fiber => Ok(SpaceDescriptor::fiber_hilbert(m, k)),
    }
}

fn certify(
    out: &mut KindOutcome,
    ctx: &Context,
    space: &SpaceDescriptor,
    cloud: &PointCloud,
    samples: usize,
    index: usize,
) -> Result<(), RunError> {
    let c = space.urns_constant;
    let center = urns_center(cloud, space)?;
    // samples use their own stream so the cloud draw does not depend on `samples`
    let mut rng = SeededRng::fork(ctx.seed ^ 0x5eed_5a3b_1e5, index as u64);
    let ys = hypothesis_samples(&mut rng, cloud, &center.point, c, samples)?;
    let check = check_urns_certificate(cloud, &center.point, c, &ys, ctx.tol)?;
    let mut status = if check.holds() { Status::Ok } else { Status::Failed };
    if !center.converged && status == Status::Ok {
        status = Status::NonConvergence;
    }
    let recomputed = max_distance(cloud.points(), &center.point);
    if (recomputed - check.max_distance_to_center).abs() > MISMATCH_TOL {
        status = Status::Failed;
        out.warnings
            .push(format!("instance {index}: center distance recomputation disagrees"));
    }
    if check.hypotheses_met < ys.len() {
        out.warnings.push(format!(
            "instance {index}: only {} of {} samples met the hypothesis",
            check.hypotheses_met,
            ys.len()
        ));
    }
    let (m, k) = space.shape();
    let record = UrnsInstance {
        index,
        m,
        k,
        points: cloud.len(),
        constant: c,
        center: center.point.fibers().map(<[f64]>::to_vec).collect(),
        holds: check.holds(),
        check,
        approximate: center.approximate,
        converged: center.converged,
        status,
    };
    out.push(&record, status);
    Ok(())
}
