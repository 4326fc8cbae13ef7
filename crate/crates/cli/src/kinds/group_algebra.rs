use isofix_core::derivation::{
    finite_group_algebra_witness, inner_point_mass_cocycle, GroupAlgebraMethod, PointMassCocycle, Scalars, C64,
};
use isofix_core::{Error, SeededRng};
use serde::Serialize;

use crate::error::{core_status, RunError, Status};
use crate::runner::{Context, KindOutcome};
use crate::scenario::{resolve_finite_group, scalars_value, schema, to_complex, Complex, GroupAlgebraMethodName, GroupAlgebraScenario};
use crate::verify::{group_algebra_residual, MISMATCH_TOL};

#[derive(Debug, Serialize)]
struct MethodOutcome {
    method: GroupAlgebraMethod,
    t: Vec<Complex>,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct GroupAlgebraInstance {
    index: usize,
    order: usize,
    scalars: Scalars,
    methods: Vec<MethodOutcome>,
    error: Option<String>,
    status: Status,
}

pub fn run(s: &GroupAlgebraScenario, ctx: &Context) -> Result<KindOutcome, RunError> {
    let group = resolve_finite_group(&s.group)?;
    let n = group.order();
    let methods: Vec<GroupAlgebraMethod> = match &s.methods {
        Some(m) if m.is_empty() => return Err(schema("methods must be nonempty")),
        Some(m) => m
            .iter()
            .map(|x| match x {
                GroupAlgebraMethodName::OrbitCenter => GroupAlgebraMethod::OrbitCenter,
                GroupAlgebraMethodName::Averaging => GroupAlgebraMethod::Averaging,
            })
            .collect(),
        None => vec![GroupAlgebraMethod::OrbitCenter, GroupAlgebraMethod::Averaging],
    };
    let mut cocycles: Vec<PointMassCocycle> = Vec::new();
    match (&s.values, &s.inner, &s.random_inner) {
        (Some(values), None, None) => {
            if values.len() != n || values.iter().any(|v| v.len() != n) {
                return Err(schema(format!("values must be {n}x{n}")));
            }
            let table = values
                .iter()
                .map(|row| row.iter().map(|z| scalars_value(z, s.scalars, "values")).collect())
                .collect::<Result<Vec<Vec<C64>>, _>>()?;
            cocycles.push(table);
        }
        (None, Some(t0), None) => {
            if t0.len() != n {
                return Err(schema(format!("inner must have length {n}")));
            }
            let t0 = t0
                .iter()
                .map(|z| scalars_value(z, s.scalars, "inner"))
                .collect::<Result<Vec<_>, _>>()?;
            cocycles.push(inner_point_mass_cocycle(&group, &t0));
        }
        (None, None, Some(random)) => {
            for i in 0..random.instances {
                let mut rng = SeededRng::fork(ctx.seed, i as u64);
                let t0: Vec<C64> = (0..n)
                    .map(|_| match s.scalars {
                        Scalars::Real => C64::new(rng.normal(), 0.0),
                        Scalars::Complex => {
                            let re = rng.normal();
                            C64::new(re, rng.normal())
                        }
                    })
                    .collect();
                cocycles.push(inner_point_mass_cocycle(&group, &t0));
            }
        }
        _ => return Err(schema("give exactly one of `values`, `inner` or `random_inner`")),
    }

    let mut out = KindOutcome::default();
    for (index, values) in cocycles.iter().enumerate() {
        let mut record = GroupAlgebraInstance {
            index,
            order: n,
            scalars: s.scalars,
            methods: Vec::new(),
            error: None,
            status: Status::Ok,
        };
        for &method in &methods {
            match finite_group_algebra_witness(&group, values, s.scalars, method, ctx.tol) {
                Ok(w) => {
                    let recomputed = group_algebra_residual(&group, values, &w.t);
                    if (recomputed - w.residual).abs() > MISMATCH_TOL {
                        record.status = record.status.max(Status::Failed);
                    }
                    if recomputed > ctx.tol {
                        record.status = record.status.max(Status::NonConvergence);
                    }
                    out.absorb_residual(recomputed);
                    record.methods.push(MethodOutcome {
                        method,
                        t: w.t.iter().map(|&z| to_complex(z)).collect(),
                        residual: recomputed,
                    });
                }
                Err(e @ (Error::CocycleInconsistent { .. } | Error::ClosureCap { .. })) => {
                    record.status = record.status.max(core_status(&e));
                    record.error = Some(e.to_string());
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if out.error.is_none() {
            out.error = record.error.clone();
        }
        let status = record.status;
        out.push(&record, status);
    }
    Ok(out)
}
