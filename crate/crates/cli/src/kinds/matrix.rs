use isofix_core::derivation::{
    build_similarity, embed_norming_set, extend_along_words, extend_cocycle, inner_generator_values,
    solve_witness, standard_basis, CMatrix, MatrixElement, NormingSet, SimilarityChecks,
    WitnessMethod, EXACT_WITNESS_TOL,
};
use isofix_core::families::{corrupt_value, random_inner_instance};
use isofix_core::{group_closure, Error, GroupSpec, SeededRng};
use serde::Serialize;

use crate::error::{core_status, RunError, Status};
use crate::runner::{Context, KindOutcome};
use crate::scenario::{
    matrix_rows, norming_seeds, resolve_group, schema, square_matrix, ComplexMatrix, MatrixScenario,
    ResolvedGroup,
};
use crate::verify::{witness_residual, MISMATCH_TOL};

use super::GROUP_CAP;

/// Default perturbation for corrupted random instances.
pub const DEFAULT_CORRUPTION: f64 = 1e-2;

#[derive(Debug, Serialize)]
struct Extension {
    consistent: bool,
    /// `[generator, element]` of the failing Cayley edge.
    pair: Option<[String; 2]>,
    violation: Option<f64>,
}

#[derive(Debug, Serialize)]
struct MethodOutcome {
    method: WitnessMethod,
    witness: ComplexMatrix,
    residual_model: f64,
    residual_operator: f64,
    worst_element: String,
    no_exact_witness: bool,
    approximate: bool,
    converged: bool,
    /// Residual at most the scenario tolerance.
    accepted: bool,
    similarity: Option<SimilarityChecks>,
}

#[derive(Debug, Serialize)]
struct DerivationInstance {
    index: usize,
    group: String,
    order: usize,
    gamma_size: usize,
    corrupted: bool,
    extension: Extension,
    methods: Vec<MethodOutcome>,
    /// Least squares and orbit center make the same accept/reject call at
    /// the exact-witness threshold.
    oracle_agreement: Option<bool>,
    error: Option<String>,
    status: Status,
}

struct Prepared {
    label: String,
    group: GroupSpec<MatrixElement>,
    gamma: NormingSet,
    generator_values: Vec<CMatrix>,
    corrupted: bool,
}

pub fn run(s: &MatrixScenario, ctx: &Context) -> Result<KindOutcome, RunError> {
    let d = s.d;
    if d == 0 {
        return Err(schema("d must be positive"));
    }
    let sources = s.group.to_vec();
    if sources.is_empty() {
        return Err(schema("at least one group is required"));
    }
    let groups = sources
        .iter()
        .map(|src| resolve_group(src, d))
        .collect::<Result<Vec<_>, _>>()?;
    let seeds = match &s.norming_seeds {
        Some(v) => norming_seeds(v, d)?,
        None => standard_basis(d),
    };
    let methods: Vec<WitnessMethod> = match &s.methods {
        Some(m) if m.is_empty() => return Err(schema("methods must be nonempty")),
        Some(m) => m.iter().map(|&x| x.into()).collect(),
        None => WitnessMethod::ALL.to_vec(),
    };
    let similarity = s.similarity.unwrap_or(true);

    let close = |g: &ResolvedGroup| -> Result<(GroupSpec<MatrixElement>, NormingSet), RunError> {
        let group = group_closure(g.generators.clone(), GROUP_CAP, 1e-10)?;
        let gamma = embed_norming_set(&group, &seeds)?;
        Ok((group, gamma))
    };

    let spec = &s.derivation;
    let mut prepared = Vec::new();
    match (&spec.values, &spec.inner, &spec.random_inner) {
        (Some(_), None, None) | (None, Some(_), None) if groups.len() != 1 => {
            return Err(schema("explicit derivation data needs exactly one group"));
        }
        (Some(values), None, None) => {
            let (group, gamma) = close(&groups[0])?;
            if values.len() != group.generators().len() {
                return Err(schema(format!(
                    "{} derivation values for {} generators",
                    values.len(),
                    group.generators().len()
                )));
            }
            let generator_values = values
                .iter()
                .enumerate()
                .map(|(i, v)| square_matrix(v, d, &format!("derivation value {i}")))
                .collect::<Result<Vec<_>, _>>()?;
            prepared.push(Prepared {
                label: groups[0].label.clone(),
                group,
                gamma,
                generator_values,
                corrupted: false,
            });
        }
        (None, Some(t0), None) => {
            let (group, gamma) = close(&groups[0])?;
            let t0 = square_matrix(t0, d, "inner")?;
            let generator_values = inner_generator_values(&group, &t0);
            prepared.push(Prepared {
                label: groups[0].label.clone(),
                group,
                gamma,
                generator_values,
                corrupted: false,
            });
        }
        (None, None, Some(random)) => {
            let closed = groups.iter().map(close).collect::<Result<Vec<_>, _>>()?;
            let eps = random.eps.unwrap_or(DEFAULT_CORRUPTION);
            for i in 0..random.instances {
                let which = i % groups.len();
                let (group, gamma) = closed[which].clone();
                let mut rng = SeededRng::fork(ctx.seed, i as u64);
                let mut inst = random_inner_instance(&mut rng, &group);
                if random.corrupt {
                    let s = rng.index(group.generators().len());
                    corrupt_value(&mut inst.generator_values[s], &group.generators()[s], eps);
                }
                prepared.push(Prepared {
                    label: groups[which].label.clone(),
                    group,
                    gamma,
                    generator_values: inst.generator_values,
                    corrupted: random.corrupt,
                });
            }
        }
        _ => return Err(schema("give exactly one of `values`, `inner` or `random_inner`")),
    }

    let mut out = KindOutcome::default();
    for (index, p) in prepared.into_iter().enumerate() {
        solve_instance(&mut out, ctx, index, p, &methods, similarity)?;
    }
    Ok(out)
}

fn solve_instance(
    out: &mut KindOutcome,
    ctx: &Context,
    index: usize,
    p: Prepared,
    methods: &[WitnessMethod],
    similarity: bool,
) -> Result<(), RunError> {
    let mut record = DerivationInstance {
        index,
        group: p.label.clone(),
        order: p.group.len(),
        gamma_size: p.gamma.len(),
        corrupted: p.corrupted,
        extension: Extension {
            consistent: true,
            pair: None,
            violation: None,
        },
        methods: Vec::new(),
        oracle_agreement: None,
        error: None,
        status: Status::Ok,
    };
    let (delta, consistent) = match extend_cocycle(&p.group, &p.generator_values, ctx.tol) {
        Ok(delta) => (delta, true),
        Err(e @ Error::CocycleInconsistent { .. }) => {
            if let Error::CocycleInconsistent { left, right, violation } = &e {
                record.extension = Extension {
                    consistent: false,
                    pair: Some([left.clone(), right.clone()]),
                    violation: Some(*violation),
                };
            }
            record.error = Some(e.to_string());
            record.status = core_status(&e);
            // the solvers still run on the word extension so the two
            // oracles' decisions on bad data can be compared
            (extend_along_words(&p.group, &p.generator_values)?, false)
        }
        Err(e) => return Err(e.into()),
    };

    let elements: Vec<CMatrix> = p.group.elements().iter().map(|g| g.matrix().clone()).collect();
    let mut ls_accept = None;
    let mut oc_accept = None;
    for &method in methods {
        let report = solve_witness(&p.group, &delta, &p.gamma, method)?;
        let recomputed = witness_residual(&elements, delta.values(), p.gamma.vectors(), &report.witness);
        if (recomputed - report.residual.model).abs() > MISMATCH_TOL * (1.0 + recomputed) {
            record.status = record.status.max(Status::Failed);
            out.warnings.push(format!(
                "instance {index} {method:?}: solver residual {:e} disagrees with recomputed {recomputed:e}",
                report.residual.model
            ));
        }
        let worst = recomputed.max(report.residual.operator);
        let exact = worst <= EXACT_WITNESS_TOL;
        match method {
            WitnessMethod::LeastSquares => ls_accept = Some(exact),
            WitnessMethod::OrbitCenter => oc_accept = Some(exact),
            WitnessMethod::Averaging => {}
        }
        let accepted = worst <= ctx.tol;
        if consistent {
            out.absorb_residual(worst);
            if report.no_exact_witness && method == WitnessMethod::LeastSquares {
                record.status = record.status.max(Status::Inconsistent);
            } else if !accepted || !report.converged {
                record.status = record.status.max(Status::NonConvergence);
            }
            if report.approximate {
                let note = format!("{method:?}: iterative enclosing-ball path used (k > 4); witness is approximate");
                if !out.warnings.contains(&note) {
                    out.warnings.push(note);
                }
            }
        }
        let sim = if similarity && consistent && accepted {
            let checks = build_similarity(&report.witness, &p.group, &delta, &p.gamma)?.checks;
            if !checks.passed {
                record.status = record.status.max(Status::Failed);
            }
            Some(checks)
        } else {
            None
        };
        record.methods.push(MethodOutcome {
            method,
            witness: matrix_rows(&report.witness),
            residual_model: recomputed,
            residual_operator: report.residual.operator,
            worst_element: report.residual.worst_element,
            no_exact_witness: report.no_exact_witness,
            approximate: report.approximate,
            converged: report.converged,
            accepted,
            similarity: sim,
        });
    }
    if let (Some(a), Some(b)) = (ls_accept, oc_accept) {
        record.oracle_agreement = Some(a == b);
        if a != b {
            record.status = record.status.max(Status::Failed);
        }
    }
    let status = record.status;
    if out.error.is_none() {
        out.error = record.error.clone();
    }
    out.push(&record, status);
    Ok(())
}
