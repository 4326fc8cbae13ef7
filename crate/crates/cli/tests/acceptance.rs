//! Acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test -p isofix-cli --test acceptance -- --nocapture` to
//! see the lines. The test fails if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use isofix_cli::{run_scenario_file, run_suite, Report, RunOptions, Status};
use isofix_core::families::{hypothesis_samples, random_dyadic_point, random_signed_permutation_group};
use isofix_core::geometry::{urns_center, BOX_CONSTANT, FIBER_CONSTANT};
use isofix_core::{
    iterate_box, residual, verify_urns_certificate, PointCloud, SeededRng, SpaceDescriptor, SupPoint, Termination,
};
use serde_json::Value;

fn pack() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/acceptance")
}

fn scenario(file: &str) -> Report {
    run_scenario_file(&pack().join(file), &RunOptions::default())
}

struct Line {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

impl Line {
    fn print(&self) {
        println!(
            "criterion {} ({}): {} [{:.3} s] {}",
            self.id,
            self.title,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        );
    }
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

/// 100 signed-permutation groups on `ℓ∞⁸` with `|G| <= 48`, checked from
/// the recorded diameters; the CLI scenario must agree instance by instance.
fn contraction_law() -> Line {
    let start = Instant::now();
    let seed = 1;
    let mut ok = true;
    let mut worst_residual: f64 = 0.0;
    let mut max_order = 0;
    for i in 0..100u64 {
        let mut rng = SeededRng::fork(seed, i);
        let group = random_signed_permutation_group(&mut rng, 8, 48).expect("group");
        let x0 = random_dyadic_point(&mut rng, 8);
        let run = iterate_box(&group, &x0, 1e-10, 200).expect("iteration");
        max_order = max_order.max(group.len());
        ok &= group.len() <= 48 && run.trace.terminated == Termination::Tolerance;
        ok &= run.trace.steps.windows(2).all(|w| w[1].diameter <= BOX_CONSTANT * w[0].diameter);
        worst_residual = worst_residual.max(residual(&group, &run.point).expect("residual"));
    }
    ok &= worst_residual <= 1e-9;
    let report = scenario("02_box_contraction.json");
    let instances = &report.result.instances;
    ok &= report.result.status == Status::Ok && instances.len() == 100;
    ok &= instances.iter().all(|i| i["contraction_holds"] == Value::Bool(true) && f(&i["residual"]) <= 1e-9);
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(5);
    Line {
        id: 1,
        title: "contraction law",
        passed: ok,
        detail: format!("100 groups, max |G| {max_order}, max residual {worst_residual:.1e}"),
        elapsed,
    }
}

/// 1000 clouds in `ℓ∞(Γ, R³)`, `|Γ| <= 6`, fiberwise center, 50 samples each.
fn urns_certificate() -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut failures = 0;
    for i in 0..1000u64 {
        let mut rng = SeededRng::fork(2, i);
        let m = 1 + rng.index(6);
        let count = 2 + rng.index(11);
        let points: Vec<SupPoint> = (0..count)
            .map(|_| SupPoint::new(m, 3, (0..m * 3).map(|_| rng.normal()).collect()).unwrap())
            .collect();
        let cloud = PointCloud::new(points).unwrap();
        let z = urns_center(&cloud, &SpaceDescriptor::fiber_hilbert(m, 3)).unwrap().point;
        let ys = hypothesis_samples(&mut rng, &cloud, &z, FIBER_CONSTANT, 50).unwrap();
        if !verify_urns_certificate(&cloud, &z, FIBER_CONSTANT, &ys, 1e-10).unwrap() {
            failures += 1;
        }
    }
    ok &= failures == 0;
    let report = scenario("04_urns_random.json");
    ok &= report.result.status == Status::Ok && report.result.instances.len() == 1000;
    ok &= report
        .result
        .instances
        .iter()
        .all(|i| i["holds"] == Value::Bool(true) && i["check"]["hypotheses_met"] == Value::from(50));
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(10);
    Line {
        id: 2,
        title: "certificate",
        passed: ok,
        detail: format!("1000 clouds, {failures} failures"),
        elapsed,
    }
}

const WITNESS_FILES: [&str; 4] = [
    "06_witness_q8.json",
    "07_witness_s3.json",
    "08_witness_c12.json",
    "09_witness_c4.json",
];

fn method_residual(m: &Value) -> f64 {
    f(&m["residual_model"]).max(f(&m["residual_operator"]))
}

fn witness_recovery(valid: &[Report], corrupted: &Report, elapsed: Duration) -> Line {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for r in valid {
        ok &= r.result.status == Status::Ok && r.result.instances.len() == 20;
        for inst in &r.result.instances {
            count += 1;
            let methods = inst["methods"].as_array().unwrap();
            ok &= methods.len() == 3;
            for m in methods {
                worst = worst.max(method_residual(m));
            }
        }
    }
    ok &= worst <= 1e-8;
    let mut rejected = 0;
    for inst in &corrupted.result.instances {
        let by_extension = inst["status"] == Value::from("inconsistent");
        let flagged = inst["methods"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|m| m["method"] != Value::from("averaging"))
            .all(|m| method_residual(m) > 1e-6);
        if by_extension || flagged {
            rejected += 1;
        }
    }
    ok &= corrupted.result.instances.len() == 20 && rejected == 20;
    ok &= corrupted.result.exit_code == 3 && corrupted.result.passed;
    ok &= elapsed <= Duration::from_secs(10);
    Line {
        id: 3,
        title: "witness recovery",
        passed: ok,
        detail: format!("{count} inner instances, max residual {worst:.1e}; {rejected}/20 corrupted rejected"),
        elapsed,
    }
}

fn similarity(valid: &[Report]) -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    let mut max_condition: f64 = 0.0;
    for r in valid {
        for inst in &r.result.instances {
            for m in inst["methods"].as_array().unwrap() {
                let s = &m["similarity"];
                if s.is_null() {
                    ok = false;
                    continue;
                }
                checked += 1;
                let gap = f(&s["homomorphism"]).max(f(&s["intertwining"]));
                worst = worst.max(gap);
                max_condition = max_condition.max(f(&s["condition_number"]));
                ok &= s["passed"] == Value::Bool(true) && gap <= 1e-9;
            }
        }
    }
    ok &= max_condition.is_finite();
    Line {
        id: 4,
        title: "similarity",
        passed: ok,
        detail: format!("{checked} witnesses, max violation {worst:.1e}, max condition number {max_condition:.2}"),
        elapsed: start.elapsed(),
    }
}

fn group_algebra() -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for file in ["11_group_algebra_z6.json", "12_group_algebra_s3.json"] {
        let r = scenario(file);
        ok &= r.result.status == Status::Ok && r.result.instances.len() == 20;
        for inst in &r.result.instances {
            for m in inst["methods"].as_array().unwrap() {
                worst = worst.max(f(&m["residual"]));
            }
        }
    }
    ok &= worst <= 1e-8;
    Line {
        id: 5,
        title: "group algebra",
        passed: ok,
        detail: format!("Z6 and S3, 20 cocycles each, max residual {worst:.1e}"),
        elapsed: start.elapsed(),
    }
}

/// Least squares never consults the fixed-point machinery; their
/// accept/reject calls must coincide on all 100 instances.
fn oracle_independence(valid: &[Report], corrupted: &Report) -> Line {
    let start = Instant::now();
    let mut agree = 0;
    let mut total = 0;
    for r in valid.iter().chain(std::iter::once(corrupted)) {
        for inst in &r.result.instances {
            total += 1;
            if inst["oracle_agreement"] == Value::Bool(true) {
                agree += 1;
            }
        }
    }
    Line {
        id: 6,
        title: "oracle independence",
        passed: total == 100 && agree == total,
        detail: format!("{agree}/{total} instances with matching decisions"),
        elapsed: start.elapsed(),
    }
}

fn determinism() -> Line {
    let start = Instant::now();
    let results = |opts: &RunOptions| -> Vec<String> {
        run_suite(&pack(), opts)
            .expect("suite")
            .reports
            .iter()
            .map(|r| serde_json::to_string(&r.result).unwrap())
            .collect()
    };
    let default = RunOptions::default();
    let seeded = RunOptions {
        seed: Some(7),
        ..RunOptions::default()
    };
    let first = results(&default);
    let ok = first.len() == 12 && first == results(&default) && results(&seeded) == results(&seeded);
    Line {
        id: 7,
        title: "determinism",
        passed: ok,
        detail: format!("{} result blocks compared byte for byte", first.len()),
        elapsed: start.elapsed(),
    }
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let valid: Vec<Report> = WITNESS_FILES.iter().map(|f| scenario(f)).collect();
    let corrupted = scenario("10_witness_corrupted.json");
    let witness_time = start.elapsed();

    let lines = vec![
        contraction_law(),
        urns_certificate(),
        witness_recovery(&valid, &corrupted, witness_time),
        similarity(&valid),
        group_algebra(),
        oracle_independence(&valid, &corrupted),
        determinism(),
    ];
    for line in &lines {
        line.print();
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
