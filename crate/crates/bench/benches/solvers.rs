use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use isofix_bench::{gaussian_points, quaternion_instance, signed_permutation_instance};
use isofix_core::derivation::{solve_witness, WitnessMethod};
use isofix_core::geometry::seb_center;
use isofix_core::{iterate_box, orbit_center_fixed_point, SpaceDescriptor};

fn box_iteration(c: &mut Criterion) {
    let mut group = c.benchmark_group("box_fixed_point");
    for n in [4, 8, 16] {
        let (g, x0) = signed_permutation_instance(11, n);
        group.bench_with_input(BenchmarkId::new("iterate", n), &n, |b, _| {
            b.iter(|| iterate_box(black_box(&g), black_box(&x0), 1e-10, 200).unwrap())
        });
        let space = SpaceDescriptor::fiber_hilbert(n, 1);
        group.bench_with_input(BenchmarkId::new("orbit_center", n), &n, |b, _| {
            b.iter(|| orbit_center_fixed_point(black_box(&g), black_box(&x0), &space).unwrap())
        });
    }
    group.finish();
}

fn enclosing_ball(c: &mut Criterion) {
    let mut group = c.benchmark_group("seb");
    for k in [3, 6] {
        let points = gaussian_points(12, 48, k);
        let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| seb_center(black_box(&refs)).unwrap())
        });
    }
    group.finish();
}

fn witness(c: &mut Criterion) {
    let (g, delta, gamma) = quaternion_instance(13);
    let mut group = c.benchmark_group("witness_q8");
    for method in WitnessMethod::ALL {
        group.bench_function(format!("{method:?}"), |b| {
            b.iter(|| solve_witness(&g, black_box(&delta), &gamma, method).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, box_iteration, enclosing_ball, witness);
criterion_main!(benches);
