mod common;

use common::{brute_diameter, hull_defect, random_cloud, random_isometry, random_point};
use isofix_core::geometry::seb::{dual_gradient, welzl};
use isofix_core::geometry::{check_urns_certificate, urns_center, FIBER_CONSTANT};
use isofix_core::{
    box_a, box_center, box_h, cloud_diameter, seb_center, sup_distance, verify_urns_certificate,
    Admissible, FiberPermIsometry, PointCloud, SeededRng, SpaceDescriptor, SupBox, SupPoint,
};
use proptest::prelude::*;

/// Bounds of `{y on grid : max_{x ∈ grid(M)} |y − x|∞ <= r}` in two dimensions.
fn grid_ball_intersection(lo: &[f64; 2], hi: &[f64; 2], r: f64, step: f64) -> Option<([f64; 2], [f64; 2])> {
    let samples = |a: f64, b: f64| -> Vec<f64> {
        let n = ((b - a) / step).round() as usize;
        (0..=n).map(|i| a + (b - a) * i as f64 / n.max(1) as f64).collect()
    };
    let xs: Vec<[f64; 2]> = samples(lo[0], hi[0])
        .into_iter()
        .flat_map(|u| samples(lo[1], hi[1]).into_iter().map(move |v| [u, v]))
        .collect();
    let span = hi[0].max(hi[1]) - lo[0].min(lo[1]) + 2.0;
    let ys = samples(lo[0].min(lo[1]) - span, hi[0].max(hi[1]) + span);
    let mut out: Option<([f64; 2], [f64; 2])> = None;
    for &u in &ys {
        for &v in &ys {
            let ok = xs.iter().all(|x| (u - x[0]).abs().max((v - x[1]).abs()) <= r + step);
            if ok {
                let (mut l, mut h) = out.unwrap_or(([u, v], [u, v]));
                l[0] = l[0].min(u);
                l[1] = l[1].min(v);
                h[0] = h[0].max(u);
                h[1] = h[1].max(v);
                out = Some((l, h));
            }
        }
    }
    out
}

#[test]
fn box_a_matches_grid_oracle() {
    let m = SupBox::new(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap();
    let a = box_a(&Admissible::Box(m), 0.5);
    let a = a.as_box().unwrap();
    let step = 0.02;
    let (lo, hi) = grid_ball_intersection(&[0.0, 0.0], &[2.0, 1.0], 1.0, step).unwrap();
    for i in 0..2 {
        assert!((a.lo()[i] - lo[i]).abs() <= 2.0 * step);
        assert!((a.hi()[i] - hi[i]).abs() <= 2.0 * step);
    }
    assert_eq!(a.lo()[0], 1.0);
    assert_eq!(a.hi()[0], 1.0);
}

#[test]
fn box_a_and_h_agree_with_grid_on_random_boxes() {
    let mut rng = SeededRng::new(11);
    for _ in 0..10 {
        let lo = [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)];
        let hi = [lo[0] + rng.uniform(0.1, 1.0), lo[1] + rng.uniform(0.1, 1.0)];
        let m = Admissible::Box(SupBox::new(lo.to_vec(), hi.to_vec()).unwrap());
        let d = m.as_box().unwrap().diameter();
        let step = d / 100.0;
        let a = box_a(&m, 0.5);
        let a = a.as_box().unwrap();
        let (glo, ghi) = grid_ball_intersection(&lo, &hi, d / 2.0, step).unwrap();
        for i in 0..2 {
            assert!((a.lo()[i] - glo[i]).abs() <= 2.0 * step, "A lo {i}");
            assert!((a.hi()[i] - ghi[i]).abs() <= 2.0 * step, "A hi {i}");
        }

        // H(M): points of A(M) within c·diam M of every point of A(M)
        let h = box_h(&m, 0.5);
        let h = h.as_box().unwrap();
        let a_grid: Vec<[f64; 2]> = (0..=20)
            .flat_map(|i| {
                (0..=20).map(move |j| {
                    [
                        a.lo()[0] + (a.hi()[0] - a.lo()[0]) * i as f64 / 20.0,
                        a.lo()[1] + (a.hi()[1] - a.lo()[1]) * j as f64 / 20.0,
                    ]
                })
            })
            .collect();
        for y in &a_grid {
            let inside = a_grid
                .iter()
                .all(|z| (y[0] - z[0]).abs().max((y[1] - z[1]).abs()) <= d / 2.0 + 1e-12);
            let boxed = h.contains(y, 1e-12);
            if inside {
                assert!(h.contains(y, d / 20.0 + 1e-12), "H misses {y:?}");
            }
            if boxed {
                assert!(inside || a_grid.iter().all(|z| (y[0] - z[0]).abs().max((y[1] - z[1]).abs()) <= d / 2.0 + d / 20.0));
            }
        }
    }
}

#[test]
fn h_of_rectangle_is_inside_the_degenerate_strip() {
    let m = Admissible::Box(SupBox::new(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap());
    let h = box_h(&m, 0.5);
    let h = h.as_box().unwrap();
    assert_eq!((h.lo()[0], h.hi()[0]), (1.0, 1.0));
    assert!(h.lo()[1] >= 0.0 && h.hi()[1] <= 1.0);
    assert!(h.diameter() <= 1.0);
}

proptest! {
    #[test]
    fn contraction_holds_exactly(
        lo in proptest::collection::vec(-100.0f64..100.0, 1..8),
        widths in proptest::collection::vec(0.0f64..50.0, 8),
        c in 0.5f64..0.99,
    ) {
        let hi: Vec<f64> = lo.iter().zip(&widths).map(|(l, w)| l + w).collect();
        let m = Admissible::Box(SupBox::new(lo.clone(), hi).unwrap());
        let d = m.as_box().unwrap().diameter();
        let h = box_h(&m, c);
        let h = h.as_box().expect("H(M) is nonempty");
        prop_assert!(h.diameter() <= c * d);
    }

    #[test]
    fn sup_distance_is_a_metric(seed in any::<u64>(), m in 1usize..6, k in 1usize..4) {
        let mut rng = SeededRng::new(seed);
        let x = random_point(&mut rng, m, k, 3.0);
        let y = random_point(&mut rng, m, k, 3.0);
        let z = random_point(&mut rng, m, k, 3.0);
        let dxy = sup_distance(&x, &y).unwrap();
        prop_assert_eq!(dxy, sup_distance(&y, &x).unwrap());
        prop_assert_eq!(sup_distance(&x, &x).unwrap(), 0.0);
        prop_assert!(dxy <= sup_distance(&x, &z).unwrap() + sup_distance(&z, &y).unwrap() + 1e-12);
    }
}

#[test]
fn hundred_random_boxes_contract() {
    let mut rng = SeededRng::new(5);
    for _ in 0..100 {
        let n = 1 + rng.index(6);
        let lo: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let hi: Vec<f64> = lo.iter().map(|l| l + rng.uniform(0.0, 3.0)).collect();
        let m = Admissible::Box(SupBox::new(lo, hi).unwrap());
        let d = m.as_box().unwrap().diameter();
        assert!(box_h(&m, 0.5).as_box().unwrap().diameter() <= 0.5 * d);
    }
}

#[test]
fn diameter_matches_brute_force() {
    let mut rng = SeededRng::new(3);
    let pts: Vec<SupPoint> = (0..50)
        .map(|_| SupPoint::real((0..3).map(|_| rng.unit()).collect()).unwrap())
        .collect();
    let cloud = PointCloud::new(pts.clone()).unwrap();
    assert_eq!(cloud_diameter(&cloud).unwrap(), brute_diameter(&pts));
}

#[test]
fn midpoint_is_fixed_by_box_symmetries() {
    // symmetry group of [0,2]x[0,2]x[1,2]: signed permutations that map the box to itself
    let bx = SupBox::new(vec![0.0, 0.0, 1.0], vec![2.0, 2.0, 2.0]).unwrap();
    let mid = bx.center();
    let mut found = 0;
    for perm in [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
        for mask in 0..8u32 {
            let signs: Vec<f64> = (0..3).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
            // choose the translation that maps the box onto itself, if any
            let mut t = vec![0.0; 3];
            let mut ok = true;
            for i in 0..3 {
                let (l, h) = (bx.lo()[perm[i]], bx.hi()[perm[i]]);
                let (il, ih) = if signs[i] > 0.0 { (l, h) } else { (-h, -l) };
                if (ih - il - (bx.hi()[i] - bx.lo()[i])).abs() > 0.0 {
                    ok = false;
                }
                t[i] = bx.lo()[i] - il;
            }
            if !ok {
                continue;
            }
            let g = FiberPermIsometry::signed_permutation(perm.to_vec(), &signs, t).unwrap();
            let corners = bx.vertices();
            assert!(corners.iter().all(|c| bx.contains(g.apply(c).unwrap().as_slice(), 0.0)));
            assert_eq!(g.apply(&mid).unwrap(), mid);
            found += 1;
        }
    }
    assert_eq!(found, 16);
}

#[test]
fn midpoint_certificate_on_random_box_clouds() {
    let mut rng = SeededRng::new(17);
    for _ in 0..1000 {
        let n = 1 + rng.index(5);
        let cloud = PointCloud::new(
            (0..1 + rng.index(10))
                .map(|_| SupPoint::real((0..n).map(|_| rng.normal()).collect()).unwrap())
                .collect(),
        )
        .unwrap();
        let z = box_center(&Admissible::Box(SupBox::bounding(&cloud).unwrap())).unwrap();
        let d = cloud_diameter(&cloud).unwrap();
        let ys: Vec<SupPoint> = (0..20)
            .map(|_| {
                SupPoint::real(z.as_slice().iter().map(|v| v + rng.uniform(-d, d)).collect()).unwrap()
            })
            .collect();
        assert!(verify_urns_certificate(&cloud, &z, 0.5, &ys, 1e-12).unwrap());
    }
}

#[test]
fn seb_radius_bound_and_hull_membership() {
    let mut rng = SeededRng::new(23);
    for trial in 0..200 {
        let k = 1 + trial % 7;
        let n = 1 + rng.index(12);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| rng.normal()).collect()).collect();
        let refs: Vec<&[f64]> = pts.iter().map(Vec::as_slice).collect();
        let ball = seb_center(&refs).unwrap();
        assert!(ball.converged);
        let mut diam: f64 = 0.0;
        for a in &pts {
            for b in &pts {
                diam = diam.max(a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt());
            }
        }
        assert!(ball.radius <= diam / 2f64.sqrt() + 1e-9, "trial {trial}");
        assert!(ball.radius <= FIBER_CONSTANT * diam + 1e-9);
        assert!(hull_defect(&refs, &ball.center) <= 1e-8, "trial {trial}: center outside hull");
    }
}

#[test]
fn exact_and_iterative_enclosing_balls_agree() {
    let mut rng = SeededRng::new(29);
    for trial in 0..100 {
        let k = 2 + trial % 7;
        let n = 2 + rng.index(15);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| rng.normal()).collect()).collect();
        let refs: Vec<&[f64]> = pts.iter().map(Vec::as_slice).collect();
        let exact = welzl(&refs).unwrap();
        let iterative = dual_gradient(&refs, 1e-10, 100_000).unwrap();
        assert!(iterative.converged);
        let gap = exact
            .center
            .iter()
            .zip(&iterative.center)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-8, "trial {trial}: centers differ by {gap}");
        assert!((exact.radius - iterative.radius).abs() < 1e-9);
    }
}

#[test]
fn urns_center_bound_on_random_cloud() {
    let mut rng = SeededRng::new(31);
    let cloud = random_cloud(&mut rng, 20, 4, 3);
    let z = urns_center(&cloud, &SpaceDescriptor::fiber_hilbert(4, 3)).unwrap().point;
    let d = cloud_diameter(&cloud).unwrap();
    for x in cloud.points() {
        assert!(sup_distance(x, &z).unwrap() <= FIBER_CONSTANT * d);
    }
    let check = check_urns_certificate(&cloud, &z, FIBER_CONSTANT, &[], 1e-12).unwrap();
    assert!(check.holds());
    assert_eq!(check.hypotheses_met, 0);
}

#[test]
fn urns_center_is_equivariant() {
    let mut rng = SeededRng::new(37);
    for trial in 0..60 {
        let m = 1 + rng.index(4);
        let k = 1 + trial % 6;
        let n = 2 + rng.index(10);
        let cloud = random_cloud(&mut rng, n, m, k);
        let phi = random_isometry(&mut rng, m, k);
        let space = SpaceDescriptor::fiber_hilbert(m, k);
        let moved = PointCloud::new(cloud.points().iter().map(|p| phi.apply(p).unwrap()).collect()).unwrap();
        let lhs = urns_center(&moved, &space).unwrap().point;
        let rhs = phi.apply(&urns_center(&cloud, &space).unwrap().point).unwrap();
        assert!(sup_distance(&lhs, &rhs).unwrap() <= 1e-9, "trial {trial}");
    }
}
