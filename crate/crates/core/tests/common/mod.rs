#![allow(dead_code)]

use isofix_core::{FiberPermIsometry, PointCloud, SeededRng, SupPoint};
use nalgebra::{DMatrix, DVector};

pub fn random_point(rng: &mut SeededRng, m: usize, k: usize, scale: f64) -> SupPoint {
    SupPoint::new(m, k, (0..m * k).map(|_| scale * rng.normal()).collect()).unwrap()
}

pub fn random_cloud(rng: &mut SeededRng, n: usize, m: usize, k: usize) -> PointCloud {
    PointCloud::new((0..n).map(|_| random_point(rng, m, k, 1.0)).collect()).unwrap()
}

pub fn random_orthogonal(rng: &mut SeededRng, k: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(k, k, |_, _| rng.normal());
    a.qr().q()
}

pub fn random_isometry(rng: &mut SeededRng, m: usize, k: usize) -> FiberPermIsometry {
    let perm = rng.permutation(m);
    let maps = (0..m).map(|_| random_orthogonal(rng, k)).collect();
    FiberPermIsometry::new(perm, maps, random_point(rng, m, k, 2.0)).unwrap()
}

/// Brute-force pairwise maximum of the sup distance, written out directly.
pub fn brute_diameter(points: &[SupPoint]) -> f64 {
    let mut best: f64 = 0.0;
    for a in points {
        for b in points {
            let mut d: f64 = 0.0;
            for g in 0..a.m() {
                let s: f64 = a.fiber(g).iter().zip(b.fiber(g)).map(|(x, y)| (x - y).powi(2)).sum();
                d = d.max(s.sqrt());
            }
            best = best.max(d);
        }
    }
    best
}

/// Lawson-Hanson nonnegative least squares: `min |A x − b|` with `x >= 0`.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    for _ in 0..(3 * n + 10) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > 1e-14)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let sub = DMatrix::from_fn(a.nrows(), idx.len(), |r, c| a[(r, idx[c])]);
            let z_sub = sub.clone().svd(true, true).solve(b, 1e-14).unwrap();
            let mut z = DVector::zeros(n);
            for (c, &i) in idx.iter().enumerate() {
                z[i] = z_sub[c];
            }
            if idx.iter().all(|&i| z[i] > 0.0) {
                x = z;
                break;
            }
            let mut alpha = f64::INFINITY;
            for &i in &idx {
                if z[i] <= 0.0 {
                    alpha = alpha.min(x[i] / (x[i] - z[i]));
                }
            }
            x = &x + (&z - &x) * alpha;
            for &i in &idx {
                if x[i] <= 1e-15 {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    x
}

/// Distance from `c` to the convex hull of `points`, via NNLS on
/// `[P; 1ᵀ] λ = [c; 1]`.
pub fn hull_defect(points: &[&[f64]], c: &[f64]) -> f64 {
    let k = c.len();
    let n = points.len();
    let weight = 1e3;
    let a = DMatrix::from_fn(k + 1, n, |r, j| if r < k { points[j][r] } else { weight });
    let mut b = DVector::from_column_slice(c).resize_vertically(k + 1, 0.0);
    b[k] = weight;
    let lambda = nnls(&a, &b);
    (a * lambda - b).norm()
}
