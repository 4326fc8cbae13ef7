//! Smallest enclosing Euclidean ball of a finite point set.
//!
//! Two solvers share the support-set circumcenter routine:
//!
//! * [`welzl`]: move-to-front recursion, exact up to rounding, used for fiber
//!   dimension `k <= 4` by default;
//! * [`dual_gradient`]: accelerated projected gradient on the dual simplex
//!   problem `max_λ Σ λ_i |p_i|² − |Σ λ_i p_i|²`, with a support polish that
//!   snaps to the exact circumcenter once the active set is identified. Used
//!   for `k > 4`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::point::fiber_distance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SebMethod {
    Degenerate,
    Welzl,
    DualGradient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SebBall {
    pub center: Vec<f64>,
    pub radius: f64,
    pub method: SebMethod,
    /// False only when the iterative path hit its cap above tolerance.
    pub converged: bool,
    /// Primal radius minus dual lower bound at exit (0 for the exact paths).
    pub gap: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SebOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Largest fiber dimension handled by the exact recursion.
    pub exact_max_dim: usize,
}

impl Default for SebOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            exact_max_dim: 4,
        }
    }
}

/// Center and radius of the smallest ball containing `points`.
pub fn seb_center(points: &[&[f64]]) -> Result<SebBall> {
    seb_center_with(points, &SebOptions::default())
}

pub fn seb_center_with(points: &[&[f64]], opts: &SebOptions) -> Result<SebBall> {
    let k = validate(points)?;
    if let Some(ball) = degenerate(points) {
        return Ok(ball);
    }
    if k <= opts.exact_max_dim {
        Ok(welzl_unchecked(points))
    } else {
        Ok(dual_gradient_unchecked(points, opts.tol, opts.max_iter))
    }
}

/// Exact move-to-front recursion, any dimension.
pub fn welzl(points: &[&[f64]]) -> Result<SebBall> {
    validate(points)?;
    Ok(degenerate(points).unwrap_or_else(|| welzl_unchecked(points)))
}

/// Iterative dual solver with support polish, any dimension.
pub fn dual_gradient(points: &[&[f64]], tol: f64, max_iter: usize) -> Result<SebBall> {
    validate(points)?;
    Ok(degenerate(points).unwrap_or_else(|| dual_gradient_unchecked(points, tol, max_iter)))
}

fn validate(points: &[&[f64]]) -> Result<usize> {
    let k = points
        .first()
        .map(|p| p.len())
        .ok_or_else(|| Error::Domain("enclosing ball of an empty set".into()))?;
    if k == 0 || points.iter().any(|p| p.len() != k) {
        return Err(Error::Dimension("points of unequal or zero dimension".into()));
    }
    Ok(k)
}

fn degenerate(points: &[&[f64]]) -> Option<SebBall> {
    let first = points[0];
    points.iter().all(|p| *p == first).then(|| SebBall {
        center: first.to_vec(),
        radius: 0.0,
        method: SebMethod::Degenerate,
        converged: true,
        gap: 0.0,
    })
}

/// Points translated so that their centroid is the origin, plus that centroid.
fn centered(points: &[&[f64]]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let k = points[0].len();
    let n = points.len() as f64;
    let mut mean = vec![0.0; k];
    for p in points {
        for (m, v) in mean.iter_mut().zip(p.iter()) {
            *m += v / n;
        }
    }
    let shifted = points
        .iter()
        .map(|p| p.iter().zip(&mean).map(|(v, m)| v - m).collect())
        .collect();
    (shifted, mean)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Circumcenter of `support` inside its affine hull, with barycentric weights.
///
/// Solves `2 V a = |V_j|²` on the Gram matrix of `V_j = q_j − q_0` by SVD, so
/// affinely dependent but cospherical supports still resolve.
fn affine_circumcenter(pts: &[Vec<f64>], support: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let q0 = &pts[support[0]];
    let s = support.len() - 1;
    if s == 0 {
        return (q0.clone(), vec![1.0]);
    }
    let diffs: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(q0).map(|(a, b)| a - b).collect())
        .collect();
    let gram = DMatrix::from_fn(s, s, |i, j| 2.0 * dot(&diffs[i], &diffs[j]));
    let rhs = DVector::from_fn(s, |i, _| dot(&diffs[i], &diffs[i]));
    let scale = gram.amax().max(f64::MIN_POSITIVE);
    let coeffs = gram
        .svd(true, true)
        .solve(&rhs, scale * 1e-13)
        .unwrap_or_else(|_| DVector::zeros(s));
    let mut center = q0.clone();
    for (a, d) in coeffs.iter().zip(&diffs) {
        for (c, v) in center.iter_mut().zip(d) {
            *c += a * v;
        }
    }
    let mut weights = Vec::with_capacity(s + 1);
    weights.push(1.0 - coeffs.sum());
    weights.extend(coeffs.iter());
    (center, weights)
}

fn finish(pts: &[Vec<f64>], mean: &[f64], center: Vec<f64>, method: SebMethod, gap: f64, converged: bool) -> SebBall {
    let radius = pts
        .iter()
        .map(|p| fiber_distance(p, &center))
        .fold(0.0, f64::max);
    let center = center.iter().zip(mean).map(|(c, m)| c + m).collect();
    SebBall {
        center,
        radius,
        method,
        converged,
        gap,
    }
}

fn welzl_unchecked(points: &[&[f64]]) -> SebBall {
    let (pts, mean) = centered(points);
    let k = pts[0].len();
    let scale = pts
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let slack = 1e-12 * scale;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let mut support = Vec::with_capacity(k + 1);
    let (center, _) = move_to_front(&pts, &mut order, pts.len(), &mut support, k, slack);
    finish(&pts, &mean, center, SebMethod::Welzl, 0.0, true)
}

fn move_to_front(
    pts: &[Vec<f64>],
    order: &mut [usize],
    end: usize,
    support: &mut Vec<usize>,
    k: usize,
    slack: f64,
) -> (Vec<f64>, f64) {
    let (mut center, mut radius) = if support.is_empty() {
        (vec![0.0; k], -1.0)
    } else {
        let (c, _) = affine_circumcenter(pts, support);
        let r = support
            .iter()
            .map(|&i| fiber_distance(&pts[i], &c))
            .fold(0.0, f64::max);
        (c, r)
    };
    if support.len() == k + 1 {
        return (center, radius);
    }
    for i in 0..end {
        let idx = order[i];
        if fiber_distance(&pts[idx], &center) > radius * (1.0 + 1e-12) + slack {
            support.push(idx);
            (center, radius) = move_to_front(pts, order, i, support, k, slack);
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    (center, radius)
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &mut [f64]) {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}

fn combine(pts: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; pts[0].len()];
    for (p, w) in pts.iter().zip(weights) {
        for (ci, v) in c.iter_mut().zip(p) {
            *ci += w * v;
        }
    }
    c
}

/// Exact optimum certified from an active set, if the set is the right one.
fn polish(pts: &[Vec<f64>], weights: &[f64]) -> Option<Vec<f64>> {
    let wmax = weights.iter().cloned().fold(0.0, f64::max);
    let support: Vec<usize> = (0..pts.len()).filter(|&i| weights[i] > 1e-9 * wmax).collect();
    if support.is_empty() {
        return None;
    }
    let (center, mu) = affine_circumcenter(pts, &support);
    if mu.iter().any(|&m| m < -1e-12) {
        return None;
    }
    let r = support
        .iter()
        .map(|&i| fiber_distance(&pts[i], &center))
        .fold(0.0, f64::max);
    let rmin = support
        .iter()
        .map(|&i| fiber_distance(&pts[i], &center))
        .fold(f64::INFINITY, f64::min);
    let tight = r * 1e-11 + 1e-15;
    let all_inside = pts.iter().all(|p| fiber_distance(p, &center) <= r + tight);
    (all_inside && r - rmin <= tight).then_some(center)
}

fn dual_gradient_unchecked(points: &[&[f64]], tol: f64, max_iter: usize) -> SebBall {
    let (pts, mean) = centered(points);
    let n = pts.len();
    let norms2: Vec<f64> = pts.iter().map(|p| dot(p, p)).collect();
    let lipschitz = 2.0 * norms2.iter().sum::<f64>();
    let step = 1.0 / lipschitz;

    let mut lambda = vec![1.0 / n as f64; n];
    let mut y = lambda.clone();
    let mut t = 1.0f64;
    let mut gap = f64::INFINITY;
    for iter in 0..max_iter {
        let c = combine(&pts, &y);
        let mut next: Vec<f64> = (0..n)
            .map(|i| y[i] + step * (norms2[i] - 2.0 * dot(&pts[i], &c)))
            .collect();
        project_simplex(&mut next);
        let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        let momentum = (t - 1.0) / t_next;
        y = next
            .iter()
            .zip(&lambda)
            .map(|(a, b)| a + momentum * (a - b))
            .collect();
        lambda = next;
        t = t_next;

        if iter % 10 == 9 {
            let c = combine(&pts, &lambda);
            let primal = pts.iter().map(|p| fiber_distance(p, &c)).fold(0.0, f64::max);
            let dual = (lambda.iter().zip(&norms2).map(|(l, b)| l * b).sum::<f64>() - dot(&c, &c))
                .max(0.0)
                .sqrt();
            gap = primal - dual;
            if let Some(center) = polish(&pts, &lambda) {
                return finish(&pts, &mean, center, SebMethod::DualGradient, 0.0, true);
            }
            if gap <= tol {
                return finish(&pts, &mean, c, SebMethod::DualGradient, gap, true);
            }
        }
    }
    let c = combine(&pts, &lambda);
    finish(&pts, &mean, c, SebMethod::DualGradient, gap, false)
}
