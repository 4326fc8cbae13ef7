//! Report-time recomputation of residuals from raw inputs.
//!
//! These deliberately avoid the solver-side residual helpers and evaluate
//! the defining formulas directly.

use isofix_core::derivation::{CMatrix, CVector, FiniteGroup, C64};
use isofix_core::{FiberPermIsometry, SupPoint};

/// Agreement required between a solver residual and its recomputation.
pub const MISMATCH_TOL: f64 = 1e-12;

fn fiber_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// `max_g sup_γ |U_γ x_{π(γ)} + t_γ − x_γ|`.
pub fn isometry_residual(elements: &[FiberPermIsometry], x: &SupPoint) -> f64 {
    let k = x.k();
    let mut worst: f64 = 0.0;
    for g in elements {
        for (gamma, (map, &src)) in g.fiber_maps().iter().zip(g.perm()).enumerate() {
            let xs = x.fiber(src);
            let t = g.translation().fiber(gamma);
            let image: Vec<f64> = (0..k)
                .map(|r| (0..k).map(|c| map[(r, c)] * xs[c]).sum::<f64>() + t[r])
                .collect();
            worst = worst.max(fiber_gap(&image, x.fiber(gamma)));
        }
    }
    worst
}

/// `max_{x ∈ M} sup_γ |x_γ − z_γ|`.
pub fn max_distance(points: &[SupPoint], z: &SupPoint) -> f64 {
    points
        .iter()
        .flat_map(|p| (0..p.m()).map(move |g| fiber_gap(p.fiber(g), z.fiber(g))))
        .fold(0.0, f64::max)
}

/// `max_g max_i |(J δ(g))_i − ((T g)_i − T_{π(i)})|₂` where `γ_{π(i)} = g*γ_i`
/// is found by nearest-vector search.
pub fn witness_residual(
    elements: &[CMatrix],
    delta: &[CMatrix],
    gamma: &[CVector],
    t: &CMatrix,
) -> f64 {
    let d = t.ncols();
    let mut worst: f64 = 0.0;
    for (g, dg) in elements.iter().zip(delta) {
        for (i, gi) in gamma.iter().enumerate() {
            let image = g.adjoint() * gi;
            let p = gamma
                .iter()
                .enumerate()
                .map(|(j, v)| (j, (v - &image).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map_or(i, |(j, _)| j);
            let mut row = 0.0;
            for c in 0..d {
                // (J δ(g))_{ic} = Σ_l conj(γ_i[l]) δ(g)_{lc}
                let mut lhs = C64::new(0.0, 0.0);
                let mut tg = C64::new(0.0, 0.0);
                for l in 0..d {
                    lhs += gi[l].conj() * dg[(l, c)];
                    tg += t[(i, l)] * g[(l, c)];
                }
                row += (lhs - (tg - t[(p, c)])).norm_sqr();
            }
            worst = worst.max(row.sqrt());
        }
    }
    worst
}

/// `max_{g,u} |D(g)(u) − (t(gu) − t(ug))|`.
pub fn group_algebra_residual(group: &FiniteGroup, values: &[Vec<C64>], t: &[C64]) -> f64 {
    let n = group.order();
    let mut worst: f64 = 0.0;
    for g in 0..n {
        for u in 0..n {
            let inner = t[group.mul(g, u)] - t[group.mul(u, g)];
            worst = worst.max((values[g][u] - inner).norm());
        }
    }
    worst
}
