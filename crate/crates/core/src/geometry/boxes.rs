//! Admissible sets of real `ℓ∞^n`.
//!
//! Closed sup-norm balls are coordinate boxes, and so is any intersection of
//! them, so the admissible sets of this space are represented exactly by their
//! per-coordinate bounds. An empty intersection is the [`Admissible::Empty`]
//! marker rather than an error.

use crate::error::{Error, Result};
use crate::geometry::point::{PointCloud, SupPoint};

/// Nonempty box `∏ [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SupBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Dimension(format!(
                "box bounds of lengths {} and {}",
                lo.len(),
                hi.len()
            )));
        }
        for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if !l.is_finite() || !h.is_finite() {
                return Err(Error::Invalid(format!("non-finite bound in coordinate {i}")));
            }
            if l > h {
                return Err(Error::Invalid(format!(
                    "inverted interval in coordinate {i}: lo {l} > hi {h}"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn point(p: &[f64]) -> Self {
        Self {
            lo: p.to_vec(),
            hi: p.to_vec(),
        }
    }

    /// Smallest box containing a real cloud (`k = 1`).
    pub fn bounding(cloud: &PointCloud) -> Result<Self> {
        let (n, k) = cloud
            .shape()
            .ok_or_else(|| Error::Domain("bounding box of an empty cloud".into()))?;
        if k != 1 {
            return Err(Error::Dimension(format!("box space needs k = 1, got k = {k}")));
        }
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for p in cloud.points() {
            for (i, &v) in p.as_slice().iter().enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| h - l)
            .fold(0.0, f64::max)
    }

    /// Per-coordinate midpoint.
    pub fn center(&self) -> SupPoint {
        let mid = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| l + (h - l) / 2.0)
            .collect();
        SupPoint::real(mid).expect("midpoint of finite bounds is finite")
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        p.len() == self.dim()
            && p
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| *v >= l - tol && *v <= h + tol)
    }

    /// The `2^n` corner points. Only sensible for small `n`.
    pub fn vertices(&self) -> Vec<SupPoint> {
        let n = self.dim();
        (0..1usize << n)
            .map(|mask| {
                let coords = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { self.hi[i] } else { self.lo[i] })
                    .collect();
                SupPoint::real(coords).expect("finite corners")
            })
            .collect()
    }
}

/// An admissible set of `ℓ∞^n`: a box, or the empty intersection.
#[derive(Debug, Clone, PartialEq)]
pub enum Admissible {
    Empty,
    Box(SupBox),
}

impl Admissible {
    /// `⋂_{x ∈ points} B(x, radius)`.
    pub fn ball_intersection(points: &[SupPoint], radius: f64) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Domain("intersection over an empty family of balls".into()))?;
        let n = first.m();
        if points.iter().any(|p| p.k() != 1 || p.m() != n) {
            return Err(Error::Dimension("ball centers must share a real ℓ∞^n".into()));
        }
        let mut lo = vec![f64::NEG_INFINITY; n];
        let mut hi = vec![f64::INFINITY; n];
        for p in points {
            for (i, &v) in p.as_slice().iter().enumerate() {
                lo[i] = lo[i].max(v - radius);
                hi[i] = hi[i].min(v + radius);
            }
        }
        Ok(Self::from_bounds(lo, hi))
    }

    fn from_bounds(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            Admissible::Empty
        } else {
            Admissible::Box(SupBox { lo, hi })
        }
    }

    pub fn as_box(&self) -> Option<&SupBox> {
        match self {
            Admissible::Box(b) => Some(b),
            Admissible::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Admissible::Empty)
    }
}

/// `A(M) = ⋂_{x ∈ M} B(x, c·diam M)`, per coordinate `[hi_i − c·d, lo_i + c·d]`.
pub fn box_a(m: &Admissible, c: f64) -> Admissible {
    let Admissible::Box(b) = m else {
        return Admissible::Empty;
    };
    let r = c * b.diameter();
    let mut lo = Vec::with_capacity(b.dim());
    let mut hi = Vec::with_capacity(b.dim());
    for (&l, &h) in b.lo.iter().zip(&b.hi) {
        let mid = 0.5 * l + 0.5 * h;
        let mut slack = r - (0.5 * h - 0.5 * l);
        // for c >= 1/2 each half-width is at most c·diam, so a negative slack is rounding
        if c >= 0.5 {
            slack = slack.max(0.0);
        }
        lo.push(mid - slack);
        hi.push(mid + slack);
    }
    Admissible::from_bounds(lo, hi)
}

/// `H(M) = ⋂_{y ∈ A(M)} B(y, c·diam M) ∩ A(M)`.
///
/// Floating-point rounding can leave a coordinate a few ulps wider than
/// `c·diam M`; such upper bounds are stepped down so that
/// `diam H(M) ≤ c·diam M` holds in floating point, not only in exact arithmetic.
/// On dyadic data with enough spare mantissa no rounding occurs.
pub fn box_h(m: &Admissible, c: f64) -> Admissible {
    let Admissible::Box(b) = m else {
        return Admissible::Empty;
    };
    let r = c * b.diameter();
    let Admissible::Box(a) = box_a(m, c) else {
        return Admissible::Empty;
    };
    let mut lo = Vec::with_capacity(a.dim());
    let mut hi = Vec::with_capacity(a.dim());
    for (&al, &ah) in a.lo.iter().zip(&a.hi) {
        let l = al.max(ah - r);
        let mut h = ah.min(al + r);
        while h > l && h - l > r {
            h = h.next_down();
        }
        lo.push(l);
        hi.push(h);
    }
    Admissible::from_bounds(lo, hi)
}

/// Midpoint of a nonempty admissible box.
pub fn box_center(m: &Admissible) -> Result<SupPoint> {
    m.as_box()
        .map(SupBox::center)
        .ok_or_else(|| Error::Domain("center of the empty set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(lo: &[f64], hi: &[f64]) -> Admissible {
        Admissible::Box(SupBox::new(lo.to_vec(), hi.to_vec()).unwrap())
    }

    #[test]
    fn inverted_box_is_invalid() {
        assert!(matches!(
            SupBox::new(vec![1.0], vec![0.0]),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn a_of_rectangle() {
        let m = bx(&[0.0, 0.0], &[2.0, 1.0]);
        assert_eq!(box_a(&m, 0.5), bx(&[1.0, 0.0], &[1.0, 1.0]));
        assert_eq!(box_a(&bx(&[0.0], &[1.0]), 0.5), bx(&[0.5], &[0.5]));
    }

    #[test]
    fn point_box_is_fixed_by_a_and_h() {
        let p = bx(&[0.3, -2.0], &[0.3, -2.0]);
        for c in [0.1, 0.5, 0.9] {
            assert_eq!(box_a(&p, c), p);
            assert_eq!(box_h(&p, c), p);
        }
    }

    #[test]
    fn small_c_can_empty_a() {
        let m = bx(&[0.0, 0.0], &[2.0, 0.5]);
        assert!(box_a(&m, 0.1).is_empty());
        assert!(box_h(&Admissible::Empty, 0.5).is_empty());
        assert!(box_center(&Admissible::Empty).is_err());
    }

    #[test]
    fn h_of_rectangle() {
        let m = bx(&[0.0, 0.0], &[2.0, 1.0]);
        let h = box_h(&m, 0.5);
        let b = h.as_box().unwrap();
        assert_eq!(b.lo()[0], 1.0);
        assert_eq!(b.hi()[0], 1.0);
        assert!(b.diameter() <= 1.0);
    }

    #[test]
    fn center_examples() {
        let m = bx(&[0.0, 0.0], &[1.0, 3.0]);
        assert_eq!(box_center(&m).unwrap().as_slice(), &[0.5, 1.5]);
        let p = bx(&[2.0], &[2.0]);
        assert_eq!(box_center(&p).unwrap().as_slice(), &[2.0]);
    }

    #[test]
    fn ball_intersection_of_orbit() {
        let pts = vec![
            SupPoint::real(vec![1.0, 0.0]).unwrap(),
            SupPoint::real(vec![0.0, 1.0]).unwrap(),
        ];
        let a0 = Admissible::ball_intersection(&pts, 1.0).unwrap();
        assert_eq!(a0, bx(&[0.0, 0.0], &[1.0, 1.0]));
        assert!(Admissible::ball_intersection(&pts, 0.4).unwrap().is_empty());
    }
}
