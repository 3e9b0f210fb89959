//! Bezier geometry and the path smoothing machine.
//!
//! Curves are stored in Bernstein form and evaluated with de Casteljau.
//! Maximum curvature of cubics and quartics is always measured through
//! their quadratic/cubic split approximants (see [`reduce`]), matching the
//! route the optimization recipes are defined over.

mod optimize;
mod reduce;
mod smooth;

pub use optimize::{golden_min, opt_cubic, opt_quad1, opt_quar, Locus};
pub use reduce::{cubic_to_quadratics, quartic_to_cubics};
pub use smooth::{
    classify_first_case, design_first_curve, enforce_g1, extend_curve, smooth, sparse_adjust,
    CaseTag, SmoothingContext,
};

use thiserror::Error;

use crate::env_graph::Obstacle;
use crate::geom::{convex_hull, point_convex_dist, Vec2};
use crate::real::{lit, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BezierError {
    #[error("curve parameter outside [0, 1]")]
    DomainError,
    #[error("tangent vanishes at the queried parameter")]
    DegenerateTangent,
    #[error("degenerate construction input")]
    DegenerateInput,
    #[error("no collision-free control point candidate")]
    NoFeasiblePoint,
}

/// Polynomial curve in Bernstein form.
#[derive(Clone, Debug, PartialEq)]
pub struct BezierCurve<T> {
    points: Vec<Vec2<T>>,
}

impl<T: Real> BezierCurve<T> {
    pub fn new(points: Vec<Vec2<T>>) -> Self {
        assert!(!points.is_empty(), "a curve needs control points");
        Self { points }
    }

    pub fn points(&self) -> &[Vec2<T>] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn first(&self) -> Vec2<T> {
        self.points[0]
    }

    pub fn last(&self) -> Vec2<T> {
        *self.points.last().unwrap()
    }

    /// de Casteljau evaluation.
    pub fn evaluate(&self, theta: T) -> Result<Vec2<T>, BezierError> {
        if theta < T::zero() || theta > T::one() {
            return Err(BezierError::DomainError);
        }
        Ok(self.eval_unchecked(theta))
    }

    fn eval_unchecked(&self, theta: T) -> Vec2<T> {
        let mut work = self.points.clone();
        let mut n = work.len();
        while n > 1 {
            for i in 0..n - 1 {
                work[i] = work[i].lerp(work[i + 1], theta);
            }
            n -= 1;
        }
        work[0]
    }

    /// Hodograph: control points n (p_{i+1} - p_i). The derivative of a
    /// degree-0 curve is the zero vector.
    pub fn derivative(&self) -> BezierCurve<T> {
        if self.points.len() < 2 {
            return BezierCurve::new(vec![Vec2::zero()]);
        }
        let n = T::from_usize(self.degree()).unwrap();
        let pts = self
            .points
            .windows(2)
            .map(|w| (w[1] - w[0]) * n)
            .collect();
        BezierCurve::new(pts)
    }

    /// Signed curvature (x' y'' - y' x'') / |P'|^3.
    pub fn curvature(&self, theta: T) -> Result<T, BezierError> {
        if theta < T::zero() || theta > T::one() {
            return Err(BezierError::DomainError);
        }
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let v1 = d1.eval_unchecked(theta);
        let v2 = d2.eval_unchecked(theta);
        let speed = v1.norm();
        if speed <= lit::<T>(1e-9) {
            return Err(BezierError::DegenerateTangent);
        }
        Ok(v1.cross(v2) / (speed * speed * speed))
    }

    /// Maximum |curvature| over [0, 1]: 200-point sweep plus golden-section
    /// refinement around the best bracket.
    pub fn max_abs_curvature(&self) -> Result<T, BezierError> {
        if self.points.len() < 3 {
            // segments and points have zero curvature where defined
            return Ok(T::zero());
        }
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let kappa_abs = |theta: T| -> Option<T> {
            let v1 = d1.eval_unchecked(theta);
            let v2 = d2.eval_unchecked(theta);
            let speed = v1.norm();
            if speed <= lit::<T>(1e-9) {
                None
            } else {
                Some((v1.cross(v2) / (speed * speed * speed)).abs())
            }
        };

        const SAMPLES: usize = 200;
        let mut best_i = usize::MAX;
        let mut best = -T::one();
        let mut any = false;
        for i in 0..=SAMPLES {
            let theta = T::from_usize(i).unwrap() / T::from_usize(SAMPLES).unwrap();
            if let Some(k) = kappa_abs(theta) {
                any = true;
                if k > best {
                    best = k;
                    best_i = i;
                }
            }
        }
        if !any {
            return Err(BezierError::DegenerateTangent);
        }
        let step = T::one() / T::from_usize(SAMPLES).unwrap();
        let lo = (T::from_usize(best_i).unwrap() * step - step).max(T::zero());
        let hi = (T::from_usize(best_i).unwrap() * step + step).min(T::one());
        let (_, neg_max) = optimize::golden_min(
            |theta| match kappa_abs(theta) {
                Some(k) => -k,
                None => T::infinity(),
            },
            lo,
            hi,
            lit::<T>(1e-7),
        );
        Ok(best.max(-neg_max))
    }

    /// Unit tangent at a parameter.
    pub fn tangent(&self, theta: T) -> Result<Vec2<T>, BezierError> {
        let v = self.derivative().evaluate(theta)?;
        v.normalized().ok_or(BezierError::DegenerateTangent)
    }

    /// Arc length by uniform sampling.
    pub fn arc_length(&self, samples: usize) -> T {
        let mut acc = T::zero();
        let mut prev = self.first();
        for i in 1..=samples {
            let theta = T::from_usize(i).unwrap() / T::from_usize(samples).unwrap();
            let p = self.eval_unchecked(theta);
            acc = acc + prev.dist(p);
            prev = p;
        }
        acc
    }

    /// Convex hull of the control points.
    pub fn hull(&self) -> Vec<Vec2<T>> {
        convex_hull(&self.points)
    }
}

/// Distance from a disc center to the hull of a point set; collision means
/// (distance < r_o + clearance).
pub fn hull_obstacle_distance<T: Real>(points: &[Vec2<T>], ob: &Obstacle<T>) -> T {
    let hull = convex_hull(points);
    point_convex_dist(ob.center, &hull)
}

/// Control-point hull keeps `clearance` away from every obstacle disc.
pub fn hull_is_free<T: Real>(points: &[Vec2<T>], obstacles: &[Obstacle<T>], clearance: T) -> bool {
    obstacles
        .iter()
        .all(|o| hull_obstacle_distance(points, o) >= o.radius + clearance)
}

/// Ordered list of curves joined end to end.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseBezier<T> {
    pub curves: Vec<BezierCurve<T>>,
}

impl<T: Real> PiecewiseBezier<T> {
    pub fn new(curves: Vec<BezierCurve<T>>) -> Self {
        assert!(!curves.is_empty());
        Self { curves }
    }

    pub fn start(&self) -> Vec2<T> {
        self.curves[0].first()
    }

    pub fn end(&self) -> Vec2<T> {
        self.curves.last().unwrap().last()
    }

    /// Tangent mismatch angle at every interior join.
    pub fn join_angles(&self) -> Vec<T> {
        let mut out = Vec::new();
        for w in self.curves.windows(2) {
            let angle = match (w[0].tangent(T::one()), w[1].tangent(T::zero())) {
                (Ok(a), Ok(b)) => {
                    let c = a.dot(b).max(-T::one()).min(T::one());
                    c.acos()
                }
                _ => T::zero(),
            };
            out.push(angle);
        }
        out
    }

    pub fn is_g1(&self, tol: T) -> bool {
        self.join_angles().into_iter().all(|a| a <= tol)
    }

    pub fn total_arc_length(&self, samples_per_curve: usize) -> T {
        self.curves
            .iter()
            .map(|c| c.arc_length(samples_per_curve))
            .sum()
    }

    /// Polyline sampling with `samples_per_curve + 1` points on the first
    /// curve and `samples_per_curve` on each following one.
    pub fn sample(&self, samples_per_curve: usize) -> Vec<Vec2<T>> {
        let mut out = Vec::new();
        for (ci, c) in self.curves.iter().enumerate() {
            let start = if ci == 0 { 0 } else { 1 };
            for i in start..=samples_per_curve {
                let theta =
                    T::from_usize(i).unwrap() / T::from_usize(samples_per_curve).unwrap();
                out.push(c.eval_unchecked(theta));
            }
        }
        out
    }

    /// Minimum over sampled points of (distance to obstacle center - r_o).
    pub fn min_obstacle_margin(&self, obstacles: &[Obstacle<T>], samples_per_curve: usize) -> T {
        let pts = self.sample(samples_per_curve);
        let mut best = T::infinity();
        for o in obstacles {
            for p in &pts {
                let d = p.dist(o.center) - o.radius;
                if d < best {
                    best = d;
                }
            }
        }
        best
    }
}
