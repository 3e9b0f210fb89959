//! Planar geometry primitives: vectors, segments, rectangles, convex
//! polygons and the predicates the roadmap and smoothing stages rely on.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::{lit, Real};

/// 2-D point/vector in meters.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
        }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Self) -> T {
        (self - o).norm_sq()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Self {
        Self {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n <= T::zero() {
            None
        } else {
            Some(self / n)
        }
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    /// Convex combination, exact at t = 0 and t = 1.
    pub fn lerp(self, o: Self, t: T) -> Self {
        self * (T::one() - t) + o * t
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Real> Div<T> for Vec2<T> {
    type Output = Self;
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s)
    }
}

/// Axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect<T> {
    pub min: Vec2<T>,
    pub max: Vec2<T>,
}

impl<T: Real> Rect<T> {
    pub fn new(min: Vec2<T>, max: Vec2<T>) -> Self {
        Self { min, max }
    }

    pub fn is_degenerate(&self) -> bool {
        self.max.x <= self.min.x || self.max.y <= self.min.y
    }

    pub fn contains(&self, p: Vec2<T>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn diagonal(&self) -> T {
        self.max.dist(self.min)
    }

    /// Corners in counter-clockwise order.
    pub fn polygon(&self) -> Vec<Vec2<T>> {
        vec![
            self.min,
            Vec2::new(self.max.x, self.min.y),
            self.max,
            Vec2::new(self.min.x, self.max.y),
        ]
    }
}

/// Distance from a point to the segment [a, b].
pub fn point_segment_dist<T: Real>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq <= T::zero() {
        return p.dist(a);
    }
    let t = (p - a).dot(ab) / len_sq;
    let t = t.max(T::zero()).min(T::one());
    p.dist(a + ab * t)
}

/// Distance from a point to the infinite line through a and b.
pub fn point_line_dist<T: Real>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let ab = b - a;
    let n = ab.norm();
    if n <= T::zero() {
        return p.dist(a);
    }
    (ab.cross(p - a) / n).abs()
}

/// Segment/segment intersection test, endpoints inclusive.
pub fn segments_intersect<T: Real>(a: Vec2<T>, b: Vec2<T>, c: Vec2<T>, d: Vec2<T>) -> bool {
    let orient = |p: Vec2<T>, q: Vec2<T>, r: Vec2<T>| (q - p).cross(r - p);
    let eps = lit::<T>(1e-12);
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    {
        return true;
    }
    let on = |p: Vec2<T>, q: Vec2<T>, r: Vec2<T>, o: T| {
        o.abs() <= eps
            && r.x >= p.x.min(q.x) - eps
            && r.x <= p.x.max(q.x) + eps
            && r.y >= p.y.min(q.y) - eps
            && r.y <= p.y.max(q.y) + eps
    };
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}

/// Intersection of the ray `origin + t dir` (t >= 0) with segment [a, b].
pub fn ray_segment_intersection<T: Real>(
    origin: Vec2<T>,
    dir: Vec2<T>,
    a: Vec2<T>,
    b: Vec2<T>,
) -> Option<Vec2<T>> {
    let ab = b - a;
    let denom = dir.cross(ab);
    let eps = lit::<T>(1e-12);
    if denom.abs() <= eps {
        return None;
    }
    let diff = a - origin;
    let t = diff.cross(ab) / denom;
    let s = diff.cross(dir) / denom;
    let tol = lit::<T>(1e-9);
    if t >= -tol && s >= -tol && s <= T::one() + tol {
        Some(origin + dir * t.max(T::zero()))
    } else {
        None
    }
}

/// Clip a convex polygon with the halfplane {x : n . (x - a) <= 0}.
pub fn clip_halfplane<T: Real>(poly: &[Vec2<T>], a: Vec2<T>, n: Vec2<T>) -> Vec<Vec2<T>> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    if poly.is_empty() {
        return out;
    }
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let dp = n.dot(p - a);
        let dq = n.dot(q - a);
        let inside_p = dp <= T::zero();
        let inside_q = dq <= T::zero();
        if inside_p {
            out.push(p);
        }
        if inside_p != inside_q {
            let t = dp / (dp - dq);
            out.push(p.lerp(q, t));
        }
    }
    out
}

/// Convex hull in counter-clockwise order (monotone chain). Collinear input
/// collapses to its two extreme points.
pub fn convex_hull<T: Real>(points: &[Vec2<T>]) -> Vec<Vec2<T>> {
    let mut pts: Vec<Vec2<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let turn_ok = |chain: &[Vec2<T>], p: Vec2<T>| {
        let a = chain[chain.len() - 2];
        let b = chain[chain.len() - 1];
        (b - a).cross(p - a) > T::zero()
    };
    let mut lower: Vec<Vec2<T>> = Vec::with_capacity(n);
    for &p in &pts {
        while lower.len() >= 2 && !turn_ok(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2<T>> = Vec::with_capacity(n);
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turn_ok(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // fully coincident or collinear; fall back to extremes
        return pts.into_iter().take(2).collect();
    }
    lower
}

/// True if p lies inside (or on) a counter-clockwise convex polygon.
pub fn point_in_convex<T: Real>(p: Vec2<T>, poly: &[Vec2<T>], tol: T) -> bool {
    if poly.len() < 3 {
        return match poly.len() {
            2 => point_segment_dist(p, poly[0], poly[1]) <= tol,
            1 => p.dist(poly[0]) <= tol,
            _ => false,
        };
    }
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if (b - a).cross(p - a) < -tol {
            return false;
        }
    }
    true
}

/// Distance from a point to a convex polygon; zero when inside.
pub fn point_convex_dist<T: Real>(p: Vec2<T>, poly: &[Vec2<T>]) -> T {
    if poly.len() < 3 {
        return match poly.len() {
            2 => point_segment_dist(p, poly[0], poly[1]),
            1 => p.dist(poly[0]),
            _ => T::infinity(),
        };
    }
    if point_in_convex(p, poly, T::zero()) {
        return T::zero();
    }
    let mut best = T::infinity();
    for i in 0..poly.len() {
        let d = point_segment_dist(p, poly[i], poly[(i + 1) % poly.len()]);
        if d < best {
            best = d;
        }
    }
    best
}

/// Largest t >= 0 with `origin + t dir` still inside the convex polygon,
/// returned as the exit point. None when the origin is outside.
pub fn ray_exit_convex<T: Real>(
    poly: &[Vec2<T>],
    origin: Vec2<T>,
    dir: Vec2<T>,
) -> Option<Vec2<T>> {
    if poly.len() < 3 || !point_in_convex(origin, poly, lit::<T>(1e-9)) {
        return None;
    }
    let mut t_max = T::infinity();
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        // inward normal for a CCW polygon
        let n = (b - a).perp();
        let denom = n.dot(dir);
        let num = n.dot(origin - a);
        if denom < T::zero() {
            let t = -num / denom;
            if t < t_max {
                t_max = t;
            }
        }
    }
    if t_max.is_finite() && t_max >= T::zero() {
        Some(origin + dir * t_max)
    } else {
        None
    }
}

/// Total length of a polyline.
pub fn polyline_length<T: Real>(pts: &[Vec2<T>]) -> T {
    let mut acc = T::zero();
    for w in pts.windows(2) {
        acc = acc + w[0].dist(w[1]);
    }
    acc
}
