//! Curvature-minimizing control point placement.
//!
//! The quadratic case has a closed form; the cubic and quartic cases run a
//! coarse seed grid plus coordinate-descent golden sections over the free
//! one-dimensional loci, with a hull collision filter on every candidate.

use super::reduce::{cubic_max_curvature, quartic_max_curvature};
use super::{hull_is_free, BezierError};
use crate::env_graph::Obstacle;
use crate::geom::Vec2;
use crate::real::{lit, Real};

/// Golden-section minimizer on [a, b]; returns (argmin, min).
pub fn golden_min<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T) -> (T, T) {
    let phi = lit::<T>(0.618_033_988_749_894_9);
    let mut lo = a;
    let mut hi = b;
    let mut x1 = hi - (hi - lo) * phi;
    let mut x2 = lo + (hi - lo) * phi;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * phi;
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * phi;
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Closed-form optimum for a quadratic corner: with phi the included angle
/// of the travel directions (p1 - p0) and (ray_end - p1), the last leg
/// length is min(beta, (-cos(phi) + sqrt(cos^2(phi) + 8)) / 2 * alpha).
/// This is the exact minimizer of the quadratic's maximum curvature.
pub fn opt_quad1<T: Real>(
    p0: Vec2<T>,
    p1: Vec2<T>,
    ray_end: Vec2<T>,
) -> Result<Vec2<T>, BezierError> {
    let (len, dir, _) = opt_quad1_length(p0, p1, ray_end)?;
    Ok(p1 + dir * len)
}

/// Length form of [`opt_quad1`]: returns (length, unit ray direction, beta).
pub fn opt_quad1_length<T: Real>(
    p0: Vec2<T>,
    p1: Vec2<T>,
    ray_end: Vec2<T>,
) -> Result<(T, Vec2<T>, T), BezierError> {
    let inbound = p1 - p0;
    let outbound = ray_end - p1;
    let alpha = inbound.norm();
    let beta = outbound.norm();
    if alpha <= T::zero() || beta <= T::zero() {
        return Err(BezierError::DegenerateInput);
    }
    let cos_phi = (inbound.dot(outbound) / (alpha * beta))
        .max(-T::one())
        .min(T::one());
    let eight = lit::<T>(8.0);
    let factor = (-cos_phi + (cos_phi * cos_phi + eight).sqrt()) / lit::<T>(2.0);
    let len = beta.min(factor * alpha);
    Ok((len, outbound / beta, beta))
}

/// One-dimensional candidate locus for a control point; a == b pins it.
#[derive(Clone, Copy, Debug)]
pub struct Locus<T> {
    pub a: Vec2<T>,
    pub b: Vec2<T>,
}

impl<T: Real> Locus<T> {
    pub fn fixed(p: Vec2<T>) -> Self {
        Self { a: p, b: p }
    }

    pub fn segment(a: Vec2<T>, b: Vec2<T>) -> Self {
        Self { a, b }
    }

    pub fn is_fixed(&self) -> bool {
        self.a.dist(self.b) <= lit::<T>(1e-12)
    }

    pub fn at(&self, t: T) -> Vec2<T> {
        self.a.lerp(self.b, t)
    }

    pub fn len(&self) -> T {
        self.a.dist(self.b)
    }
}

fn search<T: Real, const N: usize>(
    anchor: Vec2<T>,
    loci: &[Locus<T>; N],
    obstacles: &[Obstacle<T>],
    clearance: T,
    objective: &dyn Fn(&[Vec2<T>; N]) -> Result<T, BezierError>,
    grid: usize,
) -> Result<[Vec2<T>; N], BezierError> {
    let eval = |ts: &[T; N]| -> T {
        let mut pts = [Vec2::zero(); N];
        for i in 0..N {
            pts[i] = loci[i].at(ts[i]);
        }
        let mut all = Vec::with_capacity(N + 1);
        all.push(anchor);
        all.extend_from_slice(&pts);
        if !hull_is_free(&all, obstacles, clearance) {
            return T::infinity();
        }
        objective(&pts).unwrap_or(T::infinity())
    };

    let free: Vec<usize> = (0..N).filter(|&i| !loci[i].is_fixed()).collect();
    let mut ts = [T::one(); N];

    if !free.is_empty() {
        // coarse seed grid over the free axes
        let levels: Vec<T> = (0..=grid)
            .map(|i| T::from_usize(i).unwrap() / T::from_usize(grid).unwrap())
            .collect();
        let mut best_ts = ts;
        let mut best_val = T::infinity();
        let combos = (grid + 1).pow(free.len() as u32);
        for idx in 0..combos {
            let mut rem = idx;
            let mut cand = ts;
            for &axis in &free {
                cand[axis] = levels[rem % (grid + 1)];
                rem /= grid + 1;
            }
            let v = eval(&cand);
            if v < best_val {
                best_val = v;
                best_ts = cand;
            }
        }
        if best_val.is_infinite() {
            return Err(BezierError::NoFeasiblePoint);
        }
        ts = best_ts;

        // coordinate descent to ~1e-3 m on each locus
        for _ in 0..3 {
            for &axis in &free {
                let tol = lit::<T>(1e-3) / loci[axis].len().max(lit::<T>(1e-6));
                let (t_opt, _) = golden_min(
                    |t| {
                        let mut cand = ts;
                        cand[axis] = t;
                        eval(&cand)
                    },
                    T::zero(),
                    T::one(),
                    tol.min(lit::<T>(0.25)),
                );
                ts[axis] = t_opt;
            }
        }
    }

    if eval(&ts).is_infinite() {
        return Err(BezierError::NoFeasiblePoint);
    }
    let mut out = [Vec2::zero(); N];
    for i in 0..N {
        out[i] = loci[i].at(ts[i]);
    }
    Ok(out)
}

/// Place (q1, q2, q3) on their loci to minimize the cubic's maximum
/// curvature, measured through the quadratic approximants.
pub fn opt_cubic<T: Real>(
    p0: Vec2<T>,
    loci: &[Locus<T>; 3],
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> Result<[Vec2<T>; 3], BezierError> {
    search(
        p0,
        loci,
        obstacles,
        clearance,
        &|pts| cubic_max_curvature([p0, pts[0], pts[1], pts[2]]),
        8,
    )
}

/// Place (q1..q4) on their loci to minimize the quartic's maximum
/// curvature, measured through the split cubics.
pub fn opt_quar<T: Real>(
    p0: Vec2<T>,
    loci: &[Locus<T>; 4],
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> Result<[Vec2<T>; 4], BezierError> {
    search(
        p0,
        loci,
        obstacles,
        clearance,
        &|pts| quartic_max_curvature([p0, pts[0], pts[1], pts[2], pts[3]]),
        6,
    )
}
