//! Closed-form jerk and acceleration costs of optimal point-to-point
//! polynomials, and the multiscale priority criterion built on them.
//!
//! Jerk: the minimum of int j^2/T dt over quintics pinned at
//! (p0, v0, a0) -> (pf, vf) has jerk j(t) = (alpha/2) t^2 + beta t + gamma
//! with the coefficients linear in (dp, dv). Acceleration: the minimum of
//! int a^2/T dt over cubics pinned at (p0, v0) -> (pf, vf) has
//! a(t) = -(alpha t + beta). Both integrals evaluate in closed form.

use std::cmp::Ordering;

use crate::geom::Vec2;
use crate::real::{lit, Real};

use super::GraphError;

/// Per-axis coefficients of the minimum-jerk primitive.
fn jerk_coeffs<T: Real>(dp: T, dv: T, t: T) -> (T, T, T) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t5 = t2 * t3;
    let alpha = (lit::<T>(320.0) * dp - lit::<T>(120.0) * t * dv) / t5;
    let beta = (-(lit::<T>(200.0) * t) * dp + lit::<T>(72.0) * t2 * dv) / t5;
    let gamma = (lit::<T>(40.0) * t2 * dp - lit::<T>(12.0) * t3 * dv) / t5;
    (alpha, beta, gamma)
}

/// Time-normalized jerk cost of the two-axis minimum-jerk primitive from
/// (p0, v0, a0) to (pf, vf) with per-axis durations (T1, T2).
pub fn jerk_cost<T: Real>(
    p0: Vec2<T>,
    pf: Vec2<T>,
    v0: Vec2<T>,
    a0: Vec2<T>,
    vf: Vec2<T>,
    durations: (T, T),
) -> Result<T, GraphError> {
    let half = lit::<T>(0.5);
    let third = T::one() / lit::<T>(3.0);
    let quarter = lit::<T>(0.25);
    let twentieth = lit::<T>(0.05);

    let axes = [
        (p0.x, pf.x, v0.x, a0.x, vf.x, durations.0),
        (p0.y, pf.y, v0.y, a0.y, vf.y, durations.1),
    ];
    let mut total = T::zero();
    for (p0k, pfk, v0k, a0k, vfk, t) in axes {
        if t <= T::zero() {
            return Err(GraphError::NonpositiveDuration);
        }
        let dp = pfk - (half * a0k * t * t + v0k * t + p0k);
        let dv = vfk - (a0k * t + v0k);
        let (alpha, beta, gamma) = jerk_coeffs(dp, dv, t);
        let t2 = t * t;
        total = total
            + gamma * gamma
            + beta * gamma * t
            + third * beta * beta * t2
            + third * alpha * gamma * t2
            + quarter * alpha * beta * t2 * t
            + twentieth * alpha * alpha * t2 * t2;
    }
    Ok(total)
}

/// Per-axis coefficients of the minimum-acceleration primitive.
fn accel_coeffs<T: Real>(dp: T, dv: T, t: T) -> (T, T) {
    let t2 = t * t;
    let t3 = t2 * t;
    let alpha = (lit::<T>(12.0) * dp - lit::<T>(6.0) * t * dv) / t3;
    let beta = (-(lit::<T>(6.0) * t) * dp + lit::<T>(2.0) * t2 * dv) / t3;
    (alpha, beta)
}

/// Time-normalized acceleration cost of the two-axis minimum-acceleration
/// primitive from (p0, v0) to (pf, vf).
pub fn accel_cost<T: Real>(
    p0: Vec2<T>,
    pf: Vec2<T>,
    v0: Vec2<T>,
    vf: Vec2<T>,
    durations: (T, T),
) -> Result<T, GraphError> {
    let third = T::one() / lit::<T>(3.0);
    let axes = [
        (p0.x, pf.x, v0.x, vf.x, durations.0),
        (p0.y, pf.y, v0.y, vf.y, durations.1),
    ];
    let mut total = T::zero();
    for (p0k, pfk, v0k, vfk, t) in axes {
        if t <= T::zero() {
            return Err(GraphError::NonpositiveDuration);
        }
        let dp = pfk - (v0k * t + p0k);
        let dv = vfk - v0k;
        let (alpha, beta) = accel_coeffs(dp, dv, t);
        total = total + third * alpha * alpha * t * t + alpha * beta * t + beta * beta;
    }
    Ok(total)
}

/// Reconstructed minimum-acceleration state (p, v) at time t; used to check
/// that the coefficient solve actually pins the boundary conditions.
pub fn accel_primitive_state<T: Real>(p0: T, v0: T, dp: T, dv: T, horizon: T, t: T) -> (T, T) {
    let (alpha, beta) = accel_coeffs(dp, dv, horizon);
    let half = lit::<T>(0.5);
    let sixth = T::one() / lit::<T>(6.0);
    let p = -(alpha * t * t * t) * sixth - half * beta * t * t + v0 * t + p0;
    let v = -(half * alpha * t * t) - beta * t + v0;
    (p, v)
}

/// Gate function of the priority criterion: 1 on [0, c), -1 on (-c, 0),
/// 0 outside (-c, c).
pub fn pi_gate<T: Real>(x: T, c: T) -> T {
    if x >= c || x <= -c {
        T::zero()
    } else if x >= T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

/// Cost triple of one candidate: first-part jerk, middle-part acceleration,
/// remaining length.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PathCosts<T> {
    pub jerk: T,
    pub accel: T,
    pub remaining_len: T,
}

/// Multiscale priority comparison between two candidates:
/// sign of J_d + w1 Pi(J_d) A_d + w2 Pi(J_d) Pi(A_d) L_d.
pub fn compare_priority<T: Real>(
    ca: &PathCosts<T>,
    cb: &PathCosts<T>,
    w1: T,
    w2: T,
    c: T,
) -> Ordering {
    let jd = ca.jerk - cb.jerk;
    let ad = ca.accel - cb.accel;
    let ld = ca.remaining_len - cb.remaining_len;
    let value = jd + w1 * pi_gate(jd, c) * ad + w2 * pi_gate(jd, c) * pi_gate(ad, c) * ld;
    if value < T::zero() {
        Ordering::Less
    } else if value > T::zero() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}
