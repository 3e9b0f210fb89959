//! 3-DOF surface vessel model.
//!
//! Kinematics rotate body velocities (u, v, r) into the n-frame; the
//! diagonal rigid-body dynamics are
//!
//! ```text
//! M1 u_dot = M2 v r - D1 u + X
//! M2 v_dot = -M1 u r - D2 v
//! M3 r_dot = (M1 - M2) u v - D3 r + N
//! ```
//!
//! The thrust pair (X, N) can be promoted to state with its rate as input,
//! which is the model the planner transcribes.

use crate::geom::Vec2;
use crate::real::{lit, wrap_angle, Real};

/// Identified rigid-body parameters and actuator limits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VesselParams<T> {
    /// Diagonal inertia entries (M1, M2, M3) in kg, kg, kg m^2.
    pub inertia: [T; 3],
    /// Diagonal linear damping entries (D1, D2, D3).
    pub damping: [T; 3],
    /// Propeller moment arm d in meters.
    pub moment_arm: T,
    /// Symmetric force bound |X| <= max_force (N).
    pub max_force: T,
    /// Symmetric torque bound |N| <= max_torque (N m).
    pub max_torque: T,
    /// Symmetric force-rate bound (N/s).
    pub max_force_rate: T,
    /// Symmetric torque-rate bound (N m/s).
    pub max_torque_rate: T,
}

impl<T: Real> VesselParams<T> {
    pub fn is_valid(&self) -> bool {
        self.inertia.iter().all(|&m| m > T::zero())
            && self.damping.iter().all(|&d| d > T::zero())
            && self.moment_arm > T::zero()
            && self.max_force > T::zero()
            && self.max_torque > T::zero()
            && self.max_force_rate > T::zero()
            && self.max_torque_rate > T::zero()
    }
}

impl Default for VesselParams<f64> {
    /// Identified mono-hull parameters used throughout the benchmarks.
    fn default() -> Self {
        Self {
            inertia: [493.77, 455.81, 55.81],
            damping: [29.23, 2173.7, 17.7],
            moment_arm: 0.28,
            max_force: 39.2,
            max_torque: 10.84,
            max_force_rate: 4.9,
            max_torque_rate: 1.35,
        }
    }
}

/// Pose (x, y, psi) in the n-frame plus body velocities (u, v, r).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct State6<T> {
    pub x: T,
    pub y: T,
    pub psi: T,
    pub u: T,
    pub v: T,
    pub r: T,
}

impl<T: Real> State6<T> {
    pub fn new(x: T, y: T, psi: T, u: T, v: T, r: T) -> Self {
        Self { x, y, psi, u, v, r }
    }

    pub fn position(&self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }

    /// Body velocity rotated into the n-frame.
    pub fn world_velocity(&self) -> Vec2<T> {
        let (s, c) = (self.psi.sin(), self.psi.cos());
        Vec2::new(self.u * c - self.v * s, self.u * s + self.v * c)
    }

    pub fn to_array(&self) -> [T; 6] {
        [self.x, self.y, self.psi, self.u, self.v, self.r]
    }

    pub fn from_array(a: [T; 6]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }
}

/// Thrust-augmented state: pose/velocity plus the actuator pair (X, N).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AugState<T> {
    pub s: State6<T>,
    /// Surge force X (N).
    pub force: T,
    /// Yaw torque N (N m).
    pub torque: T,
}

impl<T: Real> AugState<T> {
    pub fn new(s: State6<T>, force: T, torque: T) -> Self {
        Self { s, force, torque }
    }

    pub fn to_array(&self) -> [T; 8] {
        let s = self.s.to_array();
        [s[0], s[1], s[2], s[3], s[4], s[5], self.force, self.torque]
    }

    pub fn from_array(a: [T; 8]) -> Self {
        Self {
            s: State6::from_array([a[0], a[1], a[2], a[3], a[4], a[5]]),
            force: a[6],
            torque: a[7],
        }
    }
}

/// Thrust rate input (X_delta, N_delta).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ControlRate<T> {
    pub force_rate: T,
    pub torque_rate: T,
}

impl<T: Real> ControlRate<T> {
    pub fn new(force_rate: T, torque_rate: T) -> Self {
        Self {
            force_rate,
            torque_rate,
        }
    }
}

/// Time derivative of the 6-state under thrust (X, N).
pub fn dynamics<T: Real>(s: &State6<T>, force: T, torque: T, p: &VesselParams<T>) -> State6<T> {
    let (sp, cp) = (s.psi.sin(), s.psi.cos());
    let [m1, m2, m3] = p.inertia;
    let [d1, d2, d3] = p.damping;
    State6 {
        x: s.u * cp - s.v * sp,
        y: s.u * sp + s.v * cp,
        psi: s.r,
        u: (m2 * s.v * s.r - d1 * s.u + force) / m1,
        v: (-(m1 * s.u * s.r) - d2 * s.v) / m2,
        r: ((m1 - m2) * s.u * s.v - d3 * s.r + torque) / m3,
    }
}

/// Time derivative of the augmented state; thrust rates pass through.
pub fn aug_dynamics<T: Real>(
    a: &AugState<T>,
    cr: &ControlRate<T>,
    p: &VesselParams<T>,
) -> AugState<T> {
    AugState {
        s: dynamics(&a.s, a.force, a.torque, p),
        force: cr.force_rate,
        torque: cr.torque_rate,
    }
}

fn add_scaled<T: Real>(a: &[T; 8], b: &[T; 8], s: T) -> [T; 8] {
    let mut out = *a;
    for i in 0..8 {
        out[i] = out[i] + b[i] * s;
    }
    out
}

/// One classical RK4 step of the augmented dynamics with the rate held
/// constant; the heading is re-wrapped afterwards.
pub fn integrate<T: Real>(
    a: &AugState<T>,
    cr: &ControlRate<T>,
    dt: T,
    p: &VesselParams<T>,
) -> AugState<T> {
    assert!(dt > T::zero(), "integrate requires dt > 0");
    let half = lit::<T>(0.5);
    let sixth = T::one() / lit::<T>(6.0);
    let two = lit::<T>(2.0);

    let x0 = a.to_array();
    let f = |x: &[T; 8]| aug_dynamics(&AugState::from_array(*x), cr, p).to_array();
    let k1 = f(&x0);
    let k2 = f(&add_scaled(&x0, &k1, dt * half));
    let k3 = f(&add_scaled(&x0, &k2, dt * half));
    let k4 = f(&add_scaled(&x0, &k3, dt));

    let mut out = x0;
    for i in 0..8 {
        out[i] = out[i] + dt * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    out[2] = wrap_angle(out[2]);
    AugState::from_array(out)
}

/// Split the thrust pair into per-propeller forces:
/// F_l = 0.5 (X + N/d), F_r = 0.5 (X - N/d).
pub fn thrust_split<T: Real>(force: T, torque: T, arm: T) -> (T, T) {
    let half = lit::<T>(0.5);
    (
        half * (force + torque / arm),
        half * (force - torque / arm),
    )
}

/// Inverse of [`thrust_split`].
pub fn thrust_join<T: Real>(f_left: T, f_right: T, arm: T) -> (T, T) {
    (f_left + f_right, (f_left - f_right) * arm)
}

/// N-frame acceleration of the vessel position, d/dt [R(psi) (u, v)].
pub fn world_acceleration<T: Real>(a: &AugState<T>, p: &VesselParams<T>) -> Vec2<T> {
    let d = dynamics(&a.s, a.force, a.torque, p);
    let (sp, cp) = (a.s.psi.sin(), a.s.psi.cos());
    // R'(psi) psi_dot (u, v) + R(psi) (u_dot, v_dot)
    let rot_term = Vec2::new(
        -(a.s.u * sp + a.s.v * cp) * a.s.r,
        (a.s.u * cp - a.s.v * sp) * a.s.r,
    );
    let body_term = Vec2::new(d.u * cp - d.v * sp, d.u * sp + d.v * cp);
    rot_term + body_term
}
