//! Scalar abstraction for the geometric and dynamic core.
//!
//! All core math is generic over a floating-point scalar; concrete aliases
//! at the crate root fix `f64` for the solver and simulation layers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Display + Default + Sum + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Default + Sum + 'static {}

/// Lift an `f64` literal into the generic scalar type.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Wrap an angle to (-pi, pi].
pub fn wrap_angle<T: Real>(a: T) -> T {
    let pi = T::from_f64(std::f64::consts::PI).unwrap();
    let two_pi = pi + pi;
    let mut r = (pi - a) % two_pi;
    if r < T::zero() {
        r = r + two_pi;
    }
    pi - r
}

/// Smallest absolute difference a - b on the circle, in (-pi, pi].
pub fn angle_diff<T: Real>(a: T, b: T) -> T {
    wrap_angle(a - b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_maps_into_half_open_interval() {
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-12);
        // boundary convention: both pi and -pi map to +pi
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        for k in -6..=6 {
            let x = 0.3 + 2.0 * PI * k as f64;
            assert!((wrap_angle(x) - 0.3).abs() < 1e-9);
        }
    }

    #[test]
    fn angle_diff_crosses_the_seam() {
        let d = angle_diff(-3.1, 3.1);
        assert!((d - (2.0 * PI - 6.2)).abs() < 1e-12);
    }
}
