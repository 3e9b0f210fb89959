//! Split-and-reduce approximation tables: a cubic becomes two quadratics,
//! a quartic becomes two cubics. Both halves meet at the parent's midpoint
//! value, so maximum curvature of the pair is a cheap stand-in for the
//! parent's.

use super::BezierCurve;
use crate::geom::Vec2;
use crate::real::{lit, Real};

/// Two quadratics E, F approximating the cubic with control points p0..p3.
pub fn cubic_to_quadratics<T: Real>(
    p: [Vec2<T>; 4],
) -> (BezierCurve<T>, BezierCurve<T>) {
    let c = |v: f64| lit::<T>(v);
    let e0 = p[0];
    let e1 = p[0] * c(9.0 / 32.0) + p[1] * c(21.0 / 32.0) + p[2] * c(3.0 / 32.0)
        - p[3] * c(1.0 / 32.0);
    let e2 = p[0] * c(1.0 / 8.0) + p[1] * c(3.0 / 8.0) + p[2] * c(3.0 / 8.0) + p[3] * c(1.0 / 8.0);
    let f0 = e2;
    let f1 = p[1] * c(3.0 / 32.0) + p[2] * c(21.0 / 32.0) + p[3] * c(9.0 / 32.0)
        - p[0] * c(1.0 / 32.0);
    let f2 = p[3];
    (
        BezierCurve::new(vec![e0, e1, e2]),
        BezierCurve::new(vec![f0, f1, f2]),
    )
}

/// Two cubics E, F approximating the quartic with control points p0..p4.
pub fn quartic_to_cubics<T: Real>(p: [Vec2<T>; 5]) -> (BezierCurve<T>, BezierCurve<T>) {
    let c = |v: f64| lit::<T>(v / 672.0);
    let e0 = p[0];
    let e1 = p[0] * c(227.0) + p[1] * c(436.0) + p[2] * c(18.0) - p[3] * c(12.0) + p[4] * c(3.0);
    let e2 =
        p[0] * c(101.0) + p[1] * c(268.0) + p[2] * c(270.0) + p[3] * c(44.0) - p[4] * c(11.0);
    let mid = (p[0] + p[1] * lit::<T>(4.0) + p[2] * lit::<T>(6.0) + p[3] * lit::<T>(4.0) + p[4])
        * lit::<T>(1.0 / 16.0);
    let f0 = mid;
    let f1 =
        p[1] * c(44.0) - p[0] * c(11.0) + p[2] * c(270.0) + p[3] * c(268.0) + p[4] * c(101.0);
    let f2 = p[0] * c(3.0) - p[1] * c(12.0) + p[2] * c(18.0) + p[3] * c(436.0) + p[4] * c(227.0);
    let f3 = p[4];
    (
        BezierCurve::new(vec![e0, e1, e2, mid]),
        BezierCurve::new(vec![f0, f1, f2, f3]),
    )
}

/// Maximum |curvature| of a cubic measured through its two quadratic
/// approximants.
pub fn cubic_max_curvature<T: Real>(p: [Vec2<T>; 4]) -> Result<T, super::BezierError> {
    let (e, f) = cubic_to_quadratics(p);
    Ok(e.max_abs_curvature()?.max(f.max_abs_curvature()?))
}

/// Maximum |curvature| of a quartic measured through two cubics, each in
/// turn measured through its quadratic approximants.
pub fn quartic_max_curvature<T: Real>(p: [Vec2<T>; 5]) -> Result<T, super::BezierError> {
    let (e, f) = quartic_to_cubics(p);
    let pe: [Vec2<T>; 4] = [e.points()[0], e.points()[1], e.points()[2], e.points()[3]];
    let pf: [Vec2<T>; 4] = [f.points()[0], f.points()[1], f.points()[2], f.points()[3]];
    Ok(cubic_max_curvature(pe)?.max(cubic_max_curvature(pf)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vec2<f64>;

    fn rand_pts<const N: usize>(seed: &mut u64) -> [V; N] {
        let mut next = || {
            *seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (*seed >> 11) as f64 / (1u64 << 53) as f64 * 8.0 - 4.0
        };
        std::array::from_fn(|_| V::new(next(), next()))
    }

    #[test]
    fn collapsed_input_collapses_output() {
        let p = V::new(1.0, -2.0);
        let (e, f) = cubic_to_quadratics([p; 4]);
        assert!(e.points().iter().chain(f.points()).all(|q| q.dist(p) < 1e-15));
        let (e, f) = quartic_to_cubics([p; 5]);
        assert!(e.points().iter().chain(f.points()).all(|q| q.dist(p) < 1e-15));
    }

    #[test]
    fn endpoints_are_preserved() {
        let mut seed = 3u64;
        let p = rand_pts::<4>(&mut seed);
        let (e, f) = cubic_to_quadratics(p);
        assert_eq!(e.first(), p[0]);
        assert_eq!(f.last(), p[3]);
        let q = rand_pts::<5>(&mut seed);
        let (e, f) = quartic_to_cubics(q);
        assert_eq!(e.first(), q[0]);
        assert_eq!(f.last(), q[4]);
    }

    #[test]
    fn halves_meet_at_parent_midpoint() {
        let mut seed = 11u64;
        for _ in 0..100 {
            let p = rand_pts::<4>(&mut seed);
            let parent = BezierCurve::new(p.to_vec());
            let (e, f) = cubic_to_quadratics(p);
            let mid = parent.evaluate(0.5).unwrap();
            assert!(e.evaluate(1.0).unwrap().dist(mid) < 1e-12);
            assert!(f.evaluate(0.0).unwrap().dist(mid) < 1e-12);
            assert_eq!(e.evaluate(1.0).unwrap(), f.evaluate(0.0).unwrap());

            let q = rand_pts::<5>(&mut seed);
            let parent = BezierCurve::new(q.to_vec());
            let (e, f) = quartic_to_cubics(q);
            let mid = parent.evaluate(0.5).unwrap();
            assert!(e.evaluate(1.0).unwrap().dist(mid) < 1e-12);
            assert!(f.evaluate(0.0).unwrap().dist(mid) < 1e-12);
        }
    }

    #[test]
    fn coefficient_rows_sum_to_one() {
        // push the all-ones point through each row
        let one = V::new(1.0, 1.0);
        let (e, f) = cubic_to_quadratics([one; 4]);
        for p in e.points().iter().chain(f.points()) {
            assert!((p.x - 1.0).abs() < 1e-12 && (p.y - 1.0).abs() < 1e-12);
        }
        let (e, f) = quartic_to_cubics([one; 5]);
        for p in e.points().iter().chain(f.points()) {
            assert!((p.x - 1.0).abs() < 1e-12 && (p.y - 1.0).abs() < 1e-12);
        }
    }

    /// Sampled Hausdorff distance between the parent and the split pair.
    fn hausdorff(parent: &BezierCurve<f64>, e: &BezierCurve<f64>, f: &BezierCurve<f64>) -> f64 {
        let n = 1000;
        let sample = |c: &BezierCurve<f64>| -> Vec<V> {
            (0..=n).map(|i| c.evaluate(i as f64 / n as f64).unwrap()).collect()
        };
        let a = sample(parent);
        let mut b = sample(e);
        b.extend(sample(f));
        let one_way = |xs: &[V], ys: &[V]| {
            xs.iter()
                .map(|x| {
                    ys.iter()
                        .map(|y| x.dist(*y))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0f64, f64::max)
        };
        one_way(&a, &b).max(one_way(&b, &a))
    }

    #[test]
    fn split_pairs_stay_close_to_parent() {
        let mut seed = 2024u64;
        for _ in 0..40 {
            let p = rand_pts::<4>(&mut seed);
            let poly_len = crate::geom::polyline_length(&p);
            if poly_len < 1.0 {
                continue;
            }
            let parent = BezierCurve::new(p.to_vec());
            let (e, f) = cubic_to_quadratics(p);
            assert!(hausdorff(&parent, &e, &f) <= 0.02 * poly_len);

            let q = rand_pts::<5>(&mut seed);
            let poly_len = crate::geom::polyline_length(&q);
            if poly_len < 1.0 {
                continue;
            }
            let parent = BezierCurve::new(q.to_vec());
            let (e, f) = quartic_to_cubics(q);
            assert!(hausdorff(&parent, &e, &f) <= 0.02 * poly_len);
        }
    }
}
