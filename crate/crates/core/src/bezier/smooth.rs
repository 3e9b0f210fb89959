//! Waypoint-path smoothing into a G1 piecewise Bezier curve.
//!
//! Step 1 designs the first curve from the relative position of the
//! velocity ray and the first three waypoints (ten sub-cases); a sparse
//! two-cell shortcut replaces the middle waypoint when the scene allows
//! it. Step 2 grows the control point set greedily, breaking the curve
//! where the control hull would touch an obstacle, and a final pass
//! repairs tangent mismatches at the joins.

use super::optimize::{golden_min, opt_cubic, opt_quad1, opt_quar, Locus};
use super::{hull_is_free, BezierCurve, BezierError, PiecewiseBezier};
use crate::env_graph::Obstacle;
use crate::geom::{
    point_line_dist, point_segment_dist, ray_exit_convex, ray_segment_intersection,
    segments_intersect, Rect, Vec2,
};
use crate::real::{lit, Real};

/// Absolute tolerance of the geometric predicates (meters).
const GEOM_TOL: f64 = 1e-6;

/// Everything the smoothing stage needs to know about the scene.
#[derive(Clone, Debug)]
pub struct SmoothingContext<T> {
    pub waypoints: Vec<Vec2<T>>,
    /// Initial velocity direction; must be nonzero (use the heading
    /// direction when the vehicle is at rest).
    pub v0: Vec2<T>,
    pub obstacles: Vec<Obstacle<T>>,
    /// Margin kept between curve hulls and obstacle discs (on top of r_o).
    pub clearance: T,
    /// Voronoi cell polygon containing the first waypoint, when known.
    pub start_cell: Option<Vec<Vec2<T>>>,
    /// Voronoi cell polygon containing the last waypoint, when known.
    pub goal_cell: Option<Vec<Vec2<T>>>,
    pub bounds: Rect<T>,
    /// Desired cruise speed; scales the velocity-ray anchor point.
    pub u_d: T,
}

/// First-curve dispatch per the relative position of the velocity ray
/// anchor and the third waypoint against the line through p0 p1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    C1a,
    C1b,
    C1c,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C4a,
    C4b,
}

fn segment_is_free<T: Real>(
    a: Vec2<T>,
    b: Vec2<T>,
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> bool {
    obstacles
        .iter()
        .all(|o| point_segment_dist(o.center, a, b) >= o.radius + clearance)
}

/// Anchor point on the velocity ray: |p0 q1| = min(|p0 p1|, u_d * 1 s).
fn velocity_anchor<T: Real>(ctx: &SmoothingContext<T>) -> Result<(Vec2<T>, T), BezierError> {
    let p0 = ctx.waypoints[0];
    let p1 = ctx.waypoints[1];
    let dir = ctx.v0.normalized().ok_or(BezierError::DegenerateInput)?;
    let leg = p0.dist(p1);
    if leg <= lit::<T>(GEOM_TOL) {
        return Err(BezierError::DegenerateInput);
    }
    let len = if ctx.u_d > T::zero() {
        leg.min(ctx.u_d)
    } else {
        leg
    };
    Ok((p0 + dir * len, len))
}

/// Classify the first-curve construction case.
pub fn classify_first_case<T: Real>(ctx: &SmoothingContext<T>) -> Result<CaseTag, BezierError> {
    assert!(ctx.waypoints.len() >= 3, "classification needs three waypoints");
    let tol = lit::<T>(GEOM_TOL);
    let p0 = ctx.waypoints[0];
    let p1 = ctx.waypoints[1];
    let p2 = ctx.waypoints[2];
    let (q1, _) = velocity_anchor(ctx)?;

    let on_q1 = point_line_dist(q1, p0, p1) <= tol;
    let on_p2 = point_line_dist(p2, p0, p1) <= tol;
    let acute = (p1 - p0).dot(q1 - p0) >= -tol;

    if on_q1 || on_p2 {
        return Ok(match (acute, on_q1, on_p2) {
            (true, true, true) => CaseTag::C1a,
            (true, false, true) => CaseTag::C1b,
            (true, true, false) => CaseTag::C1c,
            (false, true, true) => CaseTag::C2a,
            (false, false, true) => CaseTag::C2b,
            (false, true, false) => CaseTag::C2c,
            _ => unreachable!(),
        });
    }

    let side_q1 = (p1 - p0).cross(q1 - p0);
    let side_p2 = (p1 - p0).cross(p2 - p0);
    if side_q1 * side_p2 < T::zero() {
        return Ok(if acute { CaseTag::C3a } else { CaseTag::C3b });
    }

    let crossing = segments_intersect(p0, q1, p1, p2);
    if crossing && segment_is_free(p0, q1, &ctx.obstacles, ctx.clearance) {
        Ok(CaseTag::C4b)
    } else {
        Ok(CaseTag::C4a)
    }
}

/// Farthest point on [from, to] keeping the hull of `base + point`
/// collision-free; bisection to 1e-3 m.
fn maximal_on_segment<T: Real>(
    base: &[Vec2<T>],
    from: Vec2<T>,
    to: Vec2<T>,
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> Result<Vec2<T>, BezierError> {
    let feasible = |p: Vec2<T>| {
        let mut pts = base.to_vec();
        pts.push(p);
        hull_is_free(&pts, obstacles, clearance)
    };
    if feasible(to) {
        return Ok(to);
    }
    if !feasible(from) {
        return Err(BezierError::NoFeasiblePoint);
    }
    let len = from.dist(to).max(lit::<T>(GEOM_TOL));
    let mut lo = T::zero();
    let mut hi = T::one();
    while (hi - lo) * len > lit::<T>(1e-3) {
        let mid = (lo + hi) * lit::<T>(0.5);
        if feasible(from.lerp(to, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(from.lerp(to, lo))
}

/// Exit point of a ray from p0, preferring the start cell and falling back
/// to the environment bounds.
fn ray_exit<T: Real>(ctx: &SmoothingContext<T>, origin: Vec2<T>, dir: Vec2<T>) -> Vec2<T> {
    if let Some(cell) = &ctx.start_cell {
        if let Some(p) = ray_exit_convex(cell, origin, dir) {
            return p;
        }
    }
    ray_exit_convex(&ctx.bounds.polygon(), origin, dir)
        .unwrap_or(origin + dir * lit::<T>(1.0))
}

fn perpendicular_anchor<T: Real>(
    ctx: &SmoothingContext<T>,
    tag: CaseTag,
    q1: Vec2<T>,
) -> Result<Vec2<T>, BezierError> {
    let p0 = ctx.waypoints[0];
    let p1 = ctx.waypoints[1];
    let p2 = ctx.waypoints[2];
    let along = (p1 - p0).normalized().ok_or(BezierError::DegenerateInput)?;
    match tag {
        CaseTag::C2a => {
            // farther of the two perpendicular exits through p0
            let n = along.perp();
            let a = ray_exit(ctx, p0, n);
            let b = ray_exit(ctx, p0, -n);
            Ok(if a.dist(p0) >= b.dist(p0) { a } else { b })
        }
        CaseTag::C2b => {
            // interior bisector of the angle at p0 between p1 and q1
            let toward_q1 = (q1 - p0).normalized().ok_or(BezierError::DegenerateInput)?;
            match (along + toward_q1).normalized() {
                Some(bis) => Ok(ray_exit(ctx, p0, bis)),
                None => {
                    // straight angle: perpendicular on the side of p2
                    let side = (p1 - p0).cross(p2 - p0);
                    let n = if side >= T::zero() { along.perp() } else { -along.perp() };
                    Ok(ray_exit(ctx, p0, n))
                }
            }
        }
        CaseTag::C2c => {
            let side = (p1 - p0).cross(p2 - p0);
            let n = if side >= T::zero() { along.perp() } else { -along.perp() };
            Ok(ray_exit(ctx, p0, n))
        }
        _ => unreachable!(),
    }
}

/// Design the first curve. Returns its control points and the index of the
/// next waypoint the extension step continues from.
pub fn design_first_curve<T: Real>(
    ctx: &SmoothingContext<T>,
) -> Result<(BezierCurve<T>, usize), BezierError> {
    let tag = classify_first_case(ctx)?;
    design_for_case(ctx, tag)
}

fn design_for_case<T: Real>(
    ctx: &SmoothingContext<T>,
    tag: CaseTag,
) -> Result<(BezierCurve<T>, usize), BezierError> {
    let p0 = ctx.waypoints[0];
    let p1 = ctx.waypoints[1];
    let p2 = ctx.waypoints[2];
    let (q1, q1_len) = velocity_anchor(ctx)?;
    let v_dir = ctx.v0.normalized().ok_or(BezierError::DegenerateInput)?;
    let obstacles = &ctx.obstacles;
    let clearance = ctx.clearance;

    match tag {
        CaseTag::C1a => {
            let pts = vec![p0, p1, p2];
            if !hull_is_free(&pts, obstacles, clearance) {
                return Err(BezierError::NoFeasiblePoint);
            }
            Ok((BezierCurve::new(pts), 3))
        }
        CaseTag::C1b | CaseTag::C3a => cubic_recipe(ctx, p0, p1, p2, q1, q1_len, v_dir),
        CaseTag::C1c => {
            let q2_max = maximal_on_segment(&[p0, p1], p1, p2, obstacles, clearance)?;
            let q2 = opt_quad1(p0, p1, q2_max)?;
            Ok((BezierCurve::new(vec![p0, p1, q2]), 2))
        }
        CaseTag::C2a | CaseTag::C2b | CaseTag::C2c | CaseTag::C3b => {
            quartic_recipe(ctx, tag, p0, p1, p2, q1, q1_len, v_dir)
        }
        CaseTag::C4a => {
            let acute = (p1 - p0).dot(q1 - p0) >= -lit::<T>(GEOM_TOL);
            if acute {
                cubic_recipe(ctx, p0, p1, p2, q1, q1_len, v_dir)
            } else {
                quartic_recipe(ctx, CaseTag::C2b, p0, p1, p2, q1, q1_len, v_dir)
            }
        }
        CaseTag::C4b => {
            let q2_max = maximal_on_segment(&[p0, q1], p1, p2, obstacles, clearance)?;
            let q2 = opt_quad1(p0, q1, q2_max)?;
            Ok((BezierCurve::new(vec![p0, q1, q2]), 2))
        }
    }
}

/// Case 1b shape: cubic (p0, q1 on the velocity ray, p1, q3 on p1 p2).
fn cubic_recipe<T: Real>(
    ctx: &SmoothingContext<T>,
    p0: Vec2<T>,
    p1: Vec2<T>,
    p2: Vec2<T>,
    q1: Vec2<T>,
    q1_len: T,
    v_dir: Vec2<T>,
) -> Result<(BezierCurve<T>, usize), BezierError> {
    let q3_max = maximal_on_segment(&[p0, q1, p1], p1, p2, &ctx.obstacles, ctx.clearance)?;
    let loci = [
        Locus::segment(p0 + v_dir * (q1_len * lit::<T>(0.05)), q1),
        Locus::fixed(p1),
        Locus::segment(p1, q3_max),
    ];
    let pts = opt_cubic(p0, &loci, &ctx.obstacles, ctx.clearance)?;
    Ok((BezierCurve::new(vec![p0, pts[0], pts[1], pts[2]]), 2))
}

/// Case 2 shape: quartic (p0, q1, q2 on the case-specific anchor ray, p1,
/// q4 on p1 p2). The ray anchor is free only in case 2a.
fn quartic_recipe<T: Real>(
    ctx: &SmoothingContext<T>,
    tag: CaseTag,
    p0: Vec2<T>,
    p1: Vec2<T>,
    p2: Vec2<T>,
    q1: Vec2<T>,
    q1_len: T,
    v_dir: Vec2<T>,
) -> Result<(BezierCurve<T>, usize), BezierError> {
    let construction = if tag == CaseTag::C3b { CaseTag::C2b } else { tag };
    let q2 = perpendicular_anchor(ctx, construction, q1)?;
    let q4_max = maximal_on_segment(&[p0, q1, q2, p1], p1, p2, &ctx.obstacles, ctx.clearance)?;
    let q1_locus = if construction == CaseTag::C2a {
        Locus::segment(p0 + v_dir * (q1_len * lit::<T>(0.05)), q1)
    } else {
        Locus::fixed(q1)
    };
    let loci = [
        q1_locus,
        Locus::segment(p0.lerp(q2, lit::<T>(0.05)), q2),
        Locus::fixed(p1),
        Locus::segment(p1, q4_max),
    ];
    let pts = opt_quar(p0, &loci, &ctx.obstacles, ctx.clearance)?;
    Ok((BezierCurve::new(vec![p0, pts[0], pts[1], pts[2], pts[3]]), 2))
}

/// Sparse-obstacle shortcut: with exactly three waypoints whose outer pair
/// is symmetric across the shared cell edge and a velocity ray crossing
/// it, the middle waypoint moves onto the velocity ray. Returns the
/// adjusted waypoints or None when any precondition fails.
pub fn sparse_adjust<T: Real>(ctx: &SmoothingContext<T>) -> Option<Vec<Vec2<T>>> {
    let tol = lit::<T>(GEOM_TOL);
    if ctx.waypoints.len() != 3 {
        return None;
    }
    let (start_cell, goal_cell) = match (&ctx.start_cell, &ctx.goal_cell) {
        (Some(a), Some(b)) => (a, b),
        _ => return None,
    };
    let p0 = ctx.waypoints[0];
    let p1 = ctx.waypoints[1];
    let p2 = ctx.waypoints[2];

    // shared edge of the two cells with p1 as one endpoint
    let mut shared: Option<(Vec2<T>, Vec2<T>)> = None;
    'outer: for i in 0..start_cell.len() {
        let a = start_cell[i];
        let b = start_cell[(i + 1) % start_cell.len()];
        for j in 0..goal_cell.len() {
            let c = goal_cell[j];
            let d = goal_cell[(j + 1) % goal_cell.len()];
            let same = (a.dist(c) <= tol && b.dist(d) <= tol)
                || (a.dist(d) <= tol && b.dist(c) <= tol);
            if same {
                shared = Some((a, b));
                break 'outer;
            }
        }
    }
    let (ea, eb) = shared?;
    let q1 = if p1.dist(ea) <= tol {
        eb
    } else if p1.dist(eb) <= tol {
        ea
    } else {
        return None;
    };

    // midpoint of p0 p2 must sit on the shared edge
    let mid = (p0 + p2) * lit::<T>(0.5);
    if point_segment_dist(mid, p1, q1) > tol {
        return None;
    }

    // velocity ray must cross the shared edge
    let dir = ctx.v0.normalized()?;
    let q2 = ray_segment_intersection(p0, dir, p1, q1)?;
    if q2.dist(p0) <= tol {
        return None;
    }

    // place q3 on p0 q2 so the corner there is exactly optimal for the
    // quadratic (p0, q3, p2): |q3 p2| = f(phi) |p0 q3| with the unclamped
    // factor
    let gap = |t: T| -> T {
        let q3 = p0.lerp(q2, t);
        let inbound = q3 - p0;
        let outbound = p2 - q3;
        let alpha = inbound.norm();
        let beta = outbound.norm();
        if alpha <= tol || beta <= tol {
            return T::infinity();
        }
        let cos_phi = (inbound.dot(outbound) / (alpha * beta))
            .max(-T::one())
            .min(T::one());
        let factor =
            (-cos_phi + (cos_phi * cos_phi + lit::<T>(8.0)).sqrt()) / lit::<T>(2.0);
        beta - factor * alpha
    };
    let mut lo = lit::<T>(1e-6);
    let mut hi = T::one();
    if !(gap(lo) > T::zero() && gap(hi) <= T::zero()) {
        return None;
    }
    for _ in 0..60 {
        let mid = (lo + hi) * lit::<T>(0.5);
        if gap(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q3 = p0.lerp(q2, (lo + hi) * lit::<T>(0.5));
    if q3.dist(p0) <= tol || q3.dist(q2) <= tol {
        return None;
    }
    Some(vec![p0, q3, p2])
}

/// Try to absorb the next waypoint into the running control set. When the
/// grown hull would collide, the point is pulled back along the last
/// segment as far as possible (1e-3 m bisection) and a curve break is
/// flagged at the shortened point.
pub fn extend_curve<T: Real>(
    current: &[Vec2<T>],
    next: Vec2<T>,
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> (Vec2<T>, bool) {
    let mut pts = current.to_vec();
    pts.push(next);
    if hull_is_free(&pts, obstacles, clearance) {
        return (next, false);
    }
    let last = *current.last().expect("extend_curve needs a nonempty control set");
    let feasible = |p: Vec2<T>| {
        let mut cand = current.to_vec();
        cand.push(p);
        hull_is_free(&cand, obstacles, clearance)
    };
    let len = last.dist(next).max(lit::<T>(GEOM_TOL));
    let mut lo = T::zero();
    let mut hi = T::one();
    while (hi - lo) * len > lit::<T>(1e-3) {
        let mid = (lo + hi) * lit::<T>(0.5);
        if feasible(last.lerp(next, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (last.lerp(next, lo), true)
}

/// Repair every join whose tangents disagree by more than 1e-6 rad: the
/// join point is replaced by a point on the incoming curve's last control
/// leg, which is also prepended to the outgoing curve, making the three
/// points collinear. The position minimizes the larger of the two curves'
/// maximum curvatures.
pub fn enforce_g1<T: Real>(
    pw: PiecewiseBezier<T>,
    obstacles: &[Obstacle<T>],
    clearance: T,
) -> PiecewiseBezier<T> {
    let tol = lit::<T>(GEOM_TOL);
    let mut curves = pw.curves;
    for j in 0..curves.len().saturating_sub(1) {
        let angle = PiecewiseBezier::new(vec![curves[j].clone(), curves[j + 1].clone()])
            .join_angles()[0];
        if angle <= tol {
            continue;
        }
        let d_pts = curves[j].points();
        let n = d_pts.len();
        if n < 2 {
            continue;
        }
        let leg_start = d_pts[n - 2];
        let corner = d_pts[n - 1];
        let leg = leg_start.dist(corner);
        if leg <= tol {
            continue;
        }

        let objective = |t: T| -> T {
            let p = leg_start.lerp(corner, t);
            let mut d_new = curves[j].points().to_vec();
            *d_new.last_mut().unwrap() = p;
            let mut e_new = curves[j + 1].points().to_vec();
            e_new.insert(0, p);
            if !hull_is_free(&e_new, obstacles, clearance) {
                return T::infinity();
            }
            let kd = BezierCurve::new(d_new).max_abs_curvature();
            let ke = BezierCurve::new(e_new).max_abs_curvature();
            match (kd, ke) {
                (Ok(a), Ok(b)) => a.max(b),
                _ => T::infinity(),
            }
        };
        let span = lit::<T>(1e-3) / leg;
        let (t_opt, val) = golden_min(
            objective,
            lit::<T>(0.02),
            lit::<T>(0.999),
            span.min(lit::<T>(0.05)),
        );
        if val.is_infinite() {
            continue; // no feasible repair; leave the corner in place
        }
        let p = leg_start.lerp(corner, t_opt);
        let mut d_new = curves[j].points().to_vec();
        *d_new.last_mut().unwrap() = p;
        let mut e_new = curves[j + 1].points().to_vec();
        e_new.insert(0, p);
        curves[j] = BezierCurve::new(d_new);
        curves[j + 1] = BezierCurve::new(e_new);
    }
    PiecewiseBezier::new(curves)
}

/// Full smoothing pipeline: sparse adjustment, first-curve design, greedy
/// extension with curve breaks, G1 repair.
pub fn smooth<T: Real>(ctx: &SmoothingContext<T>) -> Result<PiecewiseBezier<T>, BezierError> {
    if ctx.waypoints.len() < 2 {
        return Err(BezierError::DegenerateInput);
    }
    let mut ctx = ctx.clone();
    if ctx.waypoints.len() == 2 {
        // synthesize a midpoint so the case machinery applies
        let mid = (ctx.waypoints[0] + ctx.waypoints[1]) * lit::<T>(0.5);
        ctx.waypoints.insert(1, mid);
    }

    let designed = match sparse_adjust(&ctx) {
        Some(adjusted) => {
            let mut alt = ctx.clone();
            alt.waypoints = adjusted;
            match design_first_curve(&alt) {
                Ok(d) => {
                    ctx = alt;
                    Ok(d)
                }
                Err(_) => design_first_curve(&ctx),
            }
        }
        None => design_first_curve(&ctx),
    };
    let (first, next_idx) = designed?;

    let mut control: Vec<Vec2<T>> = first.points().to_vec();
    let mut curves: Vec<BezierCurve<T>> = Vec::new();
    for &wp in &ctx.waypoints[next_idx.min(ctx.waypoints.len())..] {
        let mut guard = 0usize;
        loop {
            let (pt, brk) = extend_curve(&control, wp, &ctx.obstacles, ctx.clearance);
            if !brk {
                control.push(pt);
                break;
            }
            control.push(pt);
            curves.push(BezierCurve::new(control.clone()));
            control = vec![pt];
            guard += 1;
            if guard > 50 {
                return Err(BezierError::NoFeasiblePoint);
            }
        }
    }
    if control.len() >= 2 {
        curves.push(BezierCurve::new(control));
    } else if curves.is_empty() {
        curves.push(first);
    }

    Ok(enforce_g1(
        PiecewiseBezier::new(curves),
        &ctx.obstacles,
        ctx.clearance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vec2<f64>;

    fn ctx(waypoints: Vec<V>, v0: V, obstacles: Vec<Obstacle<f64>>) -> SmoothingContext<f64> {
        SmoothingContext {
            waypoints,
            v0,
            obstacles,
            clearance: 0.3,
            start_cell: None,
            goal_cell: None,
            bounds: Rect::new(V::new(-50.0, -50.0), V::new(50.0, 50.0)),
            u_d: 1.0,
        }
    }

    #[test]
    fn classify_collinear_is_1a() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)],
            V::new(1.0, 0.0),
            vec![],
        );
        assert_eq!(classify_first_case(&c).unwrap(), CaseTag::C1a);
    }

    #[test]
    fn classify_velocity_on_line_is_1c() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, 2.0)],
            V::new(1.0, 0.0),
            vec![],
        );
        assert_eq!(classify_first_case(&c).unwrap(), CaseTag::C1c);
    }

    #[test]
    fn classify_third_point_on_line_is_1b() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)],
            V::new(1.0, 0.6),
            vec![],
        );
        assert_eq!(classify_first_case(&c).unwrap(), CaseTag::C1b);
    }

    #[test]
    fn classify_obtuse_collinear_is_2a() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)],
            V::new(-1.0, 0.0),
            vec![],
        );
        assert_eq!(classify_first_case(&c).unwrap(), CaseTag::C2a);
    }

    #[test]
    fn classify_opposite_sides() {
        // q1 above, p2 below the p0 p1 line
        let acute = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, -1.5)],
            V::new(1.0, 0.8),
            vec![],
        );
        assert_eq!(classify_first_case(&acute).unwrap(), CaseTag::C3a);
        let obtuse = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, -1.5)],
            V::new(-1.0, 0.8),
            vec![],
        );
        assert_eq!(classify_first_case(&obtuse).unwrap(), CaseTag::C3b);
    }

    #[test]
    fn classify_same_side_crossing() {
        // both above; the long velocity ray crosses p1 p2
        let c = SmoothingContext {
            u_d: 3.0,
            ..ctx(
                vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(1.0, 2.0)],
                V::new(0.6, 0.8),
                vec![],
            )
        };
        assert_eq!(classify_first_case(&c).unwrap(), CaseTag::C4b);
        // same geometry, obstructed segment falls back to 4a
        let blocked = SmoothingContext {
            obstacles: vec![Obstacle::new(V::new(0.6, 0.8), 0.2)],
            ..c
        };
        assert_eq!(classify_first_case(&blocked).unwrap(), CaseTag::C4a);
        // no intersection: short ray
        let short = SmoothingContext { u_d: 0.3, ..blocked };
        assert_eq!(classify_first_case(&short).unwrap(), CaseTag::C4a);
    }

    #[test]
    fn first_curve_case_1a_is_straight() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)],
            V::new(1.0, 0.0),
            vec![],
        );
        let (curve, next) = design_first_curve(&c).unwrap();
        assert_eq!(next, 3);
        assert!(curve.max_abs_curvature().unwrap() < 1e-12);
    }

    #[test]
    fn first_curve_case_1c_keeps_first_leg_direction() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, 2.0)],
            V::new(1.0, 0.0),
            vec![],
        );
        let (curve, _) = design_first_curve(&c).unwrap();
        assert_eq!(curve.points()[1], V::new(2.0, 0.0));
        let tangent = curve.tangent(0.0).unwrap();
        assert!((tangent.angle() - 0.0).abs() < 1e-9);
    }

    #[test]
    fn first_curve_tangent_matches_velocity_in_every_case() {
        let scenes: Vec<SmoothingContext<f64>> = vec![
            // 1a, 1b, 1c, 2a, 2b, 2c, 3a, 3b, 4a, 4b inputs
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)], V::new(1.0, 0.0), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)], V::new(1.0, 0.6), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, 2.0)], V::new(1.0, 0.0), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)], V::new(-1.0, 0.0), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(4.0, 0.0)], V::new(-1.0, 0.4), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, 2.0)], V::new(-1.0, 0.0), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, -1.5)], V::new(1.0, 0.8), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(3.0, -1.5)], V::new(-1.0, 0.8), vec![]),
            ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(1.0, 2.0)], V::new(0.3, 0.954), vec![]),
            SmoothingContext {
                u_d: 3.0,
                ..ctx(vec![V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(1.0, 2.0)], V::new(0.6, 0.8), vec![])
            },
        ];
        for (i, scene) in scenes.iter().enumerate() {
            let (curve, _) = design_first_curve(scene).unwrap();
            assert_eq!(curve.first(), scene.waypoints[0], "case {i}");
            let tangent = curve.tangent(0.0).unwrap();
            let want = scene.v0.normalized().unwrap();
            let angle = tangent.dot(want).clamp(-1.0, 1.0).acos();
            assert!(angle < 1e-6, "case {i}: tangent off by {angle} rad");
        }
    }

    #[test]
    fn extend_accepts_inside_point_and_free_path() {
        let current = vec![V::new(0.0, 0.0), V::new(1.0, 0.0), V::new(1.0, 1.0)];
        let inside = V::new(0.7, 0.3);
        let (p, brk) = extend_curve(&current, inside, &[], 0.0);
        assert_eq!(p, inside);
        assert!(!brk);

        // far obstacle never interferes
        let far = [Obstacle::new(V::new(50.0, 50.0), 1.0)];
        let (p, brk) = extend_curve(&current, V::new(2.0, 2.0), &far, 0.3);
        assert_eq!(p, V::new(2.0, 2.0));
        assert!(!brk);
    }

    #[test]
    fn extend_shortens_against_blocking_obstacle() {
        let current = vec![V::new(0.0, 0.0), V::new(1.0, 0.0)];
        let next = V::new(4.0, 0.0);
        let ob = [Obstacle::new(V::new(2.5, 0.4), 0.3)];
        let clearance = 0.2;
        let (p, brk) = extend_curve(&current, next, &ob, clearance);
        assert!(brk);
        // brute-force scan of the same segment
        let feasible = |t: f64| {
            let mut pts = current.clone();
            pts.push(V::new(1.0, 0.0).lerp(next, t));
            hull_is_free(&pts, &ob, clearance)
        };
        let mut best = 0.0;
        for i in 0..=10_000 {
            let t = i as f64 / 10_000.0;
            if feasible(t) {
                best = t;
            }
        }
        let scan = V::new(1.0, 0.0).lerp(next, best);
        assert!(p.dist(scan) <= 1e-3 + 1e-9, "{p:?} vs {scan:?}");
    }

    #[test]
    fn g1_identity_on_smooth_input() {
        let a = BezierCurve::new(vec![V::new(0.0, 0.0), V::new(1.0, 0.0), V::new(2.0, 0.0)]);
        let b = BezierCurve::new(vec![V::new(2.0, 0.0), V::new(3.0, 0.0), V::new(4.0, 1.0)]);
        let pw = PiecewiseBezier::new(vec![a.clone(), b.clone()]);
        let fixed = enforce_g1(pw.clone(), &[], 0.0);
        assert_eq!(fixed.curves[0], a);
        assert_eq!(fixed.curves[1], b);
    }

    #[test]
    fn g1_repairs_right_angle_corner() {
        let a = BezierCurve::new(vec![V::new(0.0, 0.0), V::new(1.0, 0.0), V::new(2.0, 0.0)]);
        let b = BezierCurve::new(vec![V::new(2.0, 0.0), V::new(2.0, 1.0), V::new(2.0, 2.0)]);
        let pw = PiecewiseBezier::new(vec![a, b]);
        assert!(!pw.is_g1(1e-6));
        let fixed = enforce_g1(pw, &[], 0.0);
        assert!(fixed.is_g1(1e-6), "angles: {:?}", fixed.join_angles());
        let k = fixed.curves[1].max_abs_curvature().unwrap();
        assert!(k.is_finite() && k > 0.0);
    }

    #[test]
    fn g1_repair_matches_scan_oracle() {
        let a = BezierCurve::new(vec![V::new(0.0, 0.0), V::new(1.0, 0.0), V::new(2.0, 0.0)]);
        let b = BezierCurve::new(vec![V::new(2.0, 0.0), V::new(2.0, 1.0), V::new(2.0, 2.0)]);
        let fixed = enforce_g1(PiecewiseBezier::new(vec![a.clone(), b.clone()]), &[], 0.0);
        let got = fixed.curves[0]
            .max_abs_curvature()
            .unwrap()
            .max(fixed.curves[1].max_abs_curvature().unwrap());

        let leg_start = a.points()[1];
        let corner = a.points()[2];
        let mut best = f64::INFINITY;
        for i in 0..=1000 {
            let t = 0.02 + (0.999 - 0.02) * i as f64 / 1000.0;
            let p = leg_start.lerp(corner, t);
            let mut d_new = a.points().to_vec();
            *d_new.last_mut().unwrap() = p;
            let mut e_new = b.points().to_vec();
            e_new.insert(0, p);
            let v = BezierCurve::new(d_new)
                .max_abs_curvature()
                .unwrap()
                .max(BezierCurve::new(e_new).max_abs_curvature().unwrap());
            best = best.min(v);
        }
        assert!((got - best).abs() <= 1e-3 * best.max(1.0), "{got} vs {best}");
    }

    #[test]
    fn smooth_straight_path_is_single_straight_curve() {
        let c = ctx(
            (0..6).map(|i| V::new(i as f64, 0.0)).collect(),
            V::new(1.0, 0.0),
            vec![],
        );
        let pw = smooth(&c).unwrap();
        assert_eq!(pw.curves.len(), 1);
        assert!(pw.curves[0].max_abs_curvature().unwrap() < 1e-9);
        assert_eq!(pw.end(), V::new(5.0, 0.0));
    }

    #[test]
    fn smooth_ends_exactly_at_goal_and_is_g1() {
        let c = ctx(
            vec![
                V::new(0.0, 0.0),
                V::new(3.0, 0.5),
                V::new(5.0, 3.0),
                V::new(8.0, 3.5),
                V::new(11.0, 1.0),
            ],
            V::new(1.0, 0.3),
            vec![
                Obstacle::new(V::new(4.5, 0.5), 0.2),
                Obstacle::new(V::new(7.0, 5.0), 0.3),
            ],
        );
        let pw = smooth(&c).unwrap();
        assert_eq!(pw.end(), V::new(11.0, 1.0));
        assert!(pw.is_g1(1e-6), "angles {:?}", pw.join_angles());
        let tangent = pw.curves[0].tangent(0.0).unwrap();
        let want = c.v0.normalized().unwrap();
        assert!(tangent.dot(want).clamp(-1.0, 1.0).acos() < 1e-6);
        // hull guarantee transfers to samples
        let margin = pw.min_obstacle_margin(&c.obstacles, 1000);
        assert!(margin >= c.clearance - 1e-3, "margin {margin}");
    }

    #[test]
    fn sparse_adjust_identity_when_preconditions_fail() {
        let c = ctx(
            vec![V::new(0.0, 0.0), V::new(1.0, 1.0), V::new(2.0, 0.0)],
            V::new(1.0, 0.0),
            vec![],
        );
        assert!(sparse_adjust(&c).is_none());
    }

    /// Symmetric four-obstacle scene where the start and goal cells share
    /// the edge from the central Voronoi vertex to the right boundary.
    fn sparse_scene() -> SmoothingContext<f64> {
        let obstacles = vec![
            Obstacle::new(V::new(-3.0, 3.0), 0.3),
            Obstacle::new(V::new(3.0, 3.0), 0.3),
            Obstacle::new(V::new(-3.0, 7.0), 0.3),
            Obstacle::new(V::new(3.0, 7.0), 0.3),
        ];
        SmoothingContext {
            waypoints: vec![V::new(0.5, 1.0), V::new(0.0, 5.0), V::new(0.5, 9.0)],
            v0: V::new(0.2, 1.0),
            obstacles,
            clearance: 0.3,
            start_cell: Some(vec![
                V::new(0.0, 0.0),
                V::new(8.0, 0.0),
                V::new(8.0, 5.0),
                V::new(0.0, 5.0),
            ]),
            goal_cell: Some(vec![
                V::new(0.0, 5.0),
                V::new(8.0, 5.0),
                V::new(8.0, 10.0),
                V::new(0.0, 10.0),
            ]),
            bounds: Rect::new(V::new(-8.0, 0.0), V::new(8.0, 10.0)),
            u_d: 1.0,
        }
    }

    #[test]
    fn sparse_adjust_moves_waypoint_onto_velocity_ray() {
        let c = sparse_scene();
        let adjusted = sparse_adjust(&c).unwrap();
        assert_eq!(adjusted.len(), 3);
        assert_eq!(adjusted[0], c.waypoints[0]);
        assert_eq!(adjusted[2], c.waypoints[2]);
        let q3 = adjusted[1];
        // q3 lies on the velocity ray between p0 and the shared edge
        let dir = c.v0.normalized().unwrap();
        let off_ray = (q3 - c.waypoints[0]).cross(dir).abs();
        assert!(off_ray < 1e-9, "off-ray distance {off_ray}");
        assert!(q3.y > c.waypoints[0].y && q3.y < 5.0);
    }

    #[test]
    fn sparse_adjust_shortens_the_smoothed_curve() {
        let c = sparse_scene();
        let adjusted_pw = smooth(&c).unwrap();

        let mut unadjusted_ctx = c.clone();
        unadjusted_ctx.start_cell = None; // disables the shortcut
        let unadjusted_pw = smooth(&unadjusted_ctx).unwrap();

        let la = adjusted_pw.total_arc_length(2000);
        let lu = unadjusted_pw.total_arc_length(2000);
        assert!(la < lu, "adjusted {la} vs unadjusted {lu}");

        // and it stays collision-free with the clearance margin
        let margin = adjusted_pw.min_obstacle_margin(&c.obstacles, 1000);
        assert!(margin >= c.clearance - 1e-3, "margin {margin}");
    }
}
