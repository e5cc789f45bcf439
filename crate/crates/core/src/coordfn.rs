//! Coordinate functions of the arc-length parameterization.
//!
//! Parameterizing the depth-n stage by t in [0, 1] with constant speed and
//! projecting to an axis gives a piecewise-linear function with 2^n equal
//! t-intervals. The sequence converges uniformly: consecutive stages differ
//! by at most 4 / (2*cos(alpha))^n pointwise, so the tail past stage n is
//! bounded by 4 / ((2*cos(alpha))^(n-1) * (2*cos(alpha) - 1)).
//!
//! The limit also satisfies a two-scale relation: on [0, 1/2] the limit
//! point is the image of the limit at 2t under z -> ratio * R(alpha) * z,
//! and on [1/2, 1] it is (1,0) minus ratio * R(-alpha) applied to the limit
//! at 2 - 2t. Evaluation descends this relation to a certified depth.

use crate::angles::{DragonParams, Rational};
use crate::curve::{dyadic_vertex, SegmentTrig};
use crate::error::{DragonError, Result};
use crate::limits;
use std::f64::consts::PI;

/// Coordinate to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
        }
    }
}

/// One coordinate of the depth-n stage: values at t = j/2^n, linear in
/// between. Breakpoint values refine exactly like curve vertices, so a
/// value survives all later depths bit for bit.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    params: DragonParams,
    depth: u32,
    axis: Axis,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn params(&self) -> &DragonParams {
        &self.params
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// 2^depth + 1 breakpoint values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Builds one coordinate of the depth-n stage by scalar refinement, using
/// the same increments as [`crate::curve::build_curve`]; the two agree bit
/// for bit on every breakpoint.
pub fn coordinate_function(
    params: &DragonParams,
    depth: u32,
    axis: Axis,
) -> Result<PiecewiseLinear> {
    limits::check_depth(depth)?;
    let mut values = match axis {
        Axis::X => vec![0.0, 1.0],
        Axis::Y => vec![0.0, 0.0],
    };
    for d in 1..=depth {
        let trig = SegmentTrig::new(params, d);
        let table = match axis {
            Axis::X => &trig.fx,
            Axis::Y => &trig.fy,
        };
        let old = &values;
        let mut new = Vec::with_capacity(old.len() * 2 - 1);
        for (j, &v) in old.iter().enumerate() {
            new.push(v);
            if j + 1 < old.len() {
                let i = 2 * j as u64 + 1;
                let t = crate::angles::transition_count(d, i) as usize;
                new.push(v + table[t]);
            }
        }
        values = new;
    }
    Ok(PiecewiseLinear {
        params: params.clone(),
        depth,
        axis,
        values,
    })
}

/// Evaluates the piecewise-linear stage at t in [0, 1]. Breakpoints return
/// the stored value exactly; interior points interpolate linearly.
pub fn eval_pl(f: &PiecewiseLinear, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(DragonError::DomainError(t));
    }
    // Scaling by 2^depth is exact in f64.
    let scaled = t * (1u64 << f.depth) as f64;
    let j = scaled.floor();
    let idx = j as usize;
    if scaled == j {
        return Ok(f.values[idx]);
    }
    let frac = scaled - j;
    Ok(f.values[idx] + frac * (f.values[idx + 1] - f.values[idx]))
}

/// Uniform bound on the distance from stage n to the limit:
/// 4 / ((2*cos(alpha))^(n-1) * (2*cos(alpha) - 1)).
///
/// The degenerate angle theta = pi is rejected: there the stages are all
/// equal and the bound is not meaningful as a convergence rate.
pub fn tail_bound(params: &DragonParams, n: u32) -> Result<f64> {
    if params.is_degenerate() {
        return Err(DragonError::Degenerate);
    }
    let two_cos = 1.0 / params.ratio();
    Ok(4.0 / (two_cos.powi(n as i32 - 1) * (two_cos - 1.0)))
}

/// Smallest n >= 1 with tail_bound(n) < eps. The bound decays geometrically
/// with factor 2*cos(alpha) > 1, so a logarithm gives the answer up to a
/// couple of off-by-one corrections.
pub(crate) fn certified_depth(params: &DragonParams, eps: f64) -> Result<u32> {
    if params.is_degenerate() {
        return Err(DragonError::Degenerate);
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(DragonError::InvalidEps(eps));
    }
    let two_cos = 1.0 / params.ratio();
    let guess = 1.0 + (4.0 / (eps * (two_cos - 1.0))).ln() / two_cos.ln();
    let mut n = if guess.is_finite() && guess > 1.0 {
        guess.ceil() as u32
    } else {
        1
    };
    while n > 1 && tail_bound(params, n - 1)? < eps {
        n -= 1;
    }
    while tail_bound(params, n)? >= eps {
        n += 1;
        if n > 1_000_000 {
            return Err(DragonError::InvalidEps(eps));
        }
    }
    Ok(n)
}

/// Result of a limit evaluation: the value, the depth that produced it, and
/// a guaranteed bound on the distance to the true limit (0 when the input
/// was dyadic and the value is exact).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEval {
    pub value: f64,
    pub depth: u32,
    pub error_bound: f64,
}

/// Writes t in (0, 1] as odd j / 2^d. Every f64 is dyadic; d can reach
/// ~1074 for tiny t, in which case it simply exceeds any depth cap.
fn dyadic_form(t: f64) -> (u32, u64) {
    if t == 0.0 {
        return (0, 0);
    }
    let mut d = 0u32;
    let mut s = t;
    while s.fract() != 0.0 {
        s *= 2.0;
        d += 1;
    }
    (d, s as u64)
}

/// Evaluates the limit coordinate function at t with guaranteed accuracy
/// eps. Dyadic t of depth within the evaluation cap are answered exactly
/// from the vertex recurrence (error_bound 0, any eps). Other t descend the
/// two-scale relation to the certified depth for eps; if that depth exceeds
/// the cap, the error reports the bound the cap can still achieve.
pub fn eval_limit(params: &DragonParams, axis: Axis, t: f64, eps: f64) -> Result<LimitEval> {
    if !(0.0..=1.0).contains(&t) {
        return Err(DragonError::DomainError(t));
    }
    if params.is_degenerate() {
        // Stages do not move with n: x is the identity ramp, y is zero.
        let value = match axis {
            Axis::X => t,
            Axis::Y => 0.0,
        };
        return Ok(LimitEval {
            value,
            depth: 0,
            error_bound: 0.0,
        });
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(DragonError::InvalidEps(eps));
    }
    let cap = limits::max_depth();
    let (d, j) = dyadic_form(t);
    if d <= cap {
        let p = dyadic_vertex(params, d, j)?;
        let value = match axis {
            Axis::X => p.x,
            Axis::Y => p.y,
        };
        return Ok(LimitEval {
            value,
            depth: d,
            error_bound: 0.0,
        });
    }
    let needed = certified_depth(params, eps)?;
    if needed > cap {
        return Err(DragonError::EvalDepthExceeded {
            needed,
            cap,
            achieved: tail_bound(params, cap)?,
        });
    }
    let (x, y) = eval_two_scale(params, needed, t);
    let y = if params.reflected() { -y } else { y };
    let value = match axis {
        Axis::X => x,
        Axis::Y => y,
    };
    Ok(LimitEval {
        value,
        depth: needed,
        error_bound: tail_bound(params, needed)?,
    })
}

/// Point of stage n at parameter t via the two-scale relation, for the
/// reduced (unreflected) parameters.
fn eval_two_scale(params: &DragonParams, n: u32, t: f64) -> (f64, f64) {
    if n == 0 {
        return (t, 0.0);
    }
    let r = params.ratio();
    let ca = params.cos_alpha();
    let sa = params.sin_alpha();
    if t <= 0.5 {
        let (x, y) = eval_two_scale(params, n - 1, 2.0 * t);
        (r * (ca * x - sa * y), r * (sa * x + ca * y))
    } else {
        let (x, y) = eval_two_scale(params, n - 1, 2.0 - 2.0 * t);
        (1.0 - r * (ca * x + sa * y), r * (sa * x - ca * y))
    }
}

/// Rational angles approaching an irrational one: continued-fraction
/// convergents p/q of alpha/(2*pi), each turned back into full parameters.
/// Convergents outside the admissible range p/q < 1/6 are skipped (by the
/// alternation of convergents only the first can be outside), and the
/// sequence stops at the denominator cap, so fewer than `count` entries may
/// come back.
pub fn rational_approx_sequence(theta: f64, count: usize) -> Result<Vec<DragonParams>> {
    let params = crate::angles::validate_params(theta)?;
    if params.is_degenerate() {
        return Err(DragonError::Degenerate);
    }
    if let Some(Rational { p, q }) = params.rational() {
        return Err(DragonError::AlreadyRational { p, q });
    }
    let x = params.alpha() / (2.0 * PI);
    let mut out = Vec::with_capacity(count);
    // Convergent recurrence p_k = a_k p_{k-1} + p_{k-2} (same for q),
    // seeded with the standard p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1.
    let (mut p_prev, mut p_cur) = (0u64, 1u64);
    let (mut q_prev, mut q_cur) = (1u64, 0u64);
    let mut frac = x;
    for _ in 0..64 {
        if out.len() >= count || !frac.is_finite() {
            break;
        }
        let a_f = frac.floor();
        if a_f < 0.0 || a_f > u64::MAX as f64 {
            break;
        }
        let a = a_f as u64;
        let p_next = match a.checked_mul(p_cur).and_then(|v| v.checked_add(p_prev)) {
            Some(v) => v,
            None => break,
        };
        let q_next = match a.checked_mul(q_cur).and_then(|v| v.checked_add(q_prev)) {
            Some(v) => v,
            None => break,
        };
        (p_prev, p_cur) = (p_cur, p_next);
        (q_prev, q_cur) = (q_cur, q_next);
        if q_cur > limits::RATIONAL_DENOMINATOR_CAP {
            break;
        }
        if p_cur >= 1 && 6 * p_cur < q_cur {
            // theta' = pi*(q - 4p)/q has alpha'/(2*pi) = p/q exactly.
            out.push(DragonParams::from_pi_fraction(q_cur - 4 * p_cur, q_cur)?);
        }
        let rem = frac - a_f;
        if rem <= 0.0 {
            break;
        }
        frac = 1.0 / rem;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::validate_params;
    use crate::curve::build_curve;

    fn right_angle() -> DragonParams {
        DragonParams::from_pi_fraction(1, 2).unwrap()
    }

    #[test]
    fn right_angle_depth_two_breakpoints() {
        let p = right_angle();
        let fx = coordinate_function(&p, 2, Axis::X).unwrap();
        assert_eq!(fx.values(), &[0.0, 0.0, 0.5, 0.5, 1.0]);
        let fy = coordinate_function(&p, 2, Axis::Y).unwrap();
        assert_eq!(fy.values(), &[0.0, 0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn projection_agrees_with_curve_vertices_bitwise() {
        for params in [
            right_angle(),
            DragonParams::from_pi_fraction(4, 9).unwrap(),
            DragonParams::from_pi_fraction(25, 18).unwrap(),
            validate_params(2.0).unwrap(),
        ] {
            for depth in [0u32, 1, 4, 9] {
                let c = build_curve(&params, depth).unwrap();
                let fx = coordinate_function(&params, depth, Axis::X).unwrap();
                let fy = coordinate_function(&params, depth, Axis::Y).unwrap();
                for (j, v) in c.vertices().iter().enumerate() {
                    assert_eq!(fx.values()[j], v.x);
                    assert_eq!(fy.values()[j], v.y);
                }
            }
        }
    }

    #[test]
    fn eval_interpolates_and_hits_breakpoints_exactly() {
        let p = right_angle();
        let fx = coordinate_function(&p, 2, Axis::X).unwrap();
        assert_eq!(eval_pl(&fx, 0.375).unwrap(), 0.25);
        assert_eq!(eval_pl(&fx, 0.0).unwrap(), 0.0);
        assert_eq!(eval_pl(&fx, 1.0).unwrap(), 1.0);
        for (j, &v) in fx.values().iter().enumerate() {
            assert_eq!(eval_pl(&fx, j as f64 / 4.0).unwrap(), v);
        }
        assert!(matches!(
            eval_pl(&fx, -0.1),
            Err(DragonError::DomainError(_))
        ));
        assert!(matches!(
            eval_pl(&fx, 1.5),
            Err(DragonError::DomainError(_))
        ));
    }

    #[test]
    fn tail_bound_frozen_values() {
        let p = right_angle();
        // two_cos = sqrt(2): 4 / (sqrt(2)^10 * (sqrt(2)-1))
        let b11 = tail_bound(&p, 11).unwrap();
        assert!((b11 - 0.30177669529663688).abs() < 1e-15);
        let b1 = tail_bound(&p, 1).unwrap();
        assert!((b1 - 9.65685424949238).abs() < 1e-12);
        let t = DragonParams::from_pi_fraction(2, 3).unwrap();
        let b10 = tail_bound(&t, 10).unwrap();
        assert!((b10 - 0.03894692022690434).abs() < 1e-15);
        assert!(matches!(
            tail_bound(&validate_params(std::f64::consts::PI).unwrap(), 5),
            Err(DragonError::Degenerate)
        ));
    }

    #[test]
    fn certified_depth_brackets_eps() {
        for params in [
            right_angle(),
            DragonParams::from_pi_fraction(4, 9).unwrap(),
            validate_params(2.0).unwrap(),
        ] {
            for eps in [1.0, 0.1, 1e-3, 1e-6, 1e-12] {
                let n = certified_depth(&params, eps).unwrap();
                assert!(tail_bound(&params, n).unwrap() < eps);
                if n > 1 {
                    assert!(tail_bound(&params, n - 1).unwrap() >= eps);
                }
            }
        }
    }

    #[test]
    fn dyadic_form_roundtrip() {
        assert_eq!(dyadic_form(0.0), (0, 0));
        assert_eq!(dyadic_form(1.0), (0, 1));
        assert_eq!(dyadic_form(0.5), (1, 1));
        assert_eq!(dyadic_form(0.375), (3, 3));
        let (d, j) = dyadic_form(0.1);
        assert!(d > 50);
        assert_eq!(j % 2, 1);
    }

    #[test]
    fn limit_eval_is_exact_on_dyadics() {
        let p = right_angle();
        let fx = coordinate_function(&p, 5, Axis::X).unwrap();
        for (j, &v) in fx.values().iter().enumerate() {
            for eps in [1.0, 1e-9] {
                let e = eval_limit(&p, Axis::X, j as f64 / 32.0, eps).unwrap();
                assert_eq!(e.value, v, "j={j} eps={eps}");
                assert_eq!(e.error_bound, 0.0);
            }
        }
    }

    #[test]
    fn limit_eval_two_scale_is_self_consistent() {
        let p = validate_params(2.0).unwrap();
        for t in [0.1, 1.0 / 3.0, 0.77] {
            let coarse = eval_limit(&p, Axis::X, t, 1e-2).unwrap();
            let fine = eval_limit(&p, Axis::X, t, 1e-4).unwrap();
            assert!(coarse.error_bound < 1e-2);
            assert!(fine.error_bound < 1e-4);
            assert!(
                (coarse.value - fine.value).abs() <= coarse.error_bound + fine.error_bound,
                "t={t}"
            );
            assert!(fine.depth > coarse.depth);
        }
    }

    #[test]
    fn two_scale_recursion_matches_stage_at_breakpoints() {
        // The recursion at depth n and the materialized stage describe the
        // same polyline; dyadic breakpoints must agree up to roundoff.
        for params in [
            DragonParams::from_pi_fraction(2, 3).unwrap(),
            right_angle(),
            validate_params(2.0).unwrap(),
        ] {
            let n = 12u32;
            let fx = coordinate_function(&params, n, Axis::X).unwrap();
            let fy = coordinate_function(&params, n, Axis::Y).unwrap();
            let sign = if params.reflected() { -1.0 } else { 1.0 };
            for j in [0u64, 1, 7, 100, 513, 4096] {
                let t = j as f64 / (1u64 << n) as f64;
                let (x, y) = eval_two_scale(&params, n, t);
                assert!((x - fx.values()[j as usize]).abs() < 1e-12, "x at j={j}");
                assert!(
                    (sign * y - fy.values()[j as usize]).abs() < 1e-12,
                    "y at j={j}"
                );
            }
        }
    }

    #[test]
    fn limit_eval_reports_unreachable_accuracy() {
        let p = right_angle();
        // Non-dyadic t and an eps far below what depth 26 can certify.
        let err = eval_limit(&p, Axis::X, 1.0 / 3.0, 1e-14).unwrap_err();
        match err {
            DragonError::EvalDepthExceeded { needed, cap, achieved } => {
                assert!(needed > cap);
                assert!(achieved > 1e-14);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            eval_limit(&p, Axis::X, 0.5, -1.0),
            Err(DragonError::InvalidEps(_))
        ));
        assert!(matches!(
            eval_limit(&p, Axis::X, 2.0, 1e-3),
            Err(DragonError::DomainError(_))
        ));
    }

    #[test]
    fn degenerate_limit_is_the_ramp() {
        let p = validate_params(std::f64::consts::PI).unwrap();
        for t in [0.0, 0.1, 1.0 / 3.0, 0.875, 1.0] {
            let ex = eval_limit(&p, Axis::X, t, 1e-9).unwrap();
            assert_eq!(ex.value, t);
            assert_eq!(ex.error_bound, 0.0);
            let ey = eval_limit(&p, Axis::Y, t, 1e-9).unwrap();
            assert_eq!(ey.value, 0.0);
        }
    }

    #[test]
    fn convergents_of_a_transcendental_angle() {
        // alpha/(2*pi) = (sqrt(5)-1)/20, well away from every small fraction.
        let x = (5.0f64.sqrt() - 1.0) / 20.0;
        let theta = PI * (1.0 - 4.0 * x);
        let seq = rational_approx_sequence(theta, 4).unwrap();
        let fracs: Vec<(u64, u64)> = seq
            .iter()
            .map(|p| {
                let r = p.rational().unwrap();
                (r.p, r.q)
            })
            .collect();
        assert_eq!(fracs, vec![(1, 16), (5, 81), (6, 97), (11, 178)]);
        let alpha = validate_params(theta).unwrap().alpha();
        let mut last = f64::INFINITY;
        for p in &seq {
            let err = (p.alpha() - alpha).abs();
            assert!(err < last, "convergent errors must shrink");
            last = err;
        }
    }

    #[test]
    fn convergents_reject_rational_and_degenerate_input() {
        assert!(matches!(
            rational_approx_sequence(std::f64::consts::FRAC_PI_2, 3),
            Err(DragonError::AlreadyRational { p: 1, q: 8 })
        ));
        assert!(matches!(
            rational_approx_sequence(PI, 3),
            Err(DragonError::Degenerate)
        ));
    }

    #[test]
    fn consecutive_stages_stay_within_the_step_bound() {
        for params in [
            right_angle(),
            DragonParams::from_pi_fraction(4, 9).unwrap(),
            validate_params(2.0).unwrap(),
        ] {
            let two_cos = 1.0 / params.ratio();
            for n in 0..=10u32 {
                let old = coordinate_function(&params, n, Axis::X).unwrap();
                let new = coordinate_function(&params, n + 1, Axis::X).unwrap();
                let mut sup: f64 = 0.0;
                for j in 0..old.values().len() - 1 {
                    let a = old.values()[j];
                    let b = old.values()[j + 1];
                    let mid = new.values()[2 * j + 1];
                    sup = sup.max((mid - 0.5 * (a + b)).abs());
                }
                let bound = 4.0 / two_cos.powi(n as i32);
                assert!(sup <= bound, "n={n} sup={sup} bound={bound}");
            }
        }
    }
}
