//! Randomized invariant checks over the public API.

use dragondim::{
    angle_at, angle_histogram, build_curve, coordinate_function, cover_bound, dyadic_vertex,
    estimate_dimension, eval_pl, mesh_count, mesh_count_streaming, noncover_bound,
    rational_approx_sequence, tail_bound, validate_params, AngleWord, Axis, DragonParams,
};
use proptest::prelude::*;

/// Admissible angles, away from the interval endpoints so float noise in
/// the generator cannot cross them.
fn any_theta() -> impl Strategy<Value = f64> {
    1.1f64..5.2f64
}

/// Angles with an exact rational bookkeeping path.
fn rational_params() -> impl Strategy<Value = DragonParams> {
    (1u64..=30, 2u64..=18)
        .prop_filter_map("admissible pi fraction", |(num, den)| {
            DragonParams::from_pi_fraction(num, den).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validated_parameters_are_internally_consistent(theta in any_theta()) {
        let p = validate_params(theta).unwrap();
        let reduced = if theta > std::f64::consts::PI {
            2.0 * std::f64::consts::PI - theta
        } else {
            theta
        };
        prop_assert!((p.theta() - reduced).abs() < 1e-12);
        prop_assert!((p.alpha() - (std::f64::consts::PI - reduced) / 2.0).abs() < 1e-12);
        prop_assert!(p.ratio() >= 0.5 && p.ratio() < 1.0);
        prop_assert_eq!(p.reflected(), theta > std::f64::consts::PI);
        if let Some(r) = p.rational() {
            prop_assert!(r.p >= 1);
            prop_assert!(6 * r.p < r.q);
            prop_assert!((p.alpha() - 2.0 * std::f64::consts::PI * r.p as f64 / r.q as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn letters_match_the_materialized_word(k in 0u32..=12, seed in any::<u64>()) {
        let w = AngleWord::materialize(k).unwrap();
        let i = 1 + seed % (1u64 << k);
        prop_assert_eq!(angle_at(k, i).unwrap(), w.coeffs()[(i - 1) as usize]);
    }

    #[test]
    fn substitution_letters_step_by_one(k in 0u32..=11) {
        let w = AngleWord::materialize(k).unwrap();
        let next = w.substitute().unwrap();
        for (idx, &c) in w.coeffs().iter().enumerate() {
            let (a, b) = (next.coeffs()[2 * idx], next.coeffs()[2 * idx + 1]);
            // Each letter expands to its two neighbours, odd positions
            // leading upward, even positions downward.
            if idx % 2 == 0 {
                prop_assert_eq!((a, b), (c + 1, c - 1));
            } else {
                prop_assert_eq!((a, b), (c - 1, c + 1));
            }
        }
    }

    #[test]
    fn histogram_counts_are_binomial_and_total_two_pow_k(k in 0u32..=40) {
        let h = angle_histogram(k).unwrap();
        prop_assert_eq!(h.len(), k as usize + 1);
        let total: u128 = h.iter().map(|&(c, _)| c).sum();
        prop_assert_eq!(total, 1u128 << k);
        // Symmetry C(k, j) = C(k, k-j) and unimodality toward the middle.
        for j in 0..h.len() {
            prop_assert_eq!(h[j].0, h[h.len() - 1 - j].0);
        }
        prop_assert_eq!(h[0].1, k as i64);
        prop_assert_eq!(h[h.len() - 1].1, -(k as i64));
    }

    #[test]
    fn word_increments_telescope_to_the_endpoint(theta in any_theta(), k in 0u32..=12) {
        // Summing the segment steps of the depth-k word must land on (1,0):
        // sum cos(c_i alpha) = (2 cos alpha)^k and sum sin(c_i alpha) = 0.
        let p = validate_params(theta).unwrap();
        let w = AngleWord::materialize(k).unwrap();
        let mut sum_cos = 0.0f64;
        let mut sum_sin = 0.0f64;
        for &c in w.coeffs() {
            sum_cos += (c as f64 * p.alpha()).cos();
            sum_sin += (c as f64 * p.alpha()).sin();
        }
        let rho_k = (1.0 / p.ratio()).powi(k as i32);
        prop_assert!((sum_cos - rho_k).abs() < 1e-9 * rho_k.max(1.0));
        prop_assert!(sum_sin.abs() < 1e-9 * (1u64 << k) as f64);
    }

    #[test]
    fn curve_endpoints_and_vertex_count(theta in any_theta(), depth in 0u32..=10) {
        let p = validate_params(theta).unwrap();
        let c = build_curve(&p, depth).unwrap();
        prop_assert_eq!(c.vertices().len(), (1usize << depth) + 1);
        prop_assert_eq!(c.vertices()[0].x, 0.0);
        prop_assert_eq!(c.vertices()[0].y, 0.0);
        prop_assert_eq!(c.vertices()[c.vertices().len() - 1].x, 1.0);
        prop_assert_eq!(c.vertices()[c.vertices().len() - 1].y, 0.0);
    }

    #[test]
    fn dyadic_vertices_survive_refinement_bitwise(
        theta in any_theta(),
        depth in 1u32..=10,
        extra in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let p = validate_params(theta).unwrap();
        let j = seed % ((1u64 << depth) + 1);
        let a = dyadic_vertex(&p, depth, j).unwrap();
        let b = dyadic_vertex(&p, depth + extra, j << extra).unwrap();
        prop_assert_eq!(a.x, b.x);
        prop_assert_eq!(a.y, b.y);
    }

    #[test]
    fn interpolation_stays_between_neighbouring_breakpoints(
        theta in any_theta(),
        t in 0.0f64..=1.0,
    ) {
        let p = validate_params(theta).unwrap();
        let f = coordinate_function(&p, 6, Axis::Y).unwrap();
        let v = eval_pl(&f, t).unwrap();
        let idx = ((t * 64.0).floor() as usize).min(63);
        let lo = f.values()[idx].min(f.values()[idx + 1]);
        let hi = f.values()[idx].max(f.values()[idx + 1]);
        prop_assert!(v >= lo - 1e-15 && v <= hi + 1e-15);
    }

    #[test]
    fn streaming_and_materialized_counts_agree_exactly(
        params in rational_params(),
        depth in 4u32..=11,
        m_off in 0u32..=4,
    ) {
        let m = depth.saturating_sub(m_off).max(1);
        let f = coordinate_function(&params, depth, Axis::X).unwrap();
        let a = mesh_count(&f, m).unwrap();
        let b = mesh_count_streaming(&params, Axis::X, depth, m).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn counts_do_not_decrease_with_level(params in rational_params(), m in 2u32..=8) {
        // Refining the mesh can only split cells the graph already meets.
        let depth = m + 4;
        let a = mesh_count_streaming(&params, Axis::X, depth, m).unwrap();
        let b = mesh_count_streaming(&params, Axis::X, depth, m + 1).unwrap();
        prop_assert!(b.total >= a.total);
    }

    #[test]
    fn mirrored_angles_count_identically_on_x(theta in 1.1f64..2.9) {
        let up = validate_params(theta).unwrap();
        let down = validate_params(2.0 * std::f64::consts::PI - theta).unwrap();
        let a = mesh_count_streaming(&up, Axis::X, 9, 5).unwrap();
        let b = mesh_count_streaming(&down, Axis::X, 9, 5).unwrap();
        prop_assert_eq!(a.total, b.total);
        // y ranges mirror, so counts differ by at most one cell per column.
        let ay = mesh_count_streaming(&up, Axis::Y, 9, 5).unwrap();
        let by = mesh_count_streaming(&down, Axis::Y, 9, 5).unwrap();
        prop_assert!(ay.total.abs_diff(by.total) <= 1 << 5);
    }

    #[test]
    fn tail_bound_decays_monotonically(theta in any_theta(), n in 1u32..=30) {
        let p = validate_params(theta).unwrap();
        if p.is_degenerate() {
            prop_assert!(tail_bound(&p, n).is_err());
        } else {
            let b1 = tail_bound(&p, n).unwrap();
            let b2 = tail_bound(&p, n + 1).unwrap();
            prop_assert!(b1 > 0.0);
            prop_assert!(b2 < b1);
            prop_assert!((b1 / b2 - 1.0 / p.ratio()).abs() < 1e-9 / p.ratio());
        }
    }

    #[test]
    fn count_sandwich_on_rational_angles(params in rational_params(), k in 4u32..=9) {
        if params.is_degenerate() {
            return Ok(());
        }
        let count = mesh_count_streaming(&params, Axis::X, k + 2, k).unwrap();
        let upper = cover_bound(&params, k).unwrap() + 2 * (1u64 << k);
        prop_assert!(
            count.total <= upper,
            "count {} above cover bound {} at k={} theta={}",
            count.total, upper, k, params.theta()
        );
        let lower = noncover_bound(&params, k, Axis::X).unwrap();
        prop_assert!(
            count.total >= lower,
            "count {} below noncover bound {} at k={} theta={}",
            count.total, lower, k, params.theta()
        );
    }

    #[test]
    fn convergents_are_admissible_and_improving(seed in 0u64..1000) {
        // Spread irrational angles over the admissible range.
        let theta = 1.2 + (seed as f64) * 1.8e-3 + 2.3e-7 * (seed as f64).sin();
        let p = validate_params(theta).unwrap();
        prop_assume!(p.rational().is_none() && !p.is_degenerate());
        let seq = rational_approx_sequence(theta, 5).unwrap();
        let mut last_err = f64::INFINITY;
        let mut last_q = 0;
        for c in &seq {
            let r = c.rational().unwrap();
            prop_assert!(r.p >= 1 && 6 * r.p < r.q);
            prop_assert!(r.q > last_q, "denominators must grow");
            last_q = r.q;
            let err = (c.alpha() - p.alpha()).abs();
            prop_assert!(err < last_err, "approximation must improve");
            last_err = err;
        }
    }

    #[test]
    fn estimates_carry_their_levels(params in rational_params()) {
        let est = estimate_dimension(&params, Axis::Y, 4, 7, 2).unwrap();
        prop_assert_eq!(est.levels.len(), 4);
        for (i, l) in est.levels.iter().enumerate() {
            prop_assert_eq!(l.m, 4 + i as u32);
            prop_assert!(l.depth >= l.m + 2);
            prop_assert!(l.total >= 1);
        }
        prop_assert!(est.r_squared <= 1.0 + 1e-12);
        prop_assert!((est.abs_error - (est.slope - est.theoretical).abs()).abs() < 1e-15);
    }
}
