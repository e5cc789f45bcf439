//! Exercises the C ABI end to end through the exported symbols, the same
//! way a foreign caller would: handles in, status codes and out-params
//! back, frees at the end.

use dragondim_ffi::*;
use std::ffi::CStr;
use std::ptr;

#[test]
fn version_is_a_static_c_string() {
    let v = unsafe { CStr::from_ptr(dragondim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn params_lifecycle_and_accessors() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(dragondim_params_new_pi_fraction(1, 2, &mut p), DRAGONDIM_OK);
        assert!((dragondim_theta(p) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((dragondim_alpha(p) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((dragondim_ratio(p) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(!dragondim_reflected(p));
        assert!(!dragondim_is_degenerate(p));
        let (mut num, mut den) = (0u64, 0u64);
        assert!(dragondim_rational(p, &mut num, &mut den));
        assert_eq!((num, den), (1, 8));
        assert!((dragondim_theoretical_dimension(p) - 1.5).abs() < 1e-12);
        dragondim_params_free(p);

        let mut mirrored = ptr::null_mut();
        assert_eq!(
            dragondim_params_new(4.712388980384690, &mut mirrored),
            DRAGONDIM_OK
        );
        assert!(dragondim_reflected(mirrored));
        dragondim_params_free(mirrored);
    }
}

#[test]
fn invalid_arguments_come_back_as_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            dragondim_params_new(0.5, &mut p),
            DRAGONDIM_ERR_RANGE,
            "angle below the open interval"
        );
        assert_eq!(
            dragondim_params_new_pi_fraction(1, 0, &mut p),
            DRAGONDIM_ERR_RANGE
        );
        assert_eq!(dragondim_params_new(1.7, ptr::null_mut()), DRAGONDIM_ERR_NULL);

        assert_eq!(dragondim_params_new_pi_fraction(1, 1, &mut p), DRAGONDIM_OK);
        assert!(dragondim_is_degenerate(p));
        let mut out = 0.0f64;
        assert_eq!(dragondim_tail_bound(p, 3, &mut out), DRAGONDIM_ERR_DEGENERATE);
        let mut cover = 0u64;
        assert_eq!(dragondim_cover_bound(p, 3, &mut cover), DRAGONDIM_ERR_DEGENERATE);
        dragondim_params_free(p);

        // Irrational angle: the lower bound machinery must refuse.
        assert_eq!(dragondim_params_new(2.0, &mut p), DRAGONDIM_OK);
        let mut lambda = 0.0f64;
        assert_eq!(
            dragondim_lambda_min(p, DRAGONDIM_AXIS_X, &mut lambda),
            DRAGONDIM_ERR_RATIONALITY
        );
        assert_eq!(dragondim_lambda_min(p, 7, &mut lambda), DRAGONDIM_ERR_RANGE);
        dragondim_params_free(p);
    }
}

#[test]
fn curve_vertices_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(dragondim_params_new_pi_fraction(1, 2, &mut p), DRAGONDIM_OK);
        let mut c = ptr::null_mut();
        assert_eq!(dragondim_curve_new(p, 3, &mut c), DRAGONDIM_OK);
        let n = dragondim_curve_len(c);
        assert_eq!(n, 9);
        let xy = std::slice::from_raw_parts(dragondim_curve_vertices(c), 2 * n);
        assert_eq!((xy[0], xy[1]), (0.0, 0.0));
        assert_eq!((xy[2 * n - 2], xy[2 * n - 1]), (1.0, 0.0));
        dragondim_curve_free(c);

        let mut huge = ptr::null_mut();
        assert_eq!(dragondim_curve_new(p, 63, &mut huge), DRAGONDIM_ERR_CAPACITY);
        dragondim_params_free(p);
    }
}

#[test]
fn limit_eval_reports_value_and_bound() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(dragondim_params_new_pi_fraction(1, 2, &mut p), DRAGONDIM_OK);
        let (mut value, mut depth, mut bound) = (0.0f64, 0u32, 0.0f64);
        assert_eq!(
            dragondim_eval_limit(p, DRAGONDIM_AXIS_X, 0.5, 1e-6, &mut value, &mut depth, &mut bound),
            DRAGONDIM_OK
        );
        assert_eq!(value, 0.5, "dyadic points are exact");
        assert_eq!(bound, 0.0);
        assert_eq!(
            dragondim_eval_limit(p, DRAGONDIM_AXIS_Y, 1.5, 1e-6, &mut value, &mut depth, &mut bound),
            DRAGONDIM_ERR_RANGE
        );
        dragondim_params_free(p);
    }
}

#[test]
fn counting_bounds_and_estimate() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(dragondim_params_new_pi_fraction(1, 2, &mut p), DRAGONDIM_OK);

        let mut total = 0u64;
        assert_eq!(
            dragondim_mesh_count(p, DRAGONDIM_AXIS_X, 8, 5, &mut total),
            DRAGONDIM_OK
        );
        let mut cover = 0u64;
        assert_eq!(dragondim_cover_bound(p, 5, &mut cover), DRAGONDIM_OK);
        let mut lower = 0u64;
        assert_eq!(
            dragondim_noncover_bound(p, DRAGONDIM_AXIS_X, 5, &mut lower),
            DRAGONDIM_OK
        );
        assert_eq!(lower, 64);
        assert!(lower <= total && total <= cover + 2 * 32);

        let mut est = DragondimEstimate {
            slope: 0.0,
            intercept: 0.0,
            r_squared: 0.0,
            theoretical: 0.0,
            abs_error: 0.0,
            m_lo: 0,
            m_hi: 0,
        };
        assert_eq!(
            dragondim_estimate_dimension(p, DRAGONDIM_AXIS_X, 5, 9, 2, &mut est),
            DRAGONDIM_OK
        );
        assert_eq!((est.m_lo, est.m_hi), (5, 9));
        assert!((est.theoretical - 1.5).abs() < 1e-12);
        assert!(est.abs_error < 0.08);
        assert!(est.r_squared > 0.99);
        assert_eq!(
            dragondim_estimate_dimension(p, DRAGONDIM_AXIS_X, 9, 5, 2, &mut est),
            DRAGONDIM_ERR_RANGE
        );
        dragondim_params_free(p);
    }
}

#[test]
fn strings_are_produced_and_freed() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(dragondim_params_new_pi_fraction(2, 3, &mut p), DRAGONDIM_OK);

        let mut svg = ptr::null_mut();
        assert_eq!(dragondim_curve_svg(p, 6, &mut svg), DRAGONDIM_OK);
        let text = CStr::from_ptr(svg).to_str().unwrap();
        assert!(text.starts_with("<?xml"));
        assert!(text.contains("<polyline"));
        dragondim_string_free(svg);

        let mut csv = ptr::null_mut();
        assert_eq!(
            dragondim_graph_csv(p, DRAGONDIM_AXIS_Y, 4, &mut csv),
            DRAGONDIM_OK
        );
        let text = CStr::from_ptr(csv).to_str().unwrap();
        assert_eq!(text.lines().next(), Some("t,value"));
        assert_eq!(text.lines().count(), 1 + 17);
        dragondim_string_free(csv);

        dragondim_string_free(ptr::null_mut());
        dragondim_params_free(p);
    }
}
