//! C ABI for the dragondim library: opaque handles, integer status codes,
//! and out-parameters. Every `*_new` has a matching `*_free`, and strings
//! returned through `char **` must be released with
//! [`dragondim_string_free`]. The header `include/dragondim.h` is generated
//! from this file at build time.

use dragondim::{
    build_curve, cover_bound, emit_curve_svg, emit_graph_csv, estimate_dimension, eval_limit,
    lambda_min, mesh_count_streaming, noncover_bound, tail_bound, validate_params, Axis,
    DragonError, DragonParams, RenderSpec,
};
use std::ffi::{c_char, CString};

pub const DRAGONDIM_OK: i32 = 0;
/// A required pointer argument was null.
pub const DRAGONDIM_ERR_NULL: i32 = -1;
/// An angle, index, level range, or tolerance was outside its domain.
pub const DRAGONDIM_ERR_RANGE: i32 = -2;
/// The request exceeds a depth or size capacity.
pub const DRAGONDIM_ERR_CAPACITY: i32 = -3;
/// The operation is undefined at the degenerate straight-line angle.
pub const DRAGONDIM_ERR_DEGENERATE: i32 = -4;
/// The operation needs a rational angle, or was handed one where an
/// irrational angle is required.
pub const DRAGONDIM_ERR_RATIONALITY: i32 = -5;

pub const DRAGONDIM_AXIS_X: i32 = 0;
pub const DRAGONDIM_AXIS_Y: i32 = 1;

fn code(err: DragonError) -> i32 {
    match err {
        DragonError::OutOfRange { .. }
        | DragonError::DomainError(_)
        | DragonError::IndexOutOfRange { .. }
        | DragonError::DepthTooShallow { .. }
        | DragonError::InvalidLevelRange { .. }
        | DragonError::InvalidEps(_) => DRAGONDIM_ERR_RANGE,
        DragonError::CapacityExceeded { .. } | DragonError::EvalDepthExceeded { .. } => {
            DRAGONDIM_ERR_CAPACITY
        }
        DragonError::Degenerate => DRAGONDIM_ERR_DEGENERATE,
        DragonError::IrrationalAngle | DragonError::AlreadyRational { .. }
        | DragonError::EmptySet { .. } => DRAGONDIM_ERR_RATIONALITY,
    }
}

fn axis_from(v: i32) -> Option<Axis> {
    match v {
        DRAGONDIM_AXIS_X => Some(Axis::X),
        DRAGONDIM_AXIS_Y => Some(Axis::Y),
        _ => None,
    }
}

/// Validated angle parameters. Create with [`dragondim_params_new`] or
/// [`dragondim_params_new_pi_fraction`], release with
/// [`dragondim_params_free`].
pub struct DragondimParams(DragonParams);

/// A materialized polyline stage. Vertices are stored as interleaved
/// x0, y0, x1, y1, ... doubles.
pub struct DragondimCurve {
    xy: Vec<f64>,
}

/// Regression summary returned by [`dragondim_estimate_dimension`].
#[repr(C)]
pub struct DragondimEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub theoretical: f64,
    pub abs_error: f64,
    pub m_lo: u32,
    pub m_hi: u32,
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn dragondim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Validates an opening angle in radians and returns a new handle.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dragondim_params_new(theta: f64, out: *mut *mut DragondimParams) -> i32 {
    if out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match validate_params(theta) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(DragondimParams(p)));
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Builds parameters for theta = num*pi/den with exact rational
/// bookkeeping.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dragondim_params_new_pi_fraction(
    num: u64,
    den: u64,
    out: *mut *mut DragondimParams,
) -> i32 {
    if out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match DragonParams::from_pi_fraction(num, den) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(DragondimParams(p)));
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Releases a parameter handle. Passing null is a no-op.
///
/// # Safety
/// `p` must have come from a `dragondim_params_new*` call and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dragondim_params_free(p: *mut DragondimParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Opening angle in radians, after mirror reduction.
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_theta(p: *const DragondimParams) -> f64 {
    (*p).0.theta()
}

/// Half-angle alpha = (pi - theta) / 2.
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_alpha(p: *const DragondimParams) -> f64 {
    (*p).0.alpha()
}

/// Per-step contraction ratio 1 / (2 cos alpha).
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_ratio(p: *const DragondimParams) -> f64 {
    (*p).0.ratio()
}

/// True when the angle was reduced from the mirror half of the range.
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_reflected(p: *const DragondimParams) -> bool {
    (*p).0.reflected()
}

/// True at the straight-line angle theta = pi.
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_is_degenerate(p: *const DragondimParams) -> bool {
    (*p).0.is_degenerate()
}

/// Writes the reduced fraction alpha / (2 pi) = p/q and returns true when
/// the angle is rational; leaves the outputs untouched otherwise.
///
/// # Safety
/// `p` must be a live parameter handle; `p_out` and `q_out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_rational(
    p: *const DragondimParams,
    p_out: *mut u64,
    q_out: *mut u64,
) -> bool {
    match (*p).0.rational() {
        Some(r) if !p_out.is_null() && !q_out.is_null() => {
            *p_out = r.p;
            *q_out = r.q;
            true
        }
        _ => false,
    }
}

/// Closed-form box-counting dimension 1 - log2(cos alpha).
///
/// # Safety
/// `p` must be a live parameter handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_theoretical_dimension(p: *const DragondimParams) -> f64 {
    (*p).0.theoretical_dimension()
}

/// Uniform bound on the distance from stage n to the limit function.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_tail_bound(
    p: *const DragondimParams,
    n: u32,
    out: *mut f64,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match tail_bound(&(*p).0, n) {
        Ok(v) => {
            *out = v;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Evaluates the limit coordinate function at t within accuracy eps,
/// reporting the stage depth used and a certified error bound.
///
/// # Safety
/// `p` must be a live parameter handle; the three outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_eval_limit(
    p: *const DragondimParams,
    axis: i32,
    t: f64,
    eps: f64,
    value: *mut f64,
    depth: *mut u32,
    error_bound: *mut f64,
) -> i32 {
    if p.is_null() || value.is_null() || depth.is_null() || error_bound.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match eval_limit(&(*p).0, axis, t, eps) {
        Ok(r) => {
            *value = r.value;
            *depth = r.depth;
            *error_bound = r.error_bound;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Materializes the depth-n polyline stage.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_curve_new(
    p: *const DragondimParams,
    depth: u32,
    out: *mut *mut DragondimCurve,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match build_curve(&(*p).0, depth) {
        Ok(c) => {
            let mut xy = Vec::with_capacity(c.vertices().len() * 2);
            for v in c.vertices() {
                xy.push(v.x);
                xy.push(v.y);
            }
            *out = Box::into_raw(Box::new(DragondimCurve { xy }));
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Releases a curve handle. Passing null is a no-op.
///
/// # Safety
/// `c` must have come from [`dragondim_curve_new`] and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn dragondim_curve_free(c: *mut DragondimCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of vertices (2^depth + 1).
///
/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_curve_len(c: *const DragondimCurve) -> usize {
    (*c).xy.len() / 2
}

/// Pointer to interleaved x, y vertex doubles, valid while the handle
/// lives; the array holds 2 * dragondim_curve_len(c) values.
///
/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn dragondim_curve_vertices(c: *const DragondimCurve) -> *const f64 {
    (*c).xy.as_ptr()
}

/// Counts mesh cells of side 2^-m met by one coordinate graph of the
/// depth-n stage.
///
/// # Safety
/// `p` must be a live parameter handle; `total` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_mesh_count(
    p: *const DragondimParams,
    axis: i32,
    depth: u32,
    m: u32,
    total: *mut u64,
) -> i32 {
    if p.is_null() || total.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match mesh_count_streaming(&(*p).0, axis, depth, m) {
        Ok(c) => {
            *total = c.total;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Regresses log2 of the mesh counts over levels m_lo..=m_hi and fills the
/// summary struct.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must point to a writable
/// `DragondimEstimate`.
#[no_mangle]
pub unsafe extern "C" fn dragondim_estimate_dimension(
    p: *const DragondimParams,
    axis: i32,
    m_lo: u32,
    m_hi: u32,
    depth_margin: u32,
    out: *mut DragondimEstimate,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match estimate_dimension(&(*p).0, axis, m_lo, m_hi, depth_margin) {
        Ok(est) => {
            *out = DragondimEstimate {
                slope: est.slope,
                intercept: est.intercept,
                r_squared: est.r_squared,
                theoretical: est.theoretical,
                abs_error: est.abs_error,
                m_lo: est.m_lo,
                m_hi: est.m_hi,
            };
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Analytic upper bound on the depth-k mesh count.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_cover_bound(
    p: *const DragondimParams,
    k: u32,
    out: *mut u64,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match cover_bound(&(*p).0, k) {
        Ok(v) => {
            *out = v;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Analytic lower bound on the depth-k mesh count for one axis; requires a
/// rational angle.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_noncover_bound(
    p: *const DragondimParams,
    axis: i32,
    k: u32,
    out: *mut u64,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match noncover_bound(&(*p).0, k, axis) {
        Ok(v) => {
            *out = v;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

/// Smallest nonzero direction component along one axis; requires a
/// rational angle.
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_lambda_min(
    p: *const DragondimParams,
    axis: i32,
    out: *mut f64,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match lambda_min(&(*p).0, axis) {
        Ok(v) => {
            *out = v;
            DRAGONDIM_OK
        }
        Err(e) => code(e),
    }
}

fn string_out(s: String, out: *mut *mut c_char) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DRAGONDIM_OK
        }
        Err(_) => DRAGONDIM_ERR_RANGE,
    }
}

/// Renders the depth-n curve as an SVG document with default styling. The
/// result must be released with [`dragondim_string_free`].
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_curve_svg(
    p: *const DragondimParams,
    depth: u32,
    out: *mut *mut c_char,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    match build_curve(&(*p).0, depth) {
        Ok(c) => string_out(emit_curve_svg(&c, &RenderSpec::default()), out),
        Err(e) => code(e),
    }
}

/// Emits one coordinate graph of the depth-n stage as t,value CSV. The
/// result must be released with [`dragondim_string_free`].
///
/// # Safety
/// `p` must be a live parameter handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dragondim_graph_csv(
    p: *const DragondimParams,
    axis: i32,
    depth: u32,
    out: *mut *mut c_char,
) -> i32 {
    if p.is_null() || out.is_null() {
        return DRAGONDIM_ERR_NULL;
    }
    let Some(axis) = axis_from(axis) else {
        return DRAGONDIM_ERR_RANGE;
    };
    match dragondim::coordinate_function(&(*p).0, depth, axis) {
        Ok(f) => string_out(emit_graph_csv(&f), out),
        Err(e) => code(e),
    }
}

/// Releases a string produced by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must have come from a dragondim function returning `char **` and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dragondim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
