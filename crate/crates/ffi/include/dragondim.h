#ifndef DRAGONDIM_H
#define DRAGONDIM_H

/* Generated from the dragondim-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DRAGONDIM_OK 0

/**
 * A required pointer argument was null.
 */
#define DRAGONDIM_ERR_NULL -1

/**
 * An angle, index, level range, or tolerance was outside its domain.
 */
#define DRAGONDIM_ERR_RANGE -2

/**
 * The request exceeds a depth or size capacity.
 */
#define DRAGONDIM_ERR_CAPACITY -3

/**
 * The operation is undefined at the degenerate straight-line angle.
 */
#define DRAGONDIM_ERR_DEGENERATE -4

/**
 * The operation needs a rational angle, or was handed one where an
 * irrational angle is required.
 */
#define DRAGONDIM_ERR_RATIONALITY -5

#define DRAGONDIM_AXIS_X 0

#define DRAGONDIM_AXIS_Y 1

/**
 * A materialized polyline stage. Vertices are stored as interleaved
 * x0, y0, x1, y1, ... doubles.
 */
typedef struct DragondimCurve DragondimCurve;

/**
 * Validated angle parameters. Create with [`dragondim_params_new`] or
 * [`dragondim_params_new_pi_fraction`], release with
 * [`dragondim_params_free`].
 */
typedef struct DragondimParams DragondimParams;

/**
 * Regression summary returned by [`dragondim_estimate_dimension`].
 */
typedef struct DragondimEstimate {
  double slope;
  double intercept;
  double r_squared;
  double theoretical;
  double abs_error;
  uint32_t m_lo;
  uint32_t m_hi;
} DragondimEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *dragondim_version(void);

/**
 * Validates an opening angle in radians and returns a new handle.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
int32_t dragondim_params_new(double theta, struct DragondimParams **out);

/**
 * Builds parameters for theta = num*pi/den with exact rational
 * bookkeeping.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
int32_t dragondim_params_new_pi_fraction(uint64_t num, uint64_t den, struct DragondimParams **out);

/**
 * Releases a parameter handle. Passing null is a no-op.
 *
 * # Safety
 * `p` must have come from a `dragondim_params_new*` call and must not be
 * used afterwards.
 */
void dragondim_params_free(struct DragondimParams *p);

/**
 * Opening angle in radians, after mirror reduction.
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
double dragondim_theta(const struct DragondimParams *p);

/**
 * Half-angle alpha = (pi - theta) / 2.
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
double dragondim_alpha(const struct DragondimParams *p);

/**
 * Per-step contraction ratio 1 / (2 cos alpha).
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
double dragondim_ratio(const struct DragondimParams *p);

/**
 * True when the angle was reduced from the mirror half of the range.
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
bool dragondim_reflected(const struct DragondimParams *p);

/**
 * True at the straight-line angle theta = pi.
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
bool dragondim_is_degenerate(const struct DragondimParams *p);

/**
 * Writes the reduced fraction alpha / (2 pi) = p/q and returns true when
 * the angle is rational; leaves the outputs untouched otherwise.
 *
 * # Safety
 * `p` must be a live parameter handle; `p_out` and `q_out` must be
 * writable.
 */
bool dragondim_rational(const struct DragondimParams *p, uint64_t *p_out, uint64_t *q_out);

/**
 * Closed-form box-counting dimension 1 - log2(cos alpha).
 *
 * # Safety
 * `p` must be a live parameter handle.
 */
double dragondim_theoretical_dimension(const struct DragondimParams *p);

/**
 * Uniform bound on the distance from stage n to the limit function.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_tail_bound(const struct DragondimParams *p, uint32_t n, double *out);

/**
 * Evaluates the limit coordinate function at t within accuracy eps,
 * reporting the stage depth used and a certified error bound.
 *
 * # Safety
 * `p` must be a live parameter handle; the three outputs must be writable.
 */
int32_t dragondim_eval_limit(const struct DragondimParams *p,
                             int32_t axis,
                             double t,
                             double eps,
                             double *value,
                             uint32_t *depth,
                             double *error_bound);

/**
 * Materializes the depth-n polyline stage.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_curve_new(const struct DragondimParams *p,
                            uint32_t depth,
                            struct DragondimCurve **out);

/**
 * Releases a curve handle. Passing null is a no-op.
 *
 * # Safety
 * `c` must have come from [`dragondim_curve_new`] and must not be used
 * afterwards.
 */
void dragondim_curve_free(struct DragondimCurve *c);

/**
 * Number of vertices (2^depth + 1).
 *
 * # Safety
 * `c` must be a live curve handle.
 */
size_t dragondim_curve_len(const struct DragondimCurve *c);

/**
 * Pointer to interleaved x, y vertex doubles, valid while the handle
 * lives; the array holds 2 * dragondim_curve_len(c) values.
 *
 * # Safety
 * `c` must be a live curve handle.
 */
const double *dragondim_curve_vertices(const struct DragondimCurve *c);

/**
 * Counts mesh cells of side 2^-m met by one coordinate graph of the
 * depth-n stage.
 *
 * # Safety
 * `p` must be a live parameter handle; `total` must be writable.
 */
int32_t dragondim_mesh_count(const struct DragondimParams *p,
                             int32_t axis,
                             uint32_t depth,
                             uint32_t m,
                             uint64_t *total);

/**
 * Regresses log2 of the mesh counts over levels m_lo..=m_hi and fills the
 * summary struct.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must point to a writable
 * `DragondimEstimate`.
 */
int32_t dragondim_estimate_dimension(const struct DragondimParams *p,
                                     int32_t axis,
                                     uint32_t m_lo,
                                     uint32_t m_hi,
                                     uint32_t depth_margin,
                                     struct DragondimEstimate *out);

/**
 * Analytic upper bound on the depth-k mesh count.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_cover_bound(const struct DragondimParams *p, uint32_t k, uint64_t *out);

/**
 * Analytic lower bound on the depth-k mesh count for one axis; requires a
 * rational angle.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_noncover_bound(const struct DragondimParams *p,
                                 int32_t axis,
                                 uint32_t k,
                                 uint64_t *out);

/**
 * Smallest nonzero direction component along one axis; requires a
 * rational angle.
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_lambda_min(const struct DragondimParams *p, int32_t axis, double *out);

/**
 * Renders the depth-n curve as an SVG document with default styling. The
 * result must be released with [`dragondim_string_free`].
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_curve_svg(const struct DragondimParams *p, uint32_t depth, char **out);

/**
 * Emits one coordinate graph of the depth-n stage as t,value CSV. The
 * result must be released with [`dragondim_string_free`].
 *
 * # Safety
 * `p` must be a live parameter handle; `out` must be writable.
 */
int32_t dragondim_graph_csv(const struct DragondimParams *p,
                            int32_t axis,
                            uint32_t depth,
                            char **out);

/**
 * Releases a string produced by this library. Passing null is a no-op.
 *
 * # Safety
 * `s` must have come from a dragondim function returning `char **` and
 * must not be used afterwards.
 */
void dragondim_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DRAGONDIM_H */
