//! Dragon curves with an adjustable opening angle, the coordinate
//! functions of their arc-length parameterization, and box-counting
//! dimension estimation for the graphs of those functions.
//!
//! A family member is selected by an angle theta in (pi/3, 5*pi/3): each
//! refinement replaces every segment by two segments meeting at angle
//! theta, alternating the side on which the corner sticks out. With
//! alpha = (pi - theta)/2 the polyline stages contract by 1/(2*cos(alpha))
//! per depth, converge uniformly, and the coordinate graphs of the limit
//! have box-counting dimension 1 - log2(cos(alpha)).
//!
//! The crate exposes the letter combinatorics driving the construction
//! ([`AngleWord`], [`angle_at`], [`angle_histogram`]), polyline stages and
//! single vertices ([`build_curve`], [`dyadic_vertex`]), coordinate
//! functions with certified limit evaluation ([`coordinate_function`],
//! [`eval_limit`], [`tail_bound`]), mesh counting and dimension estimation
//! ([`mesh_count`], [`estimate_dimension`]) together with closed-form
//! cover/noncover bounds, and deterministic SVG/CSV renderers.

mod angles;
mod boxdim;
mod coordfn;
mod curve;
mod error;
mod limits;
mod render;
mod trig;

pub use angles::{
    angle_at, angle_histogram, coeff_residue_histogram, validate_params, AngleWord, DragonParams,
    Rational,
};
pub use boxdim::{
    cover_bound, estimate_dimension, lambda_min, mesh_count, mesh_count_streaming, noncover_bound,
    theoretical_dimension, DimensionEstimate, LevelCount, MeshCount,
};
pub use coordfn::{
    coordinate_function, eval_limit, eval_pl, rational_approx_sequence, tail_bound, Axis,
    LimitEval, PiecewiseLinear,
};
pub use curve::{build_curve, dyadic_vertex, Point, PolylineCurve};
pub use error::{DragonError, Result};
pub use limits::{max_depth, ABSOLUTE_MAX_DEPTH, DEFAULT_MAX_DEPTH};
pub use render::{emit_curve_svg, emit_graph_csv, emit_graph_svg, emit_vertices_csv, RenderSpec};
