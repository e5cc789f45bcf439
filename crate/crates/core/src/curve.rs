//! Polyline stages of the curve and direct access to single vertices.
//!
//! The depth-k stage is a polyline from (0,0) to (1,0) with 2^k segments of
//! equal length L_k = (2*cos(alpha))^(-k). Stage k+1 is built from stage k
//! by keeping every vertex (vertex 2j of the new stage is bit-for-bit
//! vertex j of the old one) and inserting one new vertex per segment at
//! old_vertex + L_{k+1} * (cos(c*alpha), sin(c*alpha)), where c is the
//! letter of the covering depth-(k+1) position. Dyadic rationals therefore
//! keep their coordinates under refinement, and a single vertex at any
//! depth can be rebuilt by walking its dyadic ancestry.

use crate::angles::{transition_count, DragonParams};
use crate::error::{DragonError, Result};
use crate::limits;

/// Plane point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Per-depth increment table: entry t holds the segment step for a letter
/// with t sign transitions, premultiplied by the depth's segment length.
/// The letter is depth - 2t, so the table has depth+1 entries.
pub(crate) struct SegmentTrig {
    pub fx: Vec<f64>,
    pub fy: Vec<f64>,
}

impl SegmentTrig {
    pub fn new(params: &DragonParams, depth: u32) -> Self {
        let scale = params.length_scale(depth);
        let n = depth as usize + 1;
        let mut fx = Vec::with_capacity(n);
        let mut fy = Vec::with_capacity(n);
        for t in 0..n {
            let c = depth as i64 - 2 * t as i64;
            fx.push(params.cos_coeff(c) * scale);
            fy.push(params.sin_coeff(c) * scale);
        }
        SegmentTrig { fx, fy }
    }
}

/// Step vector of segment i (1-based) at the given depth: length times the
/// unit heading of that segment's letter. Computed exactly as the entries
/// of [`SegmentTrig`] so both paths agree bit for bit.
pub(crate) fn letter_increment(params: &DragonParams, depth: u32, i: u64) -> (f64, f64) {
    let scale = params.length_scale(depth);
    let t = transition_count(depth, i);
    let c = depth as i64 - 2 * t as i64;
    (params.cos_coeff(c) * scale, params.sin_coeff(c) * scale)
}

/// Materialized polyline stage.
#[derive(Debug, Clone)]
pub struct PolylineCurve {
    params: DragonParams,
    depth: u32,
    vertices: Vec<Point>,
}

impl PolylineCurve {
    pub fn params(&self) -> &DragonParams {
        &self.params
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// 2^depth + 1 vertices from (0,0) to (1,0).
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }
}

/// Builds the depth-k stage by k in-place refinements of the unit segment.
/// Capacity-guarded: see [`limits::max_depth`].
pub fn build_curve(params: &DragonParams, depth: u32) -> Result<PolylineCurve> {
    limits::check_depth(depth)?;
    let mut vertices = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
    for d in 1..=depth {
        let trig = SegmentTrig::new(params, d);
        let old = &vertices;
        let mut new = Vec::with_capacity(old.len() * 2 - 1);
        for (j, &v) in old.iter().enumerate() {
            new.push(v);
            if j + 1 < old.len() {
                let i = 2 * j as u64 + 1;
                let t = transition_count(d, i) as usize;
                new.push(Point::new(v.x + trig.fx[t], v.y + trig.fy[t]));
            }
        }
        vertices = new;
    }
    Ok(PolylineCurve {
        params: params.clone(),
        depth,
        vertices,
    })
}

/// Vertex j of the depth-k stage in O(k) time and O(1) space, bit-for-bit
/// equal to `build_curve(params, k).vertices()[j]`: even indices defer to
/// the parent depth, odd indices add one letter increment to their left
/// neighbour, exactly as the refinement does.
pub fn dyadic_vertex(params: &DragonParams, depth: u32, j: u64) -> Result<Point> {
    if depth > limits::ABSOLUTE_MAX_DEPTH {
        return Err(DragonError::CapacityExceeded {
            requested: depth,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    if j > (1u64 << depth) {
        return Err(DragonError::IndexOutOfRange { depth, index: j });
    }
    fn go(params: &DragonParams, d: u32, j: u64) -> (f64, f64) {
        if d == 0 {
            return (j as f64, 0.0);
        }
        if j % 2 == 0 {
            go(params, d - 1, j / 2)
        } else {
            let (x, y) = go(params, d - 1, (j - 1) / 2);
            let (dx, dy) = letter_increment(params, d, j);
            (x + dx, y + dy)
        }
    }
    let (x, y) = go(params, depth, j);
    Ok(Point::new(x, y))
}
