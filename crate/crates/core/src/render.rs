//! Deterministic SVG and CSV emitters for curves and coordinate graphs.
//!
//! Output is plain text assembled with fixed float precision, so the same
//! inputs always produce byte-identical artifacts.

use crate::coordfn::PiecewiseLinear;
use crate::curve::{build_curve, Point, PolylineCurve};

/// Viewport and stroke settings for SVG output.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    pub stroke_width: f64,
    /// Draw the previous stage in black under the current stage in red.
    pub highlight_refinement: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 600,
            margin: 20.0,
            stroke_width: 1.0,
            highlight_refinement: false,
        }
    }
}

/// Uniform world-to-pixel map over the joint bounding box of all point
/// sets, preserving aspect ratio, with the y axis flipped to SVG screen
/// coordinates and the drawing centered in the viewport.
struct Viewport {
    scale: f64,
    x0: f64,
    y0: f64,
    off_x: f64,
    off_y: f64,
    height: f64,
}

impl Viewport {
    fn fit(sets: &[&[Point]], spec: &RenderSpec) -> Viewport {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for set in sets {
            for p in *set {
                min_x = min_x.min(p.x);
                max_x = max_x.max(p.x);
                min_y = min_y.min(p.y);
                max_y = max_y.max(p.y);
            }
        }
        let bw = max_x - min_x;
        let bh = max_y - min_y;
        let avail_w = spec.width as f64 - 2.0 * spec.margin;
        let avail_h = spec.height as f64 - 2.0 * spec.margin;
        let scale = match (bw > 0.0, bh > 0.0) {
            (true, true) => (avail_w / bw).min(avail_h / bh),
            (true, false) => avail_w / bw,
            (false, true) => avail_h / bh,
            (false, false) => 1.0,
        };
        Viewport {
            scale,
            x0: min_x,
            y0: min_y,
            off_x: spec.margin + (avail_w - bw * scale) / 2.0,
            off_y: spec.margin + (avail_h - bh * scale) / 2.0,
            height: spec.height as f64,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let px = self.off_x + (p.x - self.x0) * self.scale;
        let py = self.height - (self.off_y + (p.y - self.y0) * self.scale);
        (px, py)
    }
}

fn points_attr(vp: &Viewport, pts: &[Point]) -> String {
    let mut s = String::with_capacity(pts.len() * 16);
    for (i, &p) in pts.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let (px, py) = vp.map(p);
        s.push_str(&format!("{px:.4},{py:.4}"));
    }
    s
}

fn svg_open(spec: &RenderSpec) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = spec.width,
        h = spec.height
    )
}

fn polyline(points: &str, stroke: &str, width: f64) -> String {
    format!(
        "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" points=\"{points}\"/>\n"
    )
}

/// Renders a curve stage as an SVG polyline. With highlighting on, the
/// previous stage is drawn in black beneath the current stage in red.
pub fn emit_curve_svg(curve: &PolylineCurve, spec: &RenderSpec) -> String {
    let prev = if spec.highlight_refinement && curve.depth() > 0 {
        // Rebuilding one depth less always fits the cap that admitted the
        // current stage.
        Some(build_curve(curve.params(), curve.depth() - 1).expect("shallower stage"))
    } else {
        None
    };
    let mut sets: Vec<&[Point]> = vec![curve.vertices()];
    if let Some(p) = &prev {
        sets.push(p.vertices());
    }
    let vp = Viewport::fit(&sets, spec);
    let mut out = svg_open(spec);
    if let Some(p) = &prev {
        out.push_str(&polyline(
            &points_attr(&vp, p.vertices()),
            "#000000",
            spec.stroke_width,
        ));
        out.push_str(&polyline(
            &points_attr(&vp, curve.vertices()),
            "#d62728",
            spec.stroke_width,
        ));
    } else {
        out.push_str(&polyline(
            &points_attr(&vp, curve.vertices()),
            "#000000",
            spec.stroke_width,
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a coordinate graph (t on the horizontal axis, value on the
/// vertical) as an SVG polyline.
pub fn emit_graph_svg(f: &PiecewiseLinear, spec: &RenderSpec) -> String {
    let n = f.values().len();
    let pts: Vec<Point> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, &v)| Point::new(j as f64 / (n - 1) as f64, v))
        .collect();
    let vp = Viewport::fit(&[&pts], spec);
    let mut out = svg_open(spec);
    out.push_str(&polyline(
        &points_attr(&vp, &pts),
        "#000000",
        spec.stroke_width,
    ));
    out.push_str("</svg>\n");
    out
}

/// Breakpoints of a coordinate graph as CSV with a `t,value` header,
/// 12 decimal places.
pub fn emit_graph_csv(f: &PiecewiseLinear) -> String {
    let n = f.values().len();
    let mut out = String::with_capacity(n * 32);
    out.push_str("t,value\n");
    for (j, &v) in f.values().iter().enumerate() {
        let t = j as f64 / (n - 1) as f64;
        out.push_str(&format!("{t:.12},{v:.12}\n"));
    }
    out
}

/// Vertices of a curve stage as CSV with an `x,y` header, 12 decimal
/// places.
pub fn emit_vertices_csv(curve: &PolylineCurve) -> String {
    let mut out = String::with_capacity(curve.vertices().len() * 32);
    out.push_str("x,y\n");
    for v in curve.vertices() {
        out.push_str(&format!("{:.12},{:.12}\n", v.x, v.y));
    }
    out
}
