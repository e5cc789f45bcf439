//! Box counting on the coordinate-function graphs.
//!
//! The graph of a depth-n stage is counted against the dyadic mesh of side
//! 2^-m: for each of the 2^m columns, the number of mesh cells met by the
//! graph over that column is the number of cells spanned by the column's
//! value range, with values on a cell boundary attributed to the cell
//! below. Summing columns gives N_m; the box-counting dimension is the
//! slope of log2(N_m) against m, and for these curves it equals
//! 1 - log2(cos(alpha)).
//!
//! Counting supports two routes with identical cell arithmetic: a
//! materialized stage (exact breakpoint values by refinement) and a
//! streaming pass that walks the 2^n letters with a compensated
//! accumulator, never holding the stage in memory.

use crate::angles::DragonParams;
use crate::coordfn::{certified_depth, Axis, PiecewiseLinear};
use crate::curve::SegmentTrig;
use crate::error::{DragonError, Result};
use crate::limits;
use crate::trig::{cos_residue_is_zero, sin_residue_is_zero};

/// Mesh-cell count of one graph at scale 2^-m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshCount {
    pub m: u32,
    pub total: u64,
    pub per_column: Vec<u64>,
}

/// Index of the mesh cell a value belongs to, with boundary values
/// attributed to the cell below. The scaling by 2^m is exact in f64.
#[inline]
fn cell_below(v: f64, m: u32) -> i64 {
    let s = v * (1u64 << m) as f64;
    let f = s.floor();
    if s == f {
        f as i64 - 1
    } else {
        f as i64
    }
}

#[inline]
fn cells_spanned(min: f64, max: f64, m: u32) -> u64 {
    (cell_below(max, m) - cell_below(min, m) + 1) as u64
}

/// Counts mesh cells met by the graph of a materialized stage. The stage
/// depth must be at least m so every column holds whole segments.
pub fn mesh_count(f: &PiecewiseLinear, m: u32) -> Result<MeshCount> {
    if f.depth() < m {
        return Err(DragonError::DepthTooShallow {
            depth: f.depth(),
            level: m,
        });
    }
    let per_col_len = 1u64 << (f.depth() - m);
    let mut per_column = Vec::with_capacity(1usize << m);
    let mut total = 0u64;
    let values = f.values();
    for c in 0..(1usize << m) {
        let lo = c * per_col_len as usize;
        let hi = lo + per_col_len as usize;
        // Both column endpoints belong to the column.
        let mut vmin = values[lo];
        let mut vmax = values[lo];
        for &v in &values[lo + 1..=hi] {
            vmin = vmin.min(v);
            vmax = vmax.max(v);
        }
        let n = cells_spanned(vmin, vmax, m);
        per_column.push(n);
        total += n;
    }
    Ok(MeshCount {
        m,
        total,
        per_column,
    })
}

/// Column min/max tracker fed by an in-order walk of the refinement tree.
struct StreamState {
    depth: u32,
    shift: u32,
    cols: usize,
    /// tables[d - 1] holds the axis increments for depth d.
    tables: Vec<Vec<f64>>,
    col_min: Vec<f64>,
    col_max: Vec<f64>,
}

impl StreamState {
    /// Emits every depth-`depth` breakpoint inside segment i of depth d,
    /// except the segment's right endpoint, building values by the exact
    /// expressions the materialized refinement uses.
    fn walk(&mut self, d: u32, i: u64, va: f64) {
        if d == self.depth {
            self.emit(i, va);
            return;
        }
        let t = crate::angles::transition_count(d + 1, 2 * i + 1) as usize;
        let vm = va + self.tables[d as usize][t];
        self.walk(d + 1, 2 * i, va);
        self.walk(d + 1, 2 * i + 1, vm);
    }

    /// Records value v at breakpoint index i: the column containing i and,
    /// when i sits on a column boundary, also the column ending there.
    fn emit(&mut self, i: u64, v: f64) {
        let col = (i >> self.shift) as usize;
        if col < self.cols {
            self.col_min[col] = self.col_min[col].min(v);
            self.col_max[col] = self.col_max[col].max(v);
        }
        let wmask = (1u64 << self.shift) - 1;
        if i > 0 && (i & wmask) == 0 {
            let prev = col - 1;
            self.col_min[prev] = self.col_min[prev].min(v);
            self.col_max[prev] = self.col_max[prev].max(v);
        }
    }
}

/// Streaming mesh count at stage depth n >= m: walks the refinement tree
/// depth-first, producing breakpoint values bit-for-bit equal to the
/// materialized stage while keeping only one min/max pair per column.
/// Memory is O(2^m) plus O(n^2) increment tables, regardless of n.
pub fn mesh_count_streaming(
    params: &DragonParams,
    axis: Axis,
    depth: u32,
    m: u32,
) -> Result<MeshCount> {
    if depth < m {
        return Err(DragonError::DepthTooShallow { depth, level: m });
    }
    if depth > limits::ABSOLUTE_MAX_DEPTH {
        return Err(DragonError::CapacityExceeded {
            requested: depth,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    let tables: Vec<Vec<f64>> = (1..=depth)
        .map(|d| {
            let trig = SegmentTrig::new(params, d);
            match axis {
                Axis::X => trig.fx,
                Axis::Y => trig.fy,
            }
        })
        .collect();
    let cols = 1usize << m;
    let mut state = StreamState {
        depth,
        shift: depth - m,
        cols,
        tables,
        col_min: vec![f64::INFINITY; cols],
        col_max: vec![f64::NEG_INFINITY; cols],
    };
    state.walk(0, 0, 0.0);
    let right_endpoint = match axis {
        Axis::X => 1.0,
        Axis::Y => 0.0,
    };
    state.emit(1u64 << depth, right_endpoint);
    let mut per_column = Vec::with_capacity(cols);
    let mut total = 0u64;
    for c in 0..cols {
        let n = cells_spanned(state.col_min[c], state.col_max[c], m);
        per_column.push(n);
        total += n;
    }
    Ok(MeshCount {
        m,
        total,
        per_column,
    })
}

/// Closed-form dimension of the limit graph, 1 - log2(cos(alpha)).
pub fn theoretical_dimension(params: &DragonParams) -> f64 {
    params.theoretical_dimension()
}

/// One regression level: mesh exponent, the stage depth that was counted,
/// and the resulting cell count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelCount {
    pub m: u32,
    pub depth: u32,
    pub total: u64,
}

/// Least-squares fit of log2(N_m) against m over a level range.
#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub theta: f64,
    pub alpha: f64,
    pub axis: Axis,
    pub m_lo: u32,
    pub m_hi: u32,
    pub depth_margin: u32,
    pub levels: Vec<LevelCount>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub theoretical: f64,
    pub abs_error: f64,
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let fit = slope * x + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - my) * (y - my);
    }
    let r_squared = if ss_tot <= 1e-30 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    (slope, intercept, r_squared)
}

/// Stage depth used to count level m: deep enough for the tail bound to
/// certify the mesh scale when that is affordable, and at least
/// m + depth_margin, but never past the evaluation cap. Counts at capped
/// depth remain valid cell counts of that stage; the certified depth for
/// sharp angles grows far beyond what 2^n letter walks can reach.
fn effective_depth(params: &DragonParams, m: u32, depth_margin: u32) -> u32 {
    let cap = limits::max_depth();
    let certified = if params.is_degenerate() {
        0
    } else {
        certified_depth(params, (0.5f64).powi(m as i32)).unwrap_or(cap)
    };
    (m + depth_margin).max(certified.min(cap)).min(cap)
}

/// Estimates the box-counting dimension of one coordinate graph from mesh
/// counts at levels m_lo..=m_hi, regressing log2(N_m) on m.
pub fn estimate_dimension(
    params: &DragonParams,
    axis: Axis,
    m_lo: u32,
    m_hi: u32,
    depth_margin: u32,
) -> Result<DimensionEstimate> {
    if m_lo < 2 || m_lo >= m_hi {
        return Err(DragonError::InvalidLevelRange { m_lo, m_hi });
    }
    if m_hi > limits::max_depth() {
        return Err(DragonError::CapacityExceeded {
            requested: m_hi,
            cap: limits::max_depth(),
        });
    }
    let mut levels = Vec::with_capacity((m_hi - m_lo + 1) as usize);
    for m in m_lo..=m_hi {
        let depth = effective_depth(params, m, depth_margin);
        let count = mesh_count_streaming(params, axis, depth, m)?;
        levels.push(LevelCount {
            m,
            depth,
            total: count.total,
        });
    }
    let xs: Vec<f64> = levels.iter().map(|l| l.m as f64).collect();
    let ys: Vec<f64> = levels.iter().map(|l| (l.total as f64).log2()).collect();
    let (slope, intercept, r_squared) = linear_fit(&xs, &ys);
    let theoretical = params.theoretical_dimension();
    Ok(DimensionEstimate {
        theta: params.theta(),
        alpha: params.alpha(),
        axis,
        m_lo,
        m_hi,
        depth_margin,
        levels,
        slope,
        intercept,
        r_squared,
        theoretical,
        abs_error: (slope - theoretical).abs(),
    })
}

/// Upper bound on N_k for the depth-k graph on the 2^-k mesh:
/// 2^k * floor(2^(k+1) / (rho^(k-1) * (rho - 1))) + 2^k, with
/// rho = 2*cos(alpha). Rejects the degenerate angle, where rho = 2 makes
/// the column-height argument vacuous.
pub fn cover_bound(params: &DragonParams, k: u32) -> Result<u64> {
    if params.is_degenerate() {
        return Err(DragonError::Degenerate);
    }
    if k > limits::ABSOLUTE_MAX_DEPTH {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    let rho = 1.0 / params.ratio();
    let inner = (2.0f64).powi(k as i32 + 1) / (rho.powi(k as i32 - 1) * (rho - 1.0));
    if !inner.is_finite() || inner >= u64::MAX as f64 {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    let cols = 1u64 << k;
    cols.checked_mul(snap_floor(inner) as u64)
        .and_then(|v| v.checked_add(cols))
        .ok_or(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        })
}

/// Smallest nonzero |cos| (x axis) or |sin| (y axis) over the residue
/// classes j*p mod q of a rational angle. Zero classes are excluded by
/// exact integer tests; EmptySet is returned if every class is zero (not
/// reachable for q >= 7 but kept as a guard).
pub fn lambda_min(params: &DragonParams, axis: Axis) -> Result<f64> {
    let rational = params.rational().ok_or(DragonError::IrrationalAngle)?;
    let table = params
        .residue_table()
        .expect("rational parameters always carry a table");
    let q = rational.q;
    let mut best: Option<f64> = None;
    for j in 0..q {
        let r = (j * rational.p) % q;
        let (zero, mag) = match axis {
            Axis::X => (cos_residue_is_zero(r, q), table.cos[r as usize].abs()),
            Axis::Y => (sin_residue_is_zero(r, q), table.sin[r as usize].abs()),
        };
        if !zero {
            best = Some(best.map_or(mag, |b: f64| b.min(mag)));
        }
    }
    best.ok_or(DragonError::EmptySet { q })
}

/// Floor with forgiveness for values a few ulps under an integer: ratios
/// that are integers in exact arithmetic can land marginally below them in
/// floating point (e.g. lambda / (2 cos^3) at the right angle is exactly 1
/// but evaluates to 1 - 3 ulp).
fn snap_floor(x: f64) -> f64 {
    let c = x.ceil();
    if c > x && c - x < 1e-9 * x.abs().max(1.0) {
        c
    } else {
        x.floor()
    }
}

/// Lower bound on N_k for the depth-k graph on the 2^-k mesh:
/// 2^k * floor(lambda / (2 * cos(alpha)^k)), where lambda is the axis's
/// smallest nonzero direction component. Requires a rational angle.
pub fn noncover_bound(params: &DragonParams, k: u32, axis: Axis) -> Result<u64> {
    let lambda = lambda_min(params, axis)?;
    if k > limits::ABSOLUTE_MAX_DEPTH {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    let ca = 1.0 / (2.0 * params.ratio());
    let inner = lambda / (2.0 * ca.powi(k as i32));
    if !inner.is_finite() || inner >= u64::MAX as f64 {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    (1u64 << k)
        .checked_mul(snap_floor(inner) as u64)
        .ok_or(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        })
}

/// Nine-significant-digit decimal rendering for report fields.
fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return "null".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

impl DimensionEstimate {
    /// Deterministic JSON report: fixed key order, fixed float precision,
    /// no dependence on map iteration or locale.
    pub fn to_json(&self) -> String {
        let mut s = String::with_capacity(512);
        s.push_str("{\n");
        s.push_str(&format!("  \"theta\": {},\n", fmt_sig9(self.theta)));
        s.push_str(&format!("  \"alpha\": {},\n", fmt_sig9(self.alpha)));
        s.push_str(&format!("  \"axis\": \"{}\",\n", self.axis.name()));
        s.push_str(&format!("  \"m_lo\": {},\n", self.m_lo));
        s.push_str(&format!("  \"m_hi\": {},\n", self.m_hi));
        s.push_str(&format!("  \"depth_margin\": {},\n", self.depth_margin));
        s.push_str("  \"levels\": [\n");
        for (i, l) in self.levels.iter().enumerate() {
            let sep = if i + 1 == self.levels.len() { "" } else { "," };
            s.push_str(&format!(
                "    {{\"m\": {}, \"depth\": {}, \"total\": {}}}{}\n",
                l.m, l.depth, l.total, sep
            ));
        }
        s.push_str("  ],\n");
        s.push_str(&format!("  \"slope\": {},\n", fmt_sig9(self.slope)));
        s.push_str(&format!("  \"intercept\": {},\n", fmt_sig9(self.intercept)));
        s.push_str(&format!("  \"r_squared\": {},\n", fmt_sig9(self.r_squared)));
        s.push_str(&format!("  \"theoretical\": {},\n", fmt_sig9(self.theoretical)));
        s.push_str(&format!("  \"abs_error\": {}\n", fmt_sig9(self.abs_error)));
        s.push('}');
        s.push('\n');
        s
    }
}
