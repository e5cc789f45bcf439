use std::sync::OnceLock;

/// Default cap on materialization depth: words, curves and coordinate
/// functions hold 2^k letters, so k = 26 bounds a single materialized
/// object at a few hundred megabytes.
pub const DEFAULT_MAX_DEPTH: u32 = 26;

/// Hard ceiling regardless of environment override; letter indices are
/// manipulated as u64 bit strings.
pub const ABSOLUTE_MAX_DEPTH: u32 = 62;

/// Denominator cap for rational-angle detection.
pub const RATIONAL_DENOMINATOR_CAP: u64 = 10_000;

/// Absolute tolerance for rational-angle detection on alpha/(2*pi).
pub const RATIONAL_DETECT_TOL: f64 = 1e-12;

static MAX_DEPTH: OnceLock<u32> = OnceLock::new();

/// Materialization cap. `DRAGONDIM_MAX_DEPTH` overrides the default; the
/// value is read once per process.
pub fn max_depth() -> u32 {
    *MAX_DEPTH.get_or_init(|| {
        std::env::var("DRAGONDIM_MAX_DEPTH")
            .ok()
            .and_then(|v| v.parse::<u32>().ok())
            .map(|v| v.min(ABSOLUTE_MAX_DEPTH))
            .unwrap_or(DEFAULT_MAX_DEPTH)
    })
}

/// Guard a depth against the materialization cap.
pub(crate) fn check_depth(requested: u32) -> crate::Result<()> {
    let cap = max_depth();
    if requested > cap {
        Err(crate::DragonError::CapacityExceeded { requested, cap })
    } else {
        Ok(())
    }
}
