use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DragonError {
    /// The opening angle is outside the open interval (pi/3, 5*pi/3).
    #[error("theta = {theta} is outside the open interval (pi/3, 5*pi/3)")]
    OutOfRange { theta: f64 },

    /// A materialization request exceeds the configured depth cap.
    #[error("depth {requested} exceeds the materialization cap {cap}")]
    CapacityExceeded { requested: u32, cap: u32 },

    /// Limit evaluation would need a depth beyond the cap; `achieved` is the
    /// error bound certified at the cap depth.
    #[error("evaluation needs depth {needed}, beyond the cap {cap}; best certified bound {achieved:e}")]
    EvalDepthExceeded { needed: u32, cap: u32, achieved: f64 },

    /// A letter or vertex index does not exist at the given depth.
    #[error("index {index} out of range at depth {depth}")]
    IndexOutOfRange { depth: u32, index: u64 },

    /// A curve parameter lies outside [0, 1].
    #[error("parameter t = {0} outside [0, 1]")]
    DomainError(f64),

    /// The operation is undefined for the straight-segment angle theta = pi.
    #[error("degenerate angle theta = pi")]
    Degenerate,

    /// The half-angle is not a rational multiple of 2*pi within the
    /// detection cap, but the operation requires one.
    #[error("angle has no rational form within the detection cap")]
    IrrationalAngle,

    /// A rational-approximation request was made for an angle that is
    /// already rational.
    #[error("alpha is already rational: {p}/{q} of 2*pi")]
    AlreadyRational { p: u64, q: u64 },

    /// A mesh count was requested at a level finer than the function depth.
    #[error("function depth {depth} is shallower than mesh level {level}")]
    DepthTooShallow { depth: u32, level: u32 },

    /// No nonzero trigonometric value exists among the residues. Cannot
    /// occur for denominators admitted by parameter validation; reported
    /// defensively.
    #[error("no nonzero trigonometric value among residues (q = {q})")]
    EmptySet { q: u64 },

    /// An invalid mesh level range was supplied.
    #[error("invalid mesh level range [{m_lo}, {m_hi}]")]
    InvalidLevelRange { m_lo: u32, m_hi: u32 },

    /// A tolerance that must be positive was not.
    #[error("tolerance eps = {0} must be positive and finite")]
    InvalidEps(f64),
}

pub type Result<T> = std::result::Result<T, DragonError>;
