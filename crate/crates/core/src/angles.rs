//! Angle parameters and the letter words that drive curve construction.
//!
//! A curve in the family is fixed by an opening angle theta in
//! (pi/3, 5*pi/3). Angles above pi describe mirror images of angles below
//! pi, so parameters are reduced to theta' = 2*pi - theta with a reflection
//! flag. The working quantity is the half-angle alpha = (pi - theta')/2 in
//! [0, pi/3); the per-step contraction ratio is 1/(2*cos(alpha)).
//!
//! Each refinement replaces every unit segment by two shorter ones. Tracking
//! the heading of segment i at depth k as an integer multiple c of alpha
//! gives a word over signed integers: the single letter (0) at depth 0, and
//! letter c at 1-based position j expanding to (c+1, c-1) for odd j and
//! (c-1, c+1) for even j. Position arithmetic also yields a closed form:
//! the letter at position i of the depth-k word is k minus twice the number
//! of set bits of gray(i-1) in the low k bits, where gray(x) = x ^ (x >> 1).

use crate::error::{DragonError, Result};
use crate::limits;
use crate::trig::ResidueTable;
use std::f64::consts::PI;

/// Reduced fraction p/q with alpha = 2*pi*p/q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub p: u64,
    pub q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Validated curve parameters.
///
/// Construct through [`validate_params`] or [`DragonParams::from_pi_fraction`];
/// the fields are kept consistent with each other and, for rational alpha,
/// with a shared residue table so equal angles always produce identical
/// floating-point values.
#[derive(Debug, Clone)]
pub struct DragonParams {
    theta: f64,
    alpha: f64,
    cos_alpha: f64,
    sin_alpha: f64,
    ratio: f64,
    /// 1/(2 + 2*cos(2*alpha)) = ratio^2, computed from the snapped table so
    /// that even-depth segment lengths stay exact when the table is exact.
    inv_sq: f64,
    rational: Option<Rational>,
    reflected: bool,
    table: Option<ResidueTable>,
}

/// Checks theta against the open interval (pi/3, 5*pi/3), reduces angles
/// above pi to their mirror image, and detects rational alpha/(2*pi) with
/// denominator up to [`limits::RATIONAL_DENOMINATOR_CAP`].
pub fn validate_params(theta: f64) -> Result<DragonParams> {
    if !theta.is_finite() {
        return Err(DragonError::OutOfRange { theta });
    }
    let lo = PI / 3.0;
    let hi = 5.0 * PI / 3.0;
    if theta <= lo || theta >= hi {
        return Err(DragonError::OutOfRange { theta });
    }
    let (reduced, reflected) = if theta > PI {
        (2.0 * PI - theta, true)
    } else {
        (theta, false)
    };
    let alpha = (PI - reduced) / 2.0;
    let rational = detect_rational(alpha / (2.0 * PI));
    Ok(DragonParams::build(reduced, alpha, rational, reflected))
}

/// First fraction p/q with q <= cap and |x - p/q| below the detection
/// tolerance; scanning denominators in order makes the hit lowest-terms.
fn detect_rational(x: f64) -> Option<Rational> {
    if x <= 0.0 {
        return None;
    }
    for q in 1..=limits::RATIONAL_DENOMINATOR_CAP {
        let p = (x * q as f64).round();
        if p < 1.0 {
            continue;
        }
        if (x - p / q as f64).abs() < limits::RATIONAL_DETECT_TOL {
            let p = p as u64;
            let g = gcd(p, q);
            return Some(Rational { p: p / g, q: q / g });
        }
    }
    None
}

impl DragonParams {
    /// Parameters for theta = num*pi/den with exact rational bookkeeping:
    /// the fraction alpha/(2*pi) = (den - num)/(4*den) is reduced in
    /// integers instead of being re-detected from floats.
    pub fn from_pi_fraction(num: u64, den: u64) -> Result<Self> {
        let theta_val = if den == 0 {
            f64::NAN
        } else {
            PI * num as f64 / den as f64
        };
        if den == 0 || 3 * num <= den || 3 * num >= 5 * den {
            return Err(DragonError::OutOfRange { theta: theta_val });
        }
        let (num, reflected) = if num > den {
            (2 * den - num, true)
        } else {
            (num, false)
        };
        // Reduce in integers so equal angles share one float path; in
        // particular num == den becomes 1/1 and yields theta = pi exactly.
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        let theta = PI * num as f64 / den as f64;
        let alpha = (PI - theta) / 2.0;
        let rational = if num == den {
            None
        } else {
            let p = den - num;
            let q = 4 * den;
            let g = gcd(p, q);
            Some(Rational { p: p / g, q: q / g })
        };
        Ok(DragonParams::build(theta, alpha, rational, reflected))
    }

    fn build(theta: f64, alpha: f64, rational: Option<Rational>, reflected: bool) -> Self {
        let table = rational.map(|r| ResidueTable::new(r.q));
        let (cos_alpha, sin_alpha, cos_two_alpha) = match (&table, rational) {
            (Some(t), Some(r)) => {
                let c2 = t.cos[((2 * r.p) % r.q) as usize];
                (t.cos[r.p as usize], t.sin[r.p as usize], c2)
            }
            _ => (alpha.cos(), alpha.sin(), (2.0 * alpha).cos()),
        };
        let ratio = 1.0 / (2.0 * cos_alpha);
        let inv_sq = 1.0 / (2.0 + 2.0 * cos_two_alpha);
        debug_assert!((0.5..1.0).contains(&ratio), "ratio {ratio} out of [1/2, 1)");
        DragonParams {
            theta,
            alpha,
            cos_alpha,
            sin_alpha,
            ratio,
            inv_sq,
            rational,
            reflected,
            table,
        }
    }

    /// Reduced opening angle, in (pi/3, pi].
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Half-angle (pi - theta)/2, in [0, pi/3).
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Per-refinement contraction 1/(2*cos(alpha)), in [1/2, 1).
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Some(p/q) when alpha = 2*pi*p/q was recognized.
    pub fn rational(&self) -> Option<Rational> {
        self.rational
    }

    /// True when the requested theta was above pi; the curve is the mirror
    /// image (y negated) of the reduced parameters' curve.
    pub fn reflected(&self) -> bool {
        self.reflected
    }

    /// theta = pi: every refinement subdivides the unit segment in place.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 0.0
    }

    /// Dimension of the limit graph: 1 - log2(cos(alpha)).
    pub fn theoretical_dimension(&self) -> f64 {
        1.0 - self.cos_alpha.log2()
    }

    pub(crate) fn cos_alpha(&self) -> f64 {
        self.cos_alpha
    }

    pub(crate) fn sin_alpha(&self) -> f64 {
        self.sin_alpha
    }

    /// cos(c*alpha) for a letter c, via the residue table when available.
    pub(crate) fn cos_coeff(&self, c: i64) -> f64 {
        match (&self.table, self.rational) {
            (Some(t), Some(r)) => {
                let idx = (c * r.p as i64).rem_euclid(r.q as i64) as usize;
                t.cos[idx]
            }
            _ => (c.unsigned_abs() as f64 * self.alpha).cos(),
        }
    }

    /// sin(c*alpha) for a letter c, negated when the parameters are a
    /// reflection so callers can treat increments uniformly.
    pub(crate) fn sin_coeff(&self, c: i64) -> f64 {
        let raw = match (&self.table, self.rational) {
            (Some(t), Some(r)) => {
                let idx = (c * r.p as i64).rem_euclid(r.q as i64) as usize;
                t.sin[idx]
            }
            _ => {
                let s = (c.unsigned_abs() as f64 * self.alpha).sin();
                if c < 0 {
                    -s
                } else {
                    s
                }
            }
        };
        if self.reflected {
            -raw
        } else {
            raw
        }
    }

    /// Segment length at depth d. Even depths use powers of ratio^2
    /// computed as 1/(2 + 2*cos(2*alpha)), which is exact whenever the
    /// snapped table makes that denominator exact.
    pub(crate) fn length_scale(&self, depth: u32) -> f64 {
        let even = self.inv_sq.powi((depth / 2) as i32);
        if depth % 2 == 1 {
            even * self.ratio
        } else {
            even
        }
    }

    pub(crate) fn residue_table(&self) -> Option<&ResidueTable> {
        self.table.as_ref()
    }
}

/// Signed-letter word at one refinement depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleWord {
    depth: u32,
    coeffs: Vec<i64>,
}

impl AngleWord {
    /// Depth-0 word, the single letter 0.
    pub fn base() -> Self {
        AngleWord {
            depth: 0,
            coeffs: vec![0],
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// One substitution step: letter c at 1-based position j becomes
    /// (c+1, c-1) for odd j and (c-1, c+1) for even j.
    pub fn substitute(&self) -> Result<AngleWord> {
        limits::check_depth(self.depth + 1)?;
        let mut out = Vec::with_capacity(self.coeffs.len() * 2);
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if idx % 2 == 0 {
                out.push(c + 1);
                out.push(c - 1);
            } else {
                out.push(c - 1);
                out.push(c + 1);
            }
        }
        Ok(AngleWord {
            depth: self.depth + 1,
            coeffs: out,
        })
    }

    /// Depth-k word, built by k substitution steps from the base word.
    pub fn materialize(k: u32) -> Result<AngleWord> {
        limits::check_depth(k)?;
        let mut w = AngleWord::base();
        for _ in 0..k {
            w = w.substitute()?;
        }
        Ok(w)
    }
}

/// Letter at 1-based position i of the depth-k word, without materializing
/// the word: k - 2 * popcount(gray(i-1) & (2^k - 1)).
pub fn angle_at(k: u32, i: u64) -> Result<i64> {
    if k > limits::ABSOLUTE_MAX_DEPTH {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: limits::ABSOLUTE_MAX_DEPTH,
        });
    }
    let len = 1u64 << k;
    if i < 1 || i > len {
        return Err(DragonError::IndexOutOfRange { depth: k, index: i });
    }
    let x = i - 1;
    let transitions = ((x ^ (x >> 1)) & (len - 1)).count_ones();
    Ok(k as i64 - 2 * transitions as i64)
}

/// Number of bit transitions in the low-k-bit gray pattern of position i-1.
/// The letter is k - 2*t and the index into a per-depth value table is t.
pub(crate) fn transition_count(k: u32, i: u64) -> u32 {
    debug_assert!(k <= limits::ABSOLUTE_MAX_DEPTH);
    debug_assert!(i >= 1);
    let x = i - 1;
    let mask = (1u64 << k) - 1;
    ((x ^ (x >> 1)) & mask).count_ones()
}

/// Letter multiplicities of the depth-k word as (count, letter) pairs in
/// decreasing letter order. Letter k - 2j occurs C(k, j) times, so counts
/// follow one row of Pascal's triangle and sum to 2^k.
pub fn angle_histogram(k: u32) -> Result<Vec<(u128, i64)>> {
    // The running product C(k, j) * (k - j) must fit in u128; k = 125 is
    // the largest depth where it does at every j.
    const BINOMIAL_CAP: u32 = 125;
    if k > BINOMIAL_CAP {
        return Err(DragonError::CapacityExceeded {
            requested: k,
            cap: BINOMIAL_CAP,
        });
    }
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut c: u128 = 1;
    for j in 0..=k {
        out.push((c, k as i64 - 2 * j as i64));
        if j < k {
            // C(k, j+1) = C(k, j) * (k - j) / (j + 1), exact at every step.
            c = c
                .checked_mul((k - j) as u128)
                .ok_or(DragonError::CapacityExceeded {
                    requested: k,
                    cap: BINOMIAL_CAP,
                })?
                / (j + 1) as u128;
        }
    }
    Ok(out)
}

/// Depth-k letter multiplicities folded to residue classes of c*p mod q:
/// entry r counts positions whose letter lands in class r.
pub fn coeff_residue_histogram(k: u32, rational: Rational) -> Result<Vec<u128>> {
    let mut out = vec![0u128; rational.q as usize];
    for (count, letter) in angle_histogram(k)? {
        let idx = (letter * rational.p as i64).rem_euclid(rational.q as i64) as usize;
        out[idx] += count;
    }
    Ok(out)
}
