//! Trigonometric values for letter angles.
//!
//! When the half-angle alpha is a rational multiple of the full turn,
//! alpha = 2*pi*p/q, every letter angle c*alpha falls into one of q residue
//! classes. Values are computed once per class, and the classes whose cosine
//! or sine is exactly 0, +-1/2 or +-1 are decided by integer arithmetic and
//! produced exactly. Symmetric residues are folded onto a single libm call
//! so that classes with equal magnitude share the same floating-point value.

use std::f64::consts::TAU;

/// cos(2*pi*r/q) == 0 exactly, decided in integers.
pub(crate) fn cos_residue_is_zero(r: u64, q: u64) -> bool {
    let m = (4 * r) % (4 * q);
    m == q || m == 3 * q
}

/// sin(2*pi*r/q) == 0 exactly, decided in integers.
pub(crate) fn sin_residue_is_zero(r: u64, q: u64) -> bool {
    (2 * r) % q == 0
}

/// Cosine and sine of 2*pi*r/q for every residue r in 0..q.
#[derive(Debug, Clone)]
pub(crate) struct ResidueTable {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

fn snapped_cos(r: u64, q: u64) -> f64 {
    if cos_residue_is_zero(r, q) {
        return 0.0;
    }
    if r == 0 {
        return 1.0;
    }
    if 2 * r == q {
        return -1.0;
    }
    // |cos| = 1/2 exactly at angle j*pi/3.
    if (6 * r) % q == 0 {
        return match (6 * r) / q {
            1 | 5 => 0.5,
            2 | 4 => -0.5,
            _ => unreachable!("0 and 3 are handled above"),
        };
    }
    // Fold by evenness, then across pi so mirrored residues share a value.
    let r1 = r.min(q - r);
    if q % 2 == 0 && 4 * r1 > q {
        -(TAU * ((q / 2 - r1) as f64) / q as f64).cos()
    } else {
        (TAU * (r1 as f64) / q as f64).cos()
    }
}

fn snapped_sin(r: u64, q: u64) -> f64 {
    if sin_residue_is_zero(r, q) {
        return 0.0;
    }
    if 4 * r == q {
        return 1.0;
    }
    if 4 * r == 3 * q {
        return -1.0;
    }
    // |sin| = 1/2 exactly at angle j*pi/6 for j coprime to 6; other
    // twelfths (j = 2, 4, 8, 10) fall through to the generic path.
    if (12 * r) % q == 0 {
        match (12 * r) / q {
            1 | 5 => return 0.5,
            7 | 11 => return -0.5,
            _ => {}
        }
    }
    let (r1, sign) = if 2 * r > q { (q - r, -1.0) } else { (r, 1.0) };
    // sin(pi - x) = sin(x): fold onto the first quadrant when the mirror
    // residue is an integer.
    let r2 = if q % 2 == 0 { r1.min(q / 2 - r1) } else { r1 };
    sign * (TAU * (r2 as f64) / q as f64).sin()
}

impl ResidueTable {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1);
        let n = q as usize;
        let mut cos = Vec::with_capacity(n);
        for r in 0..q {
            cos.push(snapped_cos(r, q));
        }
        let sin = if q % 4 == 0 {
            // sin(x) = cos(x - pi/2) shifts by a whole residue, so the sine
            // column reuses the cosine column bit for bit.
            let shift = 3 * q / 4;
            (0..q).map(|r| cos[((r + shift) % q) as usize]).collect()
        } else {
            (0..q).map(|r| snapped_sin(r, q)).collect()
        };
        ResidueTable { cos, sin }
    }
}
