//! Exact rational angles.
//!
//! A [`Turn`] is a point on the unit circle written as a reduced fraction of
//! a full turn: `Turn(q)` stands for `e^{2πiq}` with `0 <= q < 1`. All angle
//! arithmetic is exact; nothing in this module touches floating point.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// A rational point on the unit circle, in units of full turns.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn(Ratio<i64>);

impl Turn {
    pub const ZERO: Turn = Turn(Ratio::new_raw(0, 1));
    pub const HALF: Turn = Turn(Ratio::new_raw(1, 2));
    pub const QUARTER: Turn = Turn(Ratio::new_raw(1, 4));

    /// Builds a turn from a fraction, reducing it into `[0, 1)`.
    pub fn new(num: i64, den: i64) -> Result<Turn> {
        if den == 0 {
            return Err(Error::Parse("turn denominator is zero".into()));
        }
        Ok(Turn::from_ratio(Ratio::new(num, den)))
    }

    pub fn from_ratio(q: Ratio<i64>) -> Turn {
        let mut q = q - q.floor();
        if q.is_negative() {
            q += Ratio::new(1, 1);
        }
        if q >= Ratio::new(1, 1) {
            q -= Ratio::new(1, 1);
        }
        Turn(q)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    /// Angle addition, i.e. multiplication of unit complex numbers.
    pub fn add(&self, other: &Turn) -> Turn {
        Turn::from_ratio(self.0 + other.0)
    }

    /// The multiplicative inverse `e^{-2πiq}`.
    pub fn inv(&self) -> Turn {
        Turn::from_ratio(-self.0)
    }

    /// The antipodal point, i.e. multiplication by -1.
    pub fn antipode(&self) -> Turn {
        self.add(&Turn::HALF)
    }

    /// Complex conjugation. Coincides with `inv` on the unit circle.
    pub fn conj(&self) -> Turn {
        self.inv()
    }

    /// Midpoint of the counterclockwise arc from `self` to `other`.
    pub fn ccw_midpoint(&self, other: &Turn) -> Turn {
        let mut b = other.0;
        if b <= self.0 {
            b += Ratio::new(1, 1);
        }
        Turn::from_ratio((self.0 + b) / 2)
    }

    /// Sign of the inner product `<w, v>` of the two unit vectors, i.e. the
    /// sign of `cos(2π(v - w))`. Exact: +1, 0, or -1.
    pub fn dot_sign(w: &Turn, v: &Turn) -> i8 {
        let d = Turn::from_ratio(v.0 - w.0).0;
        let quarter = Ratio::new(1, 4);
        let three_quarters = Ratio::new(3, 4);
        if d == quarter || d == three_quarters {
            0
        } else if d < quarter || d > three_quarters {
            1
        } else {
            -1
        }
    }

    /// Whether `self` lies strictly inside the open minor arc between `a` and
    /// `b`. Requires `a != b` and `a != -b` (so that the minor arc is
    /// well-defined and shorter than a half turn).
    pub fn in_open_minor_arc(&self, a: &Turn, b: &Turn) -> bool {
        let d = Turn::from_ratio(b.0 - a.0).0;
        let half = Ratio::new(1, 2);
        debug_assert!(!d.is_zero() && d != half, "minor arc needs a != ±b");
        let x = Turn::from_ratio(self.0 - a.0).0;
        if d < half {
            !x.is_zero() && x < d
        } else {
            // The minor arc runs clockwise from a to b.
            x > d && x < Ratio::new(1, 1)
        }
    }
}

/// Decides membership in the null set of the phase hyperfield: whether some
/// strictly positive real combination of the unit vectors vanishes.
///
/// By Stiemke's lemma this fails exactly when some direction `w` has
/// `<w, v> >= 0` for every term `v` with at least one strict inequality. The
/// sign pattern of `w -> <w, v_i>` only changes at the directions orthogonal
/// to some `v_i`, so testing those critical directions together with a point
/// inside each arc between consecutive ones decides the question exactly.
pub fn phase_null(terms: &[Turn]) -> bool {
    if terms.is_empty() {
        return true;
    }
    let mut critical: Vec<Turn> = Vec::with_capacity(2 * terms.len());
    for t in terms {
        critical.push(t.add(&Turn::QUARTER));
        critical.push(t.add(&Turn::QUARTER).antipode());
    }
    critical.sort();
    critical.dedup();
    let mut candidates = critical.clone();
    for i in 0..critical.len() {
        let a = critical[i];
        let b = critical[(i + 1) % critical.len()];
        candidates.push(a.ccw_midpoint(&b));
    }
    for w in &candidates {
        let mut strict = false;
        let mut ok = true;
        for v in terms {
            match Turn::dot_sign(w, v) {
                1 => strict = true,
                0 => {}
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && strict {
            return false;
        }
    }
    true
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({}/{})", self.numer(), self.denom())
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}
