//! Slopes on boundary tori and the integral gluing maps that carry them
//! across edge manifolds.
//!
//! Coordinates are always `(fiber, section)`: the regular fiber is `(1, 0)`
//! and the section curve is `(0, 1)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isotopy class of an essential simple closed curve on a torus.
///
/// Stored primitive and sign-normalized: `b > 0`, or `b == 0` and `a == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct Slope {
    a: i64,
    b: i64,
}

impl Slope {
    pub const FIBER: Slope = Slope { a: 1, b: 0 };
    pub const SECTION: Slope = Slope { a: 0, b: 1 };

    /// Primitive part of `(a, b)`, sign-normalized. Fails on `(0, 0)`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        Self::with_content(a, b).map(|(s, _)| s)
    }

    /// Like [`Slope::new`] but also returns the gcd content of the vector,
    /// i.e. the number of parallel copies of the slope it represents.
    pub fn with_content(a: i64, b: i64) -> Result<(Self, u64)> {
        if a == 0 && b == 0 {
            return Err(Error::ZeroSlope);
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / g, b / g);
        if b < 0 || (b == 0 && a < 0) {
            a = -a;
            b = -b;
        }
        Ok((Slope { a, b }, g as u64))
    }

    pub fn fiber_coeff(&self) -> i64 {
        self.a
    }

    pub fn section_coeff(&self) -> i64 {
        self.b
    }

    pub fn is_fiber(&self) -> bool {
        *self == Self::FIBER
    }
}

impl From<Slope> for [i64; 2] {
    fn from(s: Slope) -> Self {
        [s.a, s.b]
    }
}

impl TryFrom<[i64; 2]> for Slope {
    type Error = Error;

    fn try_from(v: [i64; 2]) -> Result<Self> {
        let s = Slope::new(v[0], v[1])?;
        if [s.a, s.b] != v {
            return Err(Error::UnnormalizedSlope(v[0], v[1]));
        }
        Ok(s)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Geometric intersection number of two slopes on a torus.
pub fn intersection_number(s: Slope, t: Slope) -> u64 {
    (s.a as i128 * t.b as i128 - s.b as i128 * t.a as i128).unsigned_abs() as u64
}

/// 2x2 integer matrix acting on `(fiber, section)` column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GluingMap(pub [[i64; 2]; 2]);

impl GluingMap {
    pub const IDENTITY: GluingMap = GluingMap([[1, 0], [0, 1]]);
    pub const SWAP: GluingMap = GluingMap([[0, 1], [1, 0]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.0;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }

    /// Inverse of a unimodular map.
    pub fn inverse(&self) -> Result<GluingMap> {
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        let [[a, b], [c, d]] = self.0;
        Ok(GluingMap([[d * det, -b * det], [-c * det, a * det]]))
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &GluingMap) -> GluingMap {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = other.0;
        GluingMap([
            [a * e + b * g, a * f + b * h],
            [c * e + d * g, c * f + d * h],
        ])
    }
}

/// Image of a slope under a gluing map, re-normalized.
pub fn transport_slope(gl: &GluingMap, s: Slope) -> Slope {
    let (a, b) = gl.apply((s.a, s.b));
    // a singular map could send a slope to zero; callers validate determinants first
    Slope::new(a, b).expect("gluing map must be unimodular")
}
