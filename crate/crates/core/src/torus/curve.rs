use std::fmt;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("({p},{q}) is not primitive: gcd must be 1")]
    NotPrimitive { p: i64, q: i64 },
    #[error("copy count must be positive")]
    ZeroCopies,
}

/// Multicurve on the torus: `d` parallel copies of the primitive curve
/// `p m + q l`, or the empty multicurve.
///
/// Orientation is canonical: `p > 0`, or `p = 0` and `q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorusMulticurve {
    Empty,
    Curve { d: u32, p: i64, q: i64 },
}

impl TorusMulticurve {
    /// `d` copies of `(p, q)`, reoriented to the canonical direction.
    pub fn new(d: u32, p: i64, q: i64) -> Result<Self, CurveError> {
        if d == 0 {
            return Err(CurveError::ZeroCopies);
        }
        if p.gcd(&q) != 1 {
            return Err(CurveError::NotPrimitive { p, q });
        }
        let (p, q) = canonical_direction(p, q);
        Ok(TorusMulticurve::Curve { d, p, q })
    }

    /// A single simple curve.
    pub fn simple(p: i64, q: i64) -> Result<Self, CurveError> {
        Self::new(1, p, q)
    }

    /// The multicurve whose homology class is `(hp, hq)` up to sign:
    /// `gcd` copies of the primitive direction.
    pub fn from_class(hp: i64, hq: i64) -> Self {
        if hp == 0 && hq == 0 {
            return TorusMulticurve::Empty;
        }
        let d = hp.gcd(&hq);
        let (p, q) = canonical_direction(hp / d, hq / d);
        TorusMulticurve::Curve { d: d as u32, p, q }
    }

    /// Number of components `n(gamma)`.
    pub fn components(&self) -> u32 {
        match self {
            TorusMulticurve::Empty => 0,
            TorusMulticurve::Curve { d, .. } => *d,
        }
    }

    /// Homology class `(d p, d q)` of the canonically oriented multicurve.
    pub fn homology(&self) -> (i64, i64) {
        match *self {
            TorusMulticurve::Empty => (0, 0),
            TorusMulticurve::Curve { d, p, q } => (d as i64 * p, d as i64 * q),
        }
    }

    /// Class in `H_1(T, Z_2)`.
    pub fn grading(&self) -> (u8, u8) {
        let (a, b) = self.homology();
        (a.rem_euclid(2) as u8, b.rem_euclid(2) as u8)
    }

    /// All multicurves with `d <= max_d` and `|p|, |q| <= max_pq`, empty first.
    pub fn enumerate(max_d: u32, max_pq: i64) -> Vec<TorusMulticurve> {
        let mut out = vec![TorusMulticurve::Empty];
        for d in 1..=max_d {
            for p in 0..=max_pq {
                for q in -max_pq..=max_pq {
                    if p.gcd(&q) == 1 && (p > 0 || q == 1) {
                        out.push(TorusMulticurve::Curve { d, p, q });
                    }
                }
            }
        }
        out
    }
}

fn canonical_direction(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

impl fmt::Display for TorusMulticurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusMulticurve::Empty => write!(f, "empty"),
            TorusMulticurve::Curve { d: 1, p, q } => write!(f, "({p},{q})"),
            TorusMulticurve::Curve { d, p, q } => write!(f, "{d}x({p},{q})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    d: u32,
    p: i64,
    q: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MulticurveRepr {
    Tag(String),
    Curve(CurveRepr),
}

// JSON: {"d": 2, "p": 1, "q": 0} or "empty"
impl Serialize for TorusMulticurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            TorusMulticurve::Empty => MulticurveRepr::Tag("empty".into()),
            TorusMulticurve::Curve { d, p, q } => MulticurveRepr::Curve(CurveRepr { d, p, q }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusMulticurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match MulticurveRepr::deserialize(d)? {
            MulticurveRepr::Tag(t) if t == "empty" => Ok(TorusMulticurve::Empty),
            MulticurveRepr::Tag(t) => Err(D::Error::custom(format!("unknown multicurve {t:?}"))),
            MulticurveRepr::Curve(c) => TorusMulticurve::new(c.d, c.p, c.q).map_err(D::Error::custom),
        }
    }
}
