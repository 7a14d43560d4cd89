use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::exact::{ExactScalar, GaussianInt};
use super::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),
    #[error("{a}/{b} is not in lowest terms")]
    NotReduced { a: i64, b: i64 },
    #[error("cannot parse root {0:?}; expected \"a/b\"")]
    Parse(String),
}

/// The point `A = e^{i pi a / b}` with `gcd(a, b) = 1`, `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RootRepr", into = "RootRepr")]
pub struct RootOfUnity {
    a: i64,
    b: i64,
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    a: i64,
    b: i64,
}

impl TryFrom<RootRepr> for RootOfUnity {
    type Error = RootError;
    fn try_from(r: RootRepr) -> Result<Self, RootError> {
        RootOfUnity::new(r.a, r.b)
    }
}

impl From<RootOfUnity> for RootRepr {
    fn from(r: RootOfUnity) -> Self {
        RootRepr { a: r.a, b: r.b }
    }
}

impl RootOfUnity {
    pub fn new(a: i64, b: i64) -> Result<Self, RootError> {
        if b <= 0 {
            return Err(RootError::NonPositiveDenominator(b));
        }
        if a.gcd(&b) != 1 {
            return Err(RootError::NotReduced { a, b });
        }
        Ok(Self { a, b })
    }

    /// `A = -i`, i.e. `a/b = -1/2`.
    pub fn minus_i() -> Self {
        Self { a: -1, b: 2 }
    }

    /// `A = -1`.
    pub fn minus_one() -> Self {
        Self { a: 1, b: 1 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Multiplicative order of `A`.
    pub fn order(&self) -> i64 {
        if self.a % 2 == 0 {
            self.b
        } else {
            2 * self.b
        }
    }

    /// Whether specialization stays exact (`A` in `{1, -1, i, -i}`).
    pub fn is_exact(&self) -> bool {
        self.b <= 2
    }

    /// `A^k` as a float, with the angle reduced exactly modulo `2 pi`.
    pub fn power_f64(&self, k: i64) -> Complex<f64> {
        let m = (self.a as i128 * k as i128).rem_euclid(2 * self.b as i128);
        let angle = std::f64::consts::PI * m as f64 / self.b as f64;
        Complex::new(angle.cos(), angle.sin())
    }

    /// `A^k` in the ring dictated by the order of `A`.
    pub fn power(&self, k: i64) -> ExactScalar {
        match self.b {
            1 => {
                let odd = (self.a as i128 * k as i128).rem_euclid(2) == 1;
                ExactScalar::int(if odd { -1 } else { 1 })
            }
            2 => ExactScalar::Gaussian(i_power((self.a as i128 * k as i128).rem_euclid(4) as i64)),
            _ => ExactScalar::Float(self.power_f64(k)),
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl std::str::FromStr for RootOfUnity {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let a: i64 = a.parse().map_err(|_| RootError::Parse(s.into()))?;
        let b: i64 = b.parse().map_err(|_| RootError::Parse(s.into()))?;
        RootOfUnity::new(a, b)
    }
}

fn i_power(k: i64) -> GaussianInt {
    let (re, im) = match k.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    Complex::new(BigInt::from(re), BigInt::from(im))
}

/// Substitute `A = e^{i pi a / b}` into a Laurent polynomial.
///
/// The result is an `Integer` for `b = 1`, a `GaussianInteger` for `b = 2`
/// and a `ComplexFloat` otherwise.
pub fn specialize(x: &LaurentPoly, root: RootOfUnity) -> ExactScalar {
    match root.b {
        1 => {
            let mut acc = BigInt::zero();
            for (k, c) in x.terms() {
                if (root.a as i128 * k as i128).rem_euclid(2) == 1 {
                    acc -= c;
                } else {
                    acc += c;
                }
            }
            ExactScalar::Integer(acc)
        }
        2 => {
            let mut acc = GaussianInt::new(BigInt::zero(), BigInt::zero());
            for (k, c) in x.terms() {
                let e = (root.a as i128 * k as i128).rem_euclid(4) as i64;
                let u = i_power(e);
                acc += Complex::new(&u.re * c, &u.im * c);
            }
            ExactScalar::Gaussian(acc)
        }
        _ => {
            let mut acc = Complex::new(0.0, 0.0);
            for (k, c) in x.terms() {
                let c = c.to_f64().unwrap_or(f64::NAN);
                acc += root.power_f64(k) * c;
            }
            ExactScalar::Float(acc)
        }
    }
}
