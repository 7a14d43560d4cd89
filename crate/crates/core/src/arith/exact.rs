use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::laurent::LaurentPoly;
use crate::scalar::{HasImaginaryUnit, Ring};

/// Gaussian integer `x + y i`.
pub type GaussianInt = Complex<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("incompatible scalar variants: {0} and {1} (coerce to float explicitly)")]
    IncompatibleVariants(&'static str, &'static str),
}

/// A coefficient of the skein computations, tagged by the ring it lives in.
///
/// `Integer` is the common subring and promotes into `Gaussian` and
/// `Laurent`. Any other combination of distinct variants is an error;
/// floats are reached only through [`ExactScalar::to_complex`].
#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactScalar {
    #[serde(with = "big_string")]
    Integer(BigInt),
    #[serde(rename = "gaussian", with = "gauss_strings")]
    Gaussian(GaussianInt),
    Laurent(LaurentPoly),
    #[serde(rename = "float", with = "float_pair")]
    Float(Complex<f64>),
}

impl ExactScalar {
    pub fn int(n: impl Into<BigInt>) -> Self {
        ExactScalar::Integer(n.into())
    }

    pub fn gaussian(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        ExactScalar::Gaussian(Complex::new(re.into(), im.into()))
    }

    pub fn float(re: f64, im: f64) -> Self {
        ExactScalar::Float(Complex::new(re, im))
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ExactScalar::Integer(_) => "Integer",
            ExactScalar::Gaussian(_) => "GaussianInteger",
            ExactScalar::Laurent(_) => "LaurentPoly",
            ExactScalar::Float(_) => "ComplexFloat",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ExactScalar::Float(_))
    }

    /// Explicit coercion into the float variant. Laurent polynomials have no
    /// numeric value and are rejected.
    pub fn coerce_float(&self) -> Result<ExactScalar, ArithError> {
        self.to_complex()
            .map(ExactScalar::Float)
            .ok_or(ArithError::IncompatibleVariants(self.variant_name(), "ComplexFloat"))
    }

    pub fn to_complex(&self) -> Option<Complex<f64>> {
        match self {
            ExactScalar::Integer(n) => Some(Complex::new(n.to_f64()?, 0.0)),
            ExactScalar::Gaussian(z) => Some(Complex::new(z.re.to_f64()?, z.im.to_f64()?)),
            ExactScalar::Laurent(_) => None,
            ExactScalar::Float(z) => Some(*z),
        }
    }

    pub fn as_gaussian(&self) -> Option<GaussianInt> {
        match self {
            ExactScalar::Integer(n) => Some(Complex::new(n.clone(), BigInt::zero())),
            ExactScalar::Gaussian(z) => Some(z.clone()),
            _ => None,
        }
    }

    pub fn conj(&self) -> ExactScalar {
        match self {
            ExactScalar::Gaussian(z) => ExactScalar::Gaussian(z.conj()),
            ExactScalar::Float(z) => ExactScalar::Float(z.conj()),
            other => other.clone(),
        }
    }

    pub fn checked_add(&self, rhs: &ExactScalar) -> Result<ExactScalar, ArithError> {
        use ExactScalar::*;
        Ok(match promote(self, rhs)? {
            (Integer(a), Integer(b)) => Integer(a + b),
            (Gaussian(a), Gaussian(b)) => Gaussian(a + b),
            (Laurent(a), Laurent(b)) => Laurent(&a + &b),
            (Float(a), Float(b)) => Float(a + b),
            _ => unreachable!("promote returns matching variants"),
        })
    }

    pub fn checked_mul(&self, rhs: &ExactScalar) -> Result<ExactScalar, ArithError> {
        use ExactScalar::*;
        Ok(match promote(self, rhs)? {
            (Integer(a), Integer(b)) => Integer(a * b),
            (Gaussian(a), Gaussian(b)) => Gaussian(a * b),
            (Laurent(a), Laurent(b)) => Laurent(&a * &b),
            (Float(a), Float(b)) => Float(a * b),
            _ => unreachable!("promote returns matching variants"),
        })
    }

    pub fn checked_sub(&self, rhs: &ExactScalar) -> Result<ExactScalar, ArithError> {
        self.checked_add(&-rhs.clone())
    }

    /// Equality within the common ring. Exact and float values never compare
    /// equal without coercion.
    pub fn checked_eq(&self, rhs: &ExactScalar) -> Result<bool, ArithError> {
        use ExactScalar::*;
        Ok(match promote(self, rhs)? {
            (Integer(a), Integer(b)) => a == b,
            (Gaussian(a), Gaussian(b)) => a == b,
            (Laurent(a), Laurent(b)) => a == b,
            (Float(a), Float(b)) => a == b,
            _ => unreachable!("promote returns matching variants"),
        })
    }
}

fn promote(x: &ExactScalar, y: &ExactScalar) -> Result<(ExactScalar, ExactScalar), ArithError> {
    use ExactScalar::*;
    let lift = |n: &BigInt, like: &ExactScalar| -> ExactScalar {
        match like {
            Gaussian(_) => Gaussian(Complex::new(n.clone(), BigInt::zero())),
            Laurent(_) => Laurent(LaurentPoly::constant(n.clone())),
            _ => Integer(n.clone()),
        }
    };
    match (x, y) {
        (Integer(_), Integer(_))
        | (Gaussian(_), Gaussian(_))
        | (Laurent(_), Laurent(_))
        | (Float(_), Float(_)) => Ok((x.clone(), y.clone())),
        (Integer(n), Gaussian(_) | Laurent(_)) => Ok((lift(n, y), y.clone())),
        (Gaussian(_) | Laurent(_), Integer(n)) => Ok((x.clone(), lift(n, x))),
        _ => Err(ArithError::IncompatibleVariants(x.variant_name(), y.variant_name())),
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::Integer(n)
    }
}

impl From<GaussianInt> for ExactScalar {
    fn from(z: GaussianInt) -> Self {
        ExactScalar::Gaussian(z)
    }
}

impl From<LaurentPoly> for ExactScalar {
    fn from(p: LaurentPoly) -> Self {
        ExactScalar::Laurent(p)
    }
}

impl From<Complex<f64>> for ExactScalar {
    fn from(z: Complex<f64>) -> Self {
        ExactScalar::Float(z)
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.checked_eq(other).unwrap_or(false)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.variant_name())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Integer(n) => write!(f, "{n}"),
            ExactScalar::Gaussian(z) => write!(f, "{}", fmt_gaussian(z)),
            ExactScalar::Laurent(p) => write!(f, "{p}"),
            ExactScalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

pub fn fmt_gaussian(z: &GaussianInt) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) if z.im.is_one() => "i".into(),
        (true, false) if (-&z.im).is_one() => "-i".into(),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            let sign = if z.im < BigInt::zero() { '-' } else { '+' };
            let abs = if z.im < BigInt::zero() { -&z.im } else { z.im.clone() };
            if abs.is_one() {
                format!("{} {sign} i", z.re)
            } else {
                format!("{} {sign} {abs}i", z.re)
            }
        }
    }
}

fn expect_compatible(r: Result<ExactScalar, ArithError>) -> ExactScalar {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    /// Panics on incompatible variants; use [`ExactScalar::checked_add`] to
    /// handle the error.
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        expect_compatible(self.checked_add(&rhs))
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        expect_compatible(self.checked_sub(&rhs))
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        expect_compatible(self.checked_mul(&rhs))
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Integer(n) => ExactScalar::Integer(-n),
            ExactScalar::Gaussian(z) => ExactScalar::Gaussian(-z),
            ExactScalar::Laurent(p) => ExactScalar::Laurent(-p),
            ExactScalar::Float(z) => ExactScalar::Float(-z),
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::Integer(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Integer(n) => n.is_zero(),
            ExactScalar::Gaussian(z) => z.re.is_zero() && z.im.is_zero(),
            ExactScalar::Laurent(p) => p.is_zero(),
            ExactScalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::Integer(BigInt::one())
    }
}

impl Ring for ExactScalar {
    fn is_negligible(&self, scale: f64) -> bool {
        match self {
            ExactScalar::Float(z) => z.is_negligible(scale),
            other => other.is_zero(),
        }
    }
    fn magnitude(&self) -> f64 {
        match self {
            ExactScalar::Integer(n) => Ring::magnitude(n),
            ExactScalar::Gaussian(z) => Ring::magnitude(z),
            ExactScalar::Laurent(p) => Ring::magnitude(p),
            ExactScalar::Float(z) => z.norm(),
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        match self {
            ExactScalar::Integer(m) => ExactScalar::Integer(m * BigInt::from(n)),
            ExactScalar::Gaussian(z) => ExactScalar::Gaussian(z.mul_int(n)),
            ExactScalar::Laurent(p) => ExactScalar::Laurent(p.mul_int(n)),
            ExactScalar::Float(z) => ExactScalar::Float(z * n as f64),
        }
    }
}

impl HasImaginaryUnit for ExactScalar {
    fn imaginary_unit() -> Self {
        ExactScalar::gaussian(0, 1)
    }
}

mod big_string {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim().parse().map_err(|_| D::Error::custom(format!("bad integer {raw:?}")))
    }
}

mod gauss_strings {
    use num_bigint::BigInt;
    use num_complex::Complex;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        [z.re.to_string(), z.im.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex<BigInt>, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        let parse = |v: &str| -> Result<BigInt, D::Error> {
            v.trim().parse().map_err(|_| D::Error::custom(format!("bad integer {v:?}")))
        };
        Ok(Complex::new(parse(&re)?, parse(&im)?))
    }
}

mod float_pair {
    use num_complex::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex<f64>, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex<f64>, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }
}
