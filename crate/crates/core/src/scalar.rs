//! Scalar traits shared by the exact and floating-point halves of the crate.
//!
//! The algebraic code (noncommutative torus, skein algebra, Heisenberg
//! algebra, transport operators) is written against [`Ring`], so the same
//! implementation runs over Laurent polynomials, the integers, the Gaussian
//! integers and complex floats. The analytic code (traces, integrals,
//! pillowcase geometry) is written against [`Real`], implemented for `f32`
//! and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, One, ToPrimitive, Zero};

/// Commutative coefficient ring used by the sparse algebras.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
    /// Whether a coefficient can be dropped from a sparse map. Exact rings
    /// drop only zero; float rings drop values below `1e-10 * scale`.
    fn is_negligible(&self, scale: f64) -> bool;

    /// A rough size used to pick the pruning scale of float computations.
    fn magnitude(&self) -> f64;

    /// Multiplication by an integer.
    fn mul_int(&self, n: i64) -> Self;
}

/// Rings containing a square root of -1.
pub trait HasImaginaryUnit: Ring {
    fn imaginary_unit() -> Self;

    /// `i^k` for any integer `k`.
    fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::imaginary_unit(),
            2 => -Self::one(),
            _ => -Self::imaginary_unit(),
        }
    }
}

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Sum
    + 'static
{
    /// Lossy conversion from `f64` literals.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float")
    }
}

impl Real for f32 {}
impl Real for f64 {}

const FLOAT_PRUNE: f64 = 1e-10;

impl Ring for BigInt {
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn mul_int(&self, n: i64) -> Self {
        self * BigInt::from(n)
    }
}

impl Ring for Complex<BigInt> {
    fn is_negligible(&self, _scale: f64) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        Ring::magnitude(&self.re).max(Ring::magnitude(&self.im))
    }
    fn mul_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        Complex::new(&self.re * &n, &self.im * &n)
    }
}

impl HasImaginaryUnit for Complex<BigInt> {
    fn imaginary_unit() -> Self {
        Complex::new(BigInt::zero(), BigInt::one())
    }
}

impl<F: Real> Ring for Complex<F> {
    fn is_negligible(&self, scale: f64) -> bool {
        self.norm().as_f64() <= FLOAT_PRUNE * scale.max(1.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm().as_f64()
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale(F::of(n as f64))
    }
}

impl<F: Real> HasImaginaryUnit for Complex<F> {
    fn imaginary_unit() -> Self {
        Complex::i()
    }
}

/// `e^{i x}` for a real angle.
pub fn cis<F: Real>(x: F) -> Complex<F> {
    Complex::new(x.cos(), x.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_powers_cycle() {
        let i = Complex::<BigInt>::imaginary_unit();
        assert_eq!(Complex::<BigInt>::i_pow(2), -Complex::<BigInt>::one());
        assert_eq!(Complex::<BigInt>::i_pow(-1), -i.clone());
        assert_eq!(Complex::<BigInt>::i_pow(5), i);
    }

    #[test]
    fn float_pruning_is_relative() {
        let z = Complex::new(1e-9_f64, 0.0);
        assert!(!z.is_negligible(1.0));
        assert!(z.is_negligible(100.0));
    }
}
