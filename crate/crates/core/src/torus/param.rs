use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ExactScalar, GaussianInt, LaurentPoly, RootOfUnity};
use crate::scalar::{HasImaginaryUnit, Ring};

/// A value of the skein parameter `A` together with the coefficient ring it
/// lives in.
pub trait Parameter: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Scalar: Ring;

    /// `A^k`.
    fn a_pow(&self, k: i64) -> Self::Scalar;

    /// The integer `n` in the coefficient ring of this parameter.
    fn scalar(&self, n: i64) -> Self::Scalar {
        self.a_pow(0).mul_int(n)
    }

    /// The root `A = e^{i pi a/b}`, if this parameter is a specialization.
    fn root(&self) -> Option<RootOfUnity>;
}

/// The formal parameter: coefficients in `Z[A, A^{-1}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Formal;

impl Parameter for Formal {
    type Scalar = LaurentPoly;
    fn a_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::a_pow(k)
    }
    fn root(&self) -> Option<RootOfUnity> {
        None
    }
}

impl fmt::Display for Formal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "formal")
    }
}

/// Specialization at `e^{i pi a/b}` with runtime-tagged coefficients.
impl Parameter for RootOfUnity {
    type Scalar = ExactScalar;
    fn a_pow(&self, k: i64) -> ExactScalar {
        self.power(k)
    }
    fn root(&self) -> Option<RootOfUnity> {
        Some(*self)
    }
}

/// `A = i^e` with coefficients in `Z[i]`; covers `A` in `{1, i, -1, -i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRoot {
    exponent: u8,
}

impl GaussianRoot {
    pub fn new(exponent: i64) -> Self {
        Self { exponent: exponent.rem_euclid(4) as u8 }
    }

    pub fn minus_i() -> Self {
        Self::new(3)
    }

    pub fn minus_one() -> Self {
        Self::new(2)
    }

    pub fn one() -> Self {
        Self::new(0)
    }

    /// `A = i^e`.
    pub fn exponent(&self) -> u8 {
        self.exponent
    }

    /// The Gaussian form of an exact root (`b` in `{1, 2}`).
    pub fn from_root(root: RootOfUnity) -> Option<Self> {
        match root.b() {
            1 => Some(Self::new(2 * root.a())),
            2 => Some(Self::new(root.a())),
            _ => None,
        }
    }
}

impl Parameter for GaussianRoot {
    type Scalar = GaussianInt;
    fn a_pow(&self, k: i64) -> GaussianInt {
        GaussianInt::i_pow(self.exponent as i64 * k)
    }
    fn root(&self) -> Option<RootOfUnity> {
        let (a, b) = match self.exponent {
            0 => (0, 1),
            1 => (1, 2),
            2 => (1, 1),
            _ => (-1, 2),
        };
        Some(RootOfUnity::new(a, b).expect("reduced"))
    }
}

impl fmt::Display for GaussianRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = ["1", "i", "-1", "-i"][self.exponent as usize];
        write!(f, "A={name}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::specialize;

    #[test]
    fn gaussian_root_agrees_with_specialize() {
        for root in ["0/1", "1/1", "1/2", "-1/2", "3/2", "-3/1"] {
            let root: RootOfUnity = root.parse().unwrap();
            let g = GaussianRoot::from_root(root).unwrap();
            assert_eq!(g.root().unwrap().power(1), root.power(1));
            for k in -5..=5 {
                let want = specialize(&LaurentPoly::a_pow(k), root);
                assert_eq!(ExactScalar::Gaussian(g.a_pow(k)), want, "root {root} k {k}");
            }
        }
        assert!(GaussianRoot::from_root(RootOfUnity::new(1, 3).unwrap()).is_none());
    }
}
