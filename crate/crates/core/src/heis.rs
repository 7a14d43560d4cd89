//! The twisted group algebra of `H_1(Σ, Z) = Z^{2g}`: generators `[γ]` with
//! `[γ]^2 = 1` and `[γ][δ] = i^{-γ·δ} [γ+δ]`.
//!
//! The algebra has one basis vector per class in `Z_2^{2g}`, stored by its
//! 0/1 lift.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, ExactScalar, GaussianInt};
use crate::scalar::HasImaginaryUnit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisError {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("class {0:?} has odd length or is not a 0/1 vector of length 2g")]
    BadClass(Vec<i64>),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("coefficient {0} is not in the target ring")]
    Coefficient(String),
}

/// The alternating form `γ·δ = Σ_k (γ_{2k-1} δ_{2k} - γ_{2k} δ_{2k-1})`.
pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    assert_eq!(x.len(), y.len(), "pairing of vectors of different lengths");
    x.chunks_exact(2)
        .zip(y.chunks_exact(2))
        .map(|(a, b)| a[0] * b[1] - a[1] * b[0])
        .sum()
}

/// Reduces `[γ]` to `±[γ̄]` with `γ̄` the 0/1 lift of `γ mod 2`.
///
/// Writing `γ = γ̄ + 2μ`, the relations give `[2μ] = 1` and hence
/// `[γ̄ + 2μ] = (-1)^{γ̄·μ} [γ̄]`. The sign is returned as `±1`.
pub fn heis_class(gamma: &[i64]) -> (Vec<u8>, i64) {
    let bar: Vec<i64> = gamma.iter().map(|x| x.rem_euclid(2)).collect();
    let mu: Vec<i64> = gamma.iter().zip(&bar).map(|(x, b)| (x - b) / 2).collect();
    let sign = if pairing(&bar, &mu).rem_euclid(2) == 0 { 1 } else { -1 };
    (bar.into_iter().map(|b| b as u8).collect(), sign)
}

fn lift(class: &[u8]) -> Vec<i64> {
    class.iter().map(|&b| b as i64).collect()
}

/// Element of the `4^g`-dimensional algebra.
#[derive(Clone, PartialEq)]
pub struct HeisElement<R: HasImaginaryUnit> {
    genus: usize,
    terms: BTreeMap<Vec<u8>, R>,
}

impl<R: HasImaginaryUnit> HeisElement<R> {
    pub fn zero(genus: usize) -> Self {
        Self { genus, terms: BTreeMap::new() }
    }

    pub fn one(genus: usize) -> Self {
        Self::from_terms(genus, [(vec![0; 2 * genus], R::one())])
    }

    /// The generator `[γ]` for an arbitrary integer vector, reduced to its
    /// canonical class.
    pub fn generator(genus: usize, gamma: &[i64]) -> Result<Self, HeisError> {
        if gamma.len() != 2 * genus {
            return Err(HeisError::BadClass(gamma.to_vec()));
        }
        let (class, sign) = heis_class(gamma);
        Ok(Self::from_terms(genus, [(class, R::one().mul_int(sign))]))
    }

    pub fn from_terms(genus: usize, terms: impl IntoIterator<Item = (Vec<u8>, R)>) -> Self {
        let mut x = Self::zero(genus);
        for (c, v) in terms {
            assert_eq!(c.len(), 2 * genus, "class length must be 2g");
            x.add_term(c, v);
        }
        x
    }

    fn add_term(&mut self, class: Vec<u8>, v: R) {
        let scale = self.terms.values().map(|c| c.magnitude()).fold(v.magnitude(), f64::max);
        if v.is_negligible(scale) {
            return;
        }
        match self.terms.remove(&class) {
            Some(old) => {
                let sum = old + v;
                if !sum.is_negligible(scale) {
                    self.terms.insert(class, sum);
                }
            }
            None => {
                self.terms.insert(class, v);
            }
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &R)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, class: &[u8]) -> Option<&R> {
        self.terms.get(class)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, HeisError> {
        check_genus(self, rhs)?;
        let mut out = self.clone();
        for (c, v) in &rhs.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &R) -> Self {
        Self::from_terms(self.genus, self.terms.iter().map(|(c, v)| (c.clone(), v.clone() * s.clone())))
    }
}

fn check_genus<R: HasImaginaryUnit>(x: &HeisElement<R>, y: &HeisElement<R>) -> Result<(), HeisError> {
    if x.genus != y.genus {
        return Err(HeisError::GenusMismatch(x.genus, y.genus));
    }
    Ok(())
}

/// Product of two canonical basis vectors: the reduced class of `γ̄ + δ̄`
/// and the exponent `k` of the phase `i^k`.
pub fn basis_product(x: &[u8], y: &[u8]) -> (Vec<u8>, i64) {
    let (gx, gy) = (lift(x), lift(y));
    let sum: Vec<i64> = gx.iter().zip(&gy).map(|(a, b)| a + b).collect();
    let (class, sign) = heis_class(&sum);
    let k = -pairing(&gx, &gy) + if sign < 0 { 2 } else { 0 };
    (class, k.rem_euclid(4))
}

pub fn heis_mul<R: HasImaginaryUnit>(x: &HeisElement<R>, y: &HeisElement<R>) -> Result<HeisElement<R>, HeisError> {
    check_genus(x, y)?;
    let mut out = HeisElement::zero(x.genus);
    for (a, u) in &x.terms {
        for (b, v) in &y.terms {
            let (class, k) = basis_product(a, b);
            out.add_term(class, u.clone() * v.clone() * R::i_pow(k));
        }
    }
    Ok(out)
}

/// The trace `tr([γ]) = δ_{γ = 0}`: the coefficient of the zero class.
pub fn heis_trace<R: HasImaginaryUnit>(x: &HeisElement<R>) -> R {
    x.terms.get(&vec![0u8; 2 * x.genus]).cloned().unwrap_or_else(R::zero)
}

impl<R: HasImaginaryUnit> fmt::Debug for HeisElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeisElement[g={}](", self.genus)?;
        for (n, (c, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v:?})[{c:?}]")?;
        }
        write!(f, ")")
    }
}

/// JSON form `{"genus": g, "terms": [{"class": [0,1,...], "coeff": ...}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeisJson {
    pub genus: usize,
    pub terms: Vec<HeisTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeisTermJson {
    pub class: Vec<u8>,
    pub coeff: ExactScalar,
}

impl<R: HasImaginaryUnit + Into<ExactScalar>> From<&HeisElement<R>> for HeisJson {
    fn from(x: &HeisElement<R>) -> Self {
        HeisJson {
            genus: x.genus,
            terms: x
                .terms
                .iter()
                .map(|(c, v)| HeisTermJson { class: c.clone(), coeff: v.clone().into() })
                .collect(),
        }
    }
}

impl TryFrom<HeisJson> for HeisElement<GaussianInt> {
    type Error = HeisError;

    fn try_from(j: HeisJson) -> Result<Self, HeisError> {
        let mut out = HeisElement::zero(j.genus);
        for t in j.terms {
            if t.class.len() != 2 * j.genus || t.class.iter().any(|&b| b > 1) {
                return Err(HeisError::BadClass(lift(&t.class)));
            }
            let v = t.coeff.as_gaussian().ok_or_else(|| HeisError::Coefficient(t.coeff.to_string()))?;
            out.add_term(t.class, v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    type H = HeisElement<GaussianInt>;

    fn gen(g: &[i64]) -> H {
        H::generator(g.len() / 2, g).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(BigInt::from(re), BigInt::from(im))
    }

    #[test]
    fn class_reduction_examples() {
        assert_eq!(heis_class(&[2, 0]), (vec![0, 0], 1));
        assert_eq!(heis_class(&[1, 0]), (vec![1, 0], 1));
        assert_eq!(heis_class(&[1, 2]), (vec![1, 0], -1));
        assert_eq!(heis_class(&[1, -1]), (vec![1, 1], -1));
    }

    #[test]
    fn product_examples() {
        let e1e2 = heis_mul(&gen(&[1, 0]), &gen(&[0, 1])).unwrap();
        assert_eq!(e1e2, H::from_terms(1, [(vec![1, 1], gi(0, -1))]));
        let e2e1 = heis_mul(&gen(&[0, 1]), &gen(&[1, 0])).unwrap();
        assert_eq!(e2e1, H::from_terms(1, [(vec![1, 1], gi(0, 1))]));
        for g in [[1, 0], [0, 1], [1, 1]] {
            assert_eq!(heis_mul(&gen(&g), &gen(&g)).unwrap(), H::one(1));
        }
    }

    #[test]
    fn relation_holds_for_unreduced_vectors() {
        // [γ][δ] = i^{-γ·δ}[γ+δ] for vectors outside the 0/1 box
        let (g, d) = ([3, -1], [2, 5]);
        let lhs = heis_mul(&gen(&g), &gen(&d)).unwrap();
        let k = -pairing(&g, &d);
        let rhs = gen(&[5, 4]).scale(&GaussianInt::i_pow(k));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(heis_trace(&H::one(1)), GaussianInt::one());
        assert_eq!(heis_trace(&gen(&[1, 0])), gi(0, 0));
        let sq = heis_mul(&gen(&[1, 0]), &gen(&[1, 0])).unwrap();
        assert_eq!(heis_trace(&sq), GaussianInt::one());
    }

    #[test]
    fn genus_mismatch() {
        assert_eq!(
            heis_mul(&H::one(1), &H::one(2)),
            Err(HeisError::GenusMismatch(1, 2))
        );
    }

    #[test]
    fn json_roundtrip() {
        let x = gen(&[1, 2, 0, 1]).add(&H::one(2).scale(&gi(3, -1))).unwrap();
        let j = serde_json::to_string(&HeisJson::from(&x)).unwrap();
        assert!(j.starts_with(r#"{"genus":2,"terms":[{"class":[0,0,0,0]"#), "{j}");
        let back = H::try_from(serde_json::from_str::<HeisJson>(&j).unwrap()).unwrap();
        assert_eq!(back, x);
    }
}
