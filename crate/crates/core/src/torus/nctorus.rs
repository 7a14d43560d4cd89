use std::collections::BTreeMap;

use crate::scalar::Ring;

use super::param::Parameter;

/// Element of the noncommutative torus `R<L^{±1}, M^{±1}>/(LM = A^2 ML)`,
/// stored in the normal-ordered basis `M^p L^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcTorusElement<R: Ring> {
    terms: BTreeMap<(i64, i64), R>,
}

impl<R: Ring> Default for NcTorusElement<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<R: Ring> NcTorusElement<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c M^p L^q`.
    pub fn monomial(p: i64, q: i64, c: R) -> Self {
        let mut x = Self::zero();
        x.add_term((p, q), c, 0.0);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), R)>) -> Self {
        let mut x = Self::zero();
        for (k, c) in terms {
            x.add_term(k, c, 0.0);
        }
        x
    }

    pub(crate) fn add_term(&mut self, key: (i64, i64), c: R, scale: f64) {
        if c.is_negligible(scale) {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_negligible(scale) {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, p: i64, q: i64) -> Option<&R> {
        self.terms.get(&(p, q))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &R)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        let scale = self.magnitude().max(rhs.magnitude());
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone(), scale);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        let scale = self.magnitude().max(rhs.magnitude());
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone(), scale);
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        let scale = self.magnitude() * c.magnitude();
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone() * c.clone(), scale);
        }
        out
    }

    /// Largest coefficient size, used as the pruning scale for floats.
    pub fn magnitude(&self) -> f64 {
        self.terms.values().map(Ring::magnitude).fold(0.0, f64::max)
    }

    /// The involution `M^p L^q -> M^{-p} L^{-q}` applied to coefficients.
    pub fn sigma(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|((p, q), c)| ((-p, -q), c.clone())).collect(),
        }
    }

    /// Whether `coeff(p, q) = coeff(-p, -q)` for every monomial.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|((p, q), c)| self.terms.get(&(-p, -q)).is_some_and(|d| d == c))
    }

    /// Approximate equality for float coefficient rings; exact rings compare
    /// structurally.
    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        let diff = self.sub(rhs);
        let scale = self.magnitude().max(rhs.magnitude()).max(1.0);
        diff.terms.values().all(|c| c.magnitude() <= tol * scale)
    }
}

/// Product in the noncommutative torus:
/// `(M^p L^q)(M^r L^s) = A^{2qr} M^{p+r} L^{q+s}`, extended bilinearly.
pub fn nc_mul<P: Parameter>(
    x: &NcTorusElement<P::Scalar>,
    y: &NcTorusElement<P::Scalar>,
    param: &P,
) -> NcTorusElement<P::Scalar> {
    let mut out = NcTorusElement::zero();
    let scale = x.magnitude() * y.magnitude();
    for ((p, q), a) in &x.terms {
        for ((r, s), b) in &y.terms {
            let c = a.clone() * b.clone() * param.a_pow(2 * q * r);
            out.add_term((p + r, q + s), c, scale);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPoly;
    use crate::torus::Formal;
    use num_traits::One;

    type T = NcTorusElement<LaurentPoly>;

    fn mono(p: i64, q: i64) -> T {
        T::monomial(p, q, LaurentPoly::one())
    }

    #[test]
    fn m_then_l_is_normal_ordered() {
        assert_eq!(nc_mul(&mono(1, 0), &mono(0, 1), &Formal), mono(1, 1));
    }

    #[test]
    fn l_then_m_picks_up_a_squared() {
        let want = T::monomial(1, 1, LaurentPoly::a_pow(2));
        assert_eq!(nc_mul(&mono(0, 1), &mono(1, 0), &Formal), want);
    }

    #[test]
    fn l_then_m_inverse() {
        let want = T::monomial(-1, 1, LaurentPoly::a_pow(-2));
        assert_eq!(nc_mul(&mono(0, 1), &mono(-1, 0), &Formal), want);
    }

    #[test]
    fn sigma_symmetry() {
        let x = mono(2, 1).add(&mono(-2, -1));
        assert!(x.is_symmetric());
        assert!(!mono(1, 0).is_symmetric());
        assert_eq!(x.sigma(), x);
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = mono(1, 1).sub(&mono(1, 1));
        assert!(x.is_zero());
    }
}
