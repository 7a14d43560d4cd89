use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{specialize, LaurentPoly, RootOfUnity};
use crate::scalar::Ring;

use super::curve::TorusMulticurve;
use super::nctorus::{nc_mul, NcTorusElement};
use super::param::{Formal, GaussianRoot, Parameter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("operands live at different specializations: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("element is not invariant under (p,q) -> (-p,-q)")]
    NotSymmetric,
    #[error("element is not in the image of the skein algebra (remainder at {0:?})")]
    NotInImage((i64, i64)),
}

/// Element of the torus skein algebra `K(T, A)` in the multicurve basis.
#[derive(Clone, PartialEq)]
pub struct SkeinElement<P: Parameter> {
    param: P,
    terms: BTreeMap<TorusMulticurve, P::Scalar>,
}

impl<P: Parameter> SkeinElement<P> {
    pub fn zero(param: P) -> Self {
        Self { param, terms: BTreeMap::new() }
    }

    /// The empty multicurve with coefficient 1.
    pub fn unit(param: P) -> Self {
        Self::curve(param, TorusMulticurve::Empty)
    }

    pub fn curve(param: P, c: TorusMulticurve) -> Self {
        let one = param.a_pow(0);
        Self::from_terms(param, [(c, one)])
    }

    pub fn from_terms(param: P, terms: impl IntoIterator<Item = (TorusMulticurve, P::Scalar)>) -> Self {
        let mut x = Self::zero(param);
        for (c, v) in terms {
            x.add_term(c, v, 0.0);
        }
        x
    }

    fn add_term(&mut self, c: TorusMulticurve, v: P::Scalar, scale: f64) {
        if v.is_negligible(scale) {
            return;
        }
        match self.terms.remove(&c) {
            Some(old) => {
                let sum = old + v;
                if !sum.is_negligible(scale) {
                    self.terms.insert(c, sum);
                }
            }
            None => {
                self.terms.insert(c, v);
            }
        }
    }

    pub fn param(&self) -> &P {
        &self.param
    }

    pub fn coeff(&self, c: &TorusMulticurve) -> Option<&P::Scalar> {
        self.terms.get(c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TorusMulticurve, &P::Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn magnitude(&self) -> f64 {
        self.terms.values().map(Ring::magnitude).fold(0.0, f64::max)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SkeinError> {
        self.check_param(rhs)?;
        let mut out = self.clone();
        let scale = self.magnitude().max(rhs.magnitude());
        for (c, v) in &rhs.terms {
            out.add_term(*c, v.clone(), scale);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &P::Scalar) -> Self {
        let mut out = Self::zero(self.param.clone());
        let scale = self.magnitude() * s.magnitude();
        for (c, v) in &self.terms {
            out.add_term(*c, v.clone() * s.clone(), scale);
        }
        out
    }

    fn check_param(&self, rhs: &Self) -> Result<(), SkeinError> {
        if self.param != rhs.param {
            return Err(SkeinError::SpecMismatch(self.param.to_string(), rhs.param.to_string()));
        }
        Ok(())
    }

    /// Set of `H_1(T, Z_2)` classes of the supported multicurves.
    pub fn grading(&self) -> BTreeSet<(u8, u8)> {
        self.terms.keys().map(TorusMulticurve::grading).collect()
    }

    /// Apply a coefficient map, keeping the multicurve basis.
    pub fn map_coeffs<Q: Parameter>(&self, param: Q, f: impl Fn(&P::Scalar) -> Q::Scalar) -> SkeinElement<Q> {
        SkeinElement::from_terms(param, self.terms.iter().map(|(c, v)| (*c, f(v))))
    }
}

impl<P: Parameter> fmt::Debug for SkeinElement<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkeinElement[{}](", self.param)?;
        for (n, (c, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v:?}){c}")?;
        }
        write!(f, ")")
    }
}

impl SkeinElement<Formal> {
    /// Substitute `A = e^{i pi a/b}` into every coefficient.
    pub fn specialize(&self, root: RootOfUnity) -> SkeinElement<RootOfUnity> {
        self.map_coeffs(root, |v: &LaurentPoly| specialize(v, root))
    }
}

impl SkeinElement<RootOfUnity> {
    /// Exact Gaussian form, available when `A` is a fourth root of unity and
    /// every coefficient is exact.
    pub fn to_gaussian(&self) -> Option<SkeinElement<GaussianRoot>> {
        let g = GaussianRoot::from_root(self.param)?;
        let mut out = SkeinElement::zero(g);
        for (c, v) in &self.terms {
            out.add_term(*c, v.as_gaussian()?, 0.0);
        }
        Some(out)
    }
}

/// Record form used for JSON: `[{"curve": ..., "coeff": ...}]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeinTerm<S> {
    pub curve: TorusMulticurve,
    pub coeff: S,
}

impl<P: Parameter> SkeinElement<P>
where
    P::Scalar: Serialize,
{
    pub fn to_records(&self) -> Vec<SkeinTerm<P::Scalar>> {
        self.terms
            .iter()
            .map(|(c, v)| SkeinTerm { curve: *c, coeff: v.clone() })
            .collect()
    }
}

/// `-A^2 - A^{-2}`, the value of a null-homotopic loop.
pub fn trivial_loop_value<P: Parameter>(param: &P) -> P::Scalar {
    -(param.a_pow(2) + param.a_pow(-2))
}

/// `Phi(p,q) = A^{pq}(M^p L^q + M^{-p} L^{-q})`; `d` parallel copies map to
/// the `d`-th power and the empty multicurve to the unit.
pub fn phi<P: Parameter>(c: &TorusMulticurve, param: &P) -> NcTorusElement<P::Scalar> {
    match *c {
        TorusMulticurve::Empty => NcTorusElement::monomial(0, 0, param.a_pow(0)),
        TorusMulticurve::Curve { d, p, q } => {
            let w = param.a_pow(p * q);
            let base = NcTorusElement::from_terms([((p, q), w.clone()), ((-p, -q), w)]);
            let mut acc = base.clone();
            for _ in 1..d {
                acc = nc_mul(&acc, &base, param);
            }
            acc
        }
    }
}

/// Linear extension of [`phi`].
pub fn phi_element<P: Parameter>(x: &SkeinElement<P>) -> NcTorusElement<P::Scalar> {
    let mut out = NcTorusElement::zero();
    for (c, v) in &x.terms {
        out = out.add(&phi(c, &x.param).scale(v));
    }
    out
}

/// Inverse of `Phi` on the symmetric subalgebra, by triangular elimination.
///
/// The remaining monomial `M^P L^Q` of largest divisibility depth
/// `D = gcd(P, Q)` (ties: largest `(P, Q)`) can only come from the multicurve
/// `D (P/D, Q/D)`, whose image has leading coefficient `A^{PQ}` there; all
/// other monomials of that image have smaller depth.
pub fn phi_inverse<P: Parameter>(
    x: &NcTorusElement<P::Scalar>,
    param: &P,
) -> Result<SkeinElement<P>, SkeinError> {
    if !x.sub(&x.sigma()).is_zero() {
        return Err(SkeinError::NotSymmetric);
    }
    let mut work = x.clone();
    let mut out = SkeinElement::zero(param.clone());
    let mut cache: HashMap<TorusMulticurve, NcTorusElement<P::Scalar>> = HashMap::new();
    let scale = x.magnitude();

    while let Some(key) = pick_leading(&work) {
        let (hp, hq) = key;
        let curve = TorusMulticurve::from_class(hp, hq);
        let lead = work.coeff(hp, hq).cloned().expect("picked key is present");
        let c = lead * param.a_pow(-hp * hq);
        let image = cache.entry(curve).or_insert_with(|| phi(&curve, param));
        work = work.sub(&image.scale(&c));
        if work.coeff(hp, hq).is_some() {
            return Err(SkeinError::NotInImage(key));
        }
        out.add_term(curve, c, scale);
    }

    if !phi_element(&out).sub(x).is_zero() {
        return Err(SkeinError::NotInImage((0, 0)));
    }
    Ok(out)
}

fn pick_leading<R: Ring>(x: &NcTorusElement<R>) -> Option<(i64, i64)> {
    x.terms()
        .map(|(k, _)| k)
        .max_by_key(|&(p, q)| (p.gcd(&q), p, q))
}

/// Stacking product, computed through `Phi`.
pub fn skein_mul<P: Parameter>(x: &SkeinElement<P>, y: &SkeinElement<P>) -> Result<SkeinElement<P>, SkeinError> {
    x.check_param(y)?;
    let prod = nc_mul(&phi_element(x), &phi_element(y), &x.param);
    phi_inverse(&prod, &x.param)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExactScalar;
    use crate::torus::GaussianRoot;
    use num_traits::One;

    fn c(d: u32, p: i64, q: i64) -> TorusMulticurve {
        TorusMulticurve::new(d, p, q).unwrap()
    }

    fn formal(curve: TorusMulticurve) -> SkeinElement<Formal> {
        SkeinElement::curve(Formal, curve)
    }

    #[test]
    fn phi_of_meridian() {
        let want = NcTorusElement::from_terms([((1, 0), LaurentPoly::one()), ((-1, 0), LaurentPoly::one())]);
        assert_eq!(phi(&c(1, 1, 0), &Formal), want);
    }

    #[test]
    fn phi_of_empty_is_unit() {
        assert_eq!(
            phi(&TorusMulticurve::Empty, &Formal),
            NcTorusElement::monomial(0, 0, LaurentPoly::one())
        );
    }

    #[test]
    fn phi_of_two_meridians() {
        let want = NcTorusElement::from_terms([
            ((2, 0), LaurentPoly::one()),
            ((0, 0), LaurentPoly::constant(2)),
            ((-2, 0), LaurentPoly::one()),
        ]);
        assert_eq!(phi(&c(2, 1, 0), &Formal), want);
    }

    #[test]
    fn phi_of_slope_one_one() {
        let w = LaurentPoly::a_pow(1);
        let want = NcTorusElement::from_terms([((1, 1), w.clone()), ((-1, -1), w)]);
        assert_eq!(phi(&c(1, 1, 1), &Formal), want);
    }

    #[test]
    fn phi_inverse_examples() {
        let x = phi(&c(1, 1, 0), &Formal);
        assert_eq!(phi_inverse(&x, &Formal).unwrap(), formal(c(1, 1, 0)));

        let two = NcTorusElement::monomial(0, 0, LaurentPoly::constant(2));
        let want = SkeinElement::from_terms(Formal, [(TorusMulticurve::Empty, LaurentPoly::constant(2))]);
        assert_eq!(phi_inverse(&two, &Formal).unwrap(), want);

        let x = phi(&c(2, 1, 0), &Formal);
        assert_eq!(phi_inverse(&x, &Formal).unwrap(), formal(c(2, 1, 0)));
    }

    #[test]
    fn phi_inverse_rejects_asymmetric_input() {
        let x = NcTorusElement::monomial(1, 0, LaurentPoly::one());
        assert_eq!(phi_inverse(&x, &Formal), Err(SkeinError::NotSymmetric));
    }

    #[test]
    fn meridian_times_longitude() {
        // derived by expanding Phi(1,0) Phi(0,1) with LM = A^2 ML
        let prod = skein_mul(&formal(c(1, 1, 0)), &formal(c(1, 0, 1))).unwrap();
        let want = SkeinElement::from_terms(
            Formal,
            [(c(1, 1, 1), LaurentPoly::a_pow(-1)), (c(1, 1, -1), LaurentPoly::a_pow(1))],
        );
        assert_eq!(prod, want);
    }

    #[test]
    fn parallel_copies_stack() {
        let m = formal(c(1, 1, 0));
        assert_eq!(skein_mul(&m, &m).unwrap(), formal(c(2, 1, 0)));
    }

    #[test]
    fn empty_is_unit() {
        let x = SkeinElement::from_terms(
            Formal,
            [(c(1, 2, 3), LaurentPoly::a_pow(2)), (c(3, 0, 1), LaurentPoly::constant(-4))],
        );
        assert_eq!(skein_mul(&SkeinElement::unit(Formal), &x).unwrap(), x);
        assert_eq!(skein_mul(&x, &SkeinElement::unit(Formal)).unwrap(), x);
    }

    #[test]
    fn spec_mismatch() {
        let x = SkeinElement::curve(GaussianRoot::minus_i(), c(1, 1, 0));
        let y = SkeinElement::curve(GaussianRoot::minus_one(), c(1, 1, 0));
        assert!(matches!(skein_mul(&x, &y), Err(SkeinError::SpecMismatch(_, _))));
    }

    #[test]
    fn grading_examples() {
        assert_eq!(formal(c(1, 1, 0)).grading(), BTreeSet::from([(1, 0)]));
        assert_eq!(formal(c(2, 1, 0)).grading(), BTreeSet::from([(0, 0)]));
        let sum = formal(c(1, 1, 0)).add(&formal(c(1, 0, 1))).unwrap();
        assert_eq!(sum.grading(), BTreeSet::from([(1, 0), (0, 1)]));
    }

    #[test]
    fn float_specialization_roundtrip() {
        let root = RootOfUnity::new(2, 5).unwrap();
        let x = SkeinElement::curve(root, c(2, 1, 2));
        let y = SkeinElement::curve(root, c(1, 3, -1));
        let fx = formal(c(2, 1, 2));
        let fy = formal(c(1, 3, -1));
        let via_formal = skein_mul(&fx, &fy).unwrap().specialize(root);
        let direct = skein_mul(&x, &y).unwrap();
        assert_eq!(via_formal.len(), direct.len());
        for (curve, v) in via_formal.terms() {
            let w = direct.coeff(curve).expect("same support");
            let (v, w) = (v.to_complex().unwrap(), w.to_complex().unwrap());
            assert!((v - w).norm() < 1e-9, "{curve}: {v} vs {w}");
        }
    }

    #[test]
    fn trivial_loop_at_minus_i_is_two() {
        assert_eq!(trivial_loop_value(&RootOfUnity::minus_i()), ExactScalar::int(2));
        assert_eq!(trivial_loop_value(&RootOfUnity::minus_one()), ExactScalar::int(-2));
    }
}
