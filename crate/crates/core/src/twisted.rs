//! The degree-zero part of `K(T, -1) ⊗ 𝒜` on the torus and the map
//! `φ(γ) = (-1)^{n(γ)} γ ⊗ [γ]` from the skein algebra at `A = -i`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ExactScalar, GaussianInt};
use crate::heis::{basis_product, heis_class};
use crate::scalar::{HasImaginaryUnit, Ring};
use crate::torus::{skein_mul, GaussianRoot, SkeinElement, SkeinError, TorusMulticurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("φ is defined on the skein algebra at A=-i, got {0}")]
    WrongSpecialization(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

/// Heisenberg class of a multicurve on the torus, with the sign of `[γ]`
/// relative to its 0/1 lift.
///
/// The curve `p m + q l` enters the lattice as `(p, -q)`: with the relation
/// `LM = A^2 ML` this is the orientation of the intersection form under
/// which φ is multiplicative.
pub fn curve_class(c: &TorusMulticurve) -> ([u8; 2], i64) {
    let (hp, hq) = c.homology();
    let (class, sign) = heis_class(&[hp, -hq]);
    ([class[0], class[1]], sign)
}

/// Element of the graded tensor product, stored as
/// `(multicurve, class) -> coefficient` in `Z[i]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwistedElement {
    terms: BTreeMap<(TorusMulticurve, [u8; 2]), GaussianInt>,
}

impl TwistedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([((TorusMulticurve::Empty, [0, 0]), GaussianInt::i_pow(0))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((TorusMulticurve, [u8; 2]), GaussianInt)>) -> Self {
        let mut x = Self::zero();
        for (k, v) in terms {
            x.add_term(k, v);
        }
        x
    }

    fn add_term(&mut self, key: (TorusMulticurve, [u8; 2]), v: GaussianInt) {
        if v.is_negligible(0.0) {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_negligible(0.0) {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(TorusMulticurve, [u8; 2]), &GaussianInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &GaussianInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * s)))
    }

    /// Every term sits in total degree zero: the mod 2 class of the curve
    /// equals the Heisenberg class.
    pub fn is_degree_zero(&self) -> bool {
        self.terms.keys().all(|(c, h)| {
            let (a, b) = c.grading();
            *h == [a, b]
        })
    }

    pub fn to_records(&self) -> Vec<TwistedTerm> {
        self.terms
            .iter()
            .map(|((curve, class), v)| TwistedTerm {
                curve: *curve,
                class: *class,
                coeff: ExactScalar::Gaussian(v.clone()),
            })
            .collect()
    }
}

/// JSON record `{"curve": ..., "class": [a, b], "coeff": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwistedTerm {
    pub curve: TorusMulticurve,
    pub class: [u8; 2],
    pub coeff: ExactScalar,
}

fn check_minus_i<P: std::fmt::Display>(param: &P, ok: bool) -> Result<(), TwistedError> {
    if ok {
        Ok(())
    } else {
        Err(TwistedError::WrongSpecialization(param.to_string()))
    }
}

/// Linear extension of `γ ↦ (-1)^{n(γ)} γ ⊗ [γ]`.
pub fn phi_map(x: &SkeinElement<GaussianRoot>) -> Result<TwistedElement, TwistedError> {
    check_minus_i(x.param(), *x.param() == GaussianRoot::minus_i())?;
    let mut out = TwistedElement::zero();
    for (c, v) in x.terms() {
        let (class, sign) = curve_class(c);
        let n = c.components() as i64;
        let s = if n % 2 == 0 { sign } else { -sign };
        out.add_term((*c, class), v.mul_int(s));
    }
    Ok(out)
}

/// Product cache for pairs of basis multicurves in `K(T, -1)`.
#[derive(Default)]
pub struct MinusOneProducts {
    cache: HashMap<(TorusMulticurve, TorusMulticurve), SkeinElement<GaussianRoot>>,
}

impl MinusOneProducts {
    pub fn product(&mut self, a: TorusMulticurve, b: TorusMulticurve) -> Result<&SkeinElement<GaussianRoot>, SkeinError> {
        if !self.cache.contains_key(&(a, b)) {
            let p = GaussianRoot::minus_one();
            let prod = skein_mul(&SkeinElement::curve(p, a), &SkeinElement::curve(p, b))?;
            self.cache.insert((a, b), prod);
        }
        Ok(&self.cache[&(a, b)])
    }
}

/// `(γ ⊗ h)(δ ⊗ k) = (γδ at A=-1) ⊗ hk`, extended bilinearly.
pub fn twisted_mul(x: &TwistedElement, y: &TwistedElement) -> Result<TwistedElement, TwistedError> {
    twisted_mul_cached(x, y, &mut MinusOneProducts::default())
}

pub fn twisted_mul_cached(
    x: &TwistedElement,
    y: &TwistedElement,
    products: &mut MinusOneProducts,
) -> Result<TwistedElement, TwistedError> {
    let mut out = TwistedElement::zero();
    for ((c1, h1), u) in &x.terms {
        for ((c2, h2), v) in &y.terms {
            let (h, k) = basis_product(h1, h2);
            let phase = u * v * GaussianInt::i_pow(k);
            let class = [h[0], h[1]];
            for (c, w) in products.product(*c1, *c2)?.terms() {
                out.add_term((*c, class), w * &phase);
            }
        }
    }
    Ok(out)
}

/// Both sides of `φ(xy) = φ(x) φ(y)`.
pub fn iso_sides(
    x: &SkeinElement<GaussianRoot>,
    y: &SkeinElement<GaussianRoot>,
) -> Result<(TwistedElement, TwistedElement), TwistedError> {
    let lhs = phi_map(&skein_mul(x, y)?)?;
    let rhs = twisted_mul(&phi_map(x)?, &phi_map(y)?)?;
    Ok((lhs, rhs))
}

pub fn iso_check(x: &SkeinElement<GaussianRoot>, y: &SkeinElement<GaussianRoot>) -> Result<bool, TwistedError> {
    let (lhs, rhs) = iso_sides(x, y)?;
    Ok(lhs == rhs)
}

/// One row of the sweep report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsoReport {
    pub x: TorusMulticurve,
    pub y: TorusMulticurve,
    pub lhs: Vec<TwistedTerm>,
    pub rhs: Vec<TwistedTerm>,
    pub equal: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub max_d: u32,
    pub max_pq: i64,
    /// Multiply the right-hand side of this pair by `i`, to exercise the
    /// failure path.
    pub corrupt_phase: Option<(TorusMulticurve, TorusMulticurve)>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub pairs: usize,
    pub failures: Vec<IsoReport>,
}

/// Checks `φ(xy) = φ(x) φ(y)` on every pair of basis multicurves in the
/// bounds. Rows are split across threads by `x`; failures come back in
/// enumeration order.
pub fn iso_sweep(opts: &SweepOptions) -> Result<SweepOutcome, TwistedError> {
    let basis = TorusMulticurve::enumerate(opts.max_d, opts.max_pq);
    let p = GaussianRoot::minus_i();
    let rows: Vec<Result<Vec<IsoReport>, TwistedError>> = basis
        .par_iter()
        .map(|&a| {
            let mut products = MinusOneProducts::default();
            let x = SkeinElement::curve(p, a);
            let phi_x = phi_map(&x)?;
            let mut failures = Vec::new();
            for &b in &basis {
                let y = SkeinElement::curve(p, b);
                let lhs = phi_map(&skein_mul(&x, &y)?)?;
                let mut rhs = twisted_mul_cached(&phi_x, &phi_map(&y)?, &mut products)?;
                if opts.corrupt_phase == Some((a, b)) {
                    rhs = rhs.scale(&GaussianInt::i_pow(1));
                }
                if lhs != rhs {
                    failures.push(IsoReport { x: a, y: b, lhs: lhs.to_records(), rhs: rhs.to_records(), equal: false });
                }
            }
            Ok(failures)
        })
        .collect();
    let mut failures = Vec::new();
    for row in rows {
        failures.extend(row?);
    }
    Ok(SweepOutcome { pairs: basis.len() * basis.len(), failures })
}
