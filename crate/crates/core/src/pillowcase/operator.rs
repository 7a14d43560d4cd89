use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bundle::{SectionEval, SectionFn};
use super::geometry::slope_phase;
use super::PillowcaseError;
use crate::arith::GaussianInt;
use crate::mc::{mc_mean, Estimate};
use crate::scalar::{cis, HasImaginaryUnit, Real};
use crate::torus::{GaussianRoot, SkeinElement, TorusMulticurve};

/// Which lift of the twist flow `Ψ^t` transports along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowLift {
    /// Translation by `2t(-q, p)` on the plane: the flow of the oriented
    /// Hamiltonian `pα + qβ`.
    #[default]
    DoubleCover,
    /// The Hamiltonian flow of `F_γ` on the pillowcase, whose direction
    /// flips with the sign of `sin π u`.
    Pillowcase,
}

/// `(Ψ^t s)(x) = e^{-iπ t u} s(α + 2tq, β - 2tp)`, the value at the flowed
/// back point transported along the flow.
pub fn psi_op<'a, F: Real, S: SectionEval<F> + 'a>(p: i64, q: i64, t: F, s: S, lift: FlowLift) -> SectionFn<'a, F> {
    let two = F::of(2.0);
    let (pf, qf) = (F::of(p as f64), F::of(q as f64));
    SectionFn::new(move |x| {
        let u = slope_phase(p, q, x);
        let t = match lift {
            FlowLift::DoubleCover => t,
            FlowLift::Pillowcase => t * (F::PI() * u).sin().signum(),
        };
        cis(-F::PI() * t * u) * s.eval([x[0] + two * t * qf, x[1] - two * t * pf])
    })
}

/// `O_γ^d` with `O_γ = Ψ^{1/2} + Ψ^{-1/2}`.
pub fn o_op<'a, F: Real, S: SectionEval<F> + 'a>(p: i64, q: i64, d: u32, s: S, lift: FlowLift) -> SectionFn<'a, F> {
    let half = F::of(0.5);
    let mut cur = SectionFn::of(s);
    for _ in 0..d {
        cur = psi_op(p, q, half, cur.clone(), lift).add(&psi_op(p, q, -half, cur, lift));
    }
    cur
}

/// `(O_γ s)(x) = tr ρ(γ) · e^{iπu/2} s(x + (q, -p))`: the trace times the
/// Heisenberg phase times the value at `γ^# ρ`.
pub fn o_closed<'a, F: Real, S: SectionEval<F> + 'a>(p: i64, q: i64, s: S) -> SectionFn<'a, F> {
    let (pf, qf) = (F::of(p as f64), F::of(q as f64));
    SectionFn::new(move |x| {
        let u = slope_phase(p, q, x);
        let tr = F::of(2.0) * (F::PI() * u).cos();
        cis(F::PI() * u * F::of(0.5)) * s.eval([x[0] + qf, x[1] - pf]) * tr
    })
}

/// Operator `s -> Σ c · e^{iπ k·x/2} s(x + v)` with Gaussian integer
/// coefficients. Shifts are reduced to `v in {0,1}²` using the cocycle,
/// which makes the expansion unique; the zero-shift part is then a
/// multiplication operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusOperator {
    terms: BTreeMap<([i64; 2], [i64; 2]), GaussianInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub shift: [i64; 2],
    /// Frequencies in units of `π/2`.
    pub freq: [i64; 2],
    pub coeff: [String; 2],
}

impl TorusOperator {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::term([0, 0], [0, 0], GaussianInt::one())
    }

    /// One term, reduced.
    pub fn term(shift: [i64; 2], freq: [i64; 2], coeff: GaussianInt) -> Self {
        let mut out = Self::zero();
        out.push(shift, freq, coeff);
        out
    }

    /// `s(x + v + 2w) = e^{iπ(α w_2 - β w_1)} (-1)^{v_1 w_2 - v_2 w_1} s(x + v)`.
    fn push(&mut self, shift: [i64; 2], freq: [i64; 2], coeff: GaussianInt) {
        let w = [shift[0].div_euclid(2), shift[1].div_euclid(2)];
        let v = [shift[0].rem_euclid(2), shift[1].rem_euclid(2)];
        let k = [freq[0] + 2 * w[1], freq[1] - 2 * w[0]];
        let coeff = if (v[0] * w[1] - v[1] * w[0]).rem_euclid(2) == 1 { -coeff } else { coeff };
        let slot = self.terms.entry((v, k)).or_insert_with(GaussianInt::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&(v, k));
        }
    }

    /// `O_(p,q) = Ψ^{1/2} + Ψ^{-1/2}`.
    pub fn curve_operator(p: i64, q: i64) -> Self {
        let mut out = Self::term([q, -p], [-p, -q], GaussianInt::one());
        out.push([-q, p], [p, q], GaussianInt::one());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((v, k), c) in &other.terms {
            out.push(*v, *k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianInt) -> Self {
        let mut out = Self::zero();
        for ((v, k), x) in &self.terms {
            out.push(*v, *k, x.clone() * c.clone());
        }
        out
    }

    /// `self ∘ other`: `e^{iπ k_a·x/2} (e^{iπ k_b·x/2} s)(x + v_a)` picks up
    /// `i^{k_b·v_a}`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((va, ka), ca) in &self.terms {
            for ((vb, kb), cb) in &other.terms {
                let phase = GaussianInt::i_pow(kb[0] * va[0] + kb[1] * va[1]);
                out.push(
                    [va[0] + vb[0], va[1] + vb[1]],
                    [ka[0] + kb[0], ka[1] + kb[1]],
                    ca.clone() * cb.clone() * phase,
                );
            }
        }
        out
    }

    pub fn pow(&self, d: u32) -> Self {
        (0..d).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; 2], &[i64; 2], &GaussianInt)> {
        self.terms.iter().map(|((v, k), c)| (v, k, c))
    }

    pub fn to_records(&self) -> Vec<OperatorTerm> {
        self.terms()
            .map(|(v, k, c)| OperatorTerm { shift: *v, freq: *k, coeff: [c.re.to_string(), c.im.to_string()] })
            .collect()
    }

    pub fn apply<'a, F: Real, S: SectionEval<F> + 'a>(&self, s: S) -> SectionFn<'a, F> {
        let terms: Vec<([F; 2], [F; 2], Complex<F>)> = self
            .terms()
            .map(|(v, k, c)| {
                let f = |x: &BigInt| F::of(x.to_f64().expect("coefficient fits in f64"));
                ([F::of(v[0] as f64), F::of(v[1] as f64)], [F::of(k[0] as f64), F::of(k[1] as f64)], Complex::new(f(&c.re), f(&c.im)))
            })
            .collect();
        SectionFn::new(move |x| {
            terms
                .iter()
                .map(|(v, k, c)| {
                    let arg = F::PI() * F::of(0.5) * (k[0] * x[0] + k[1] * x[1]);
                    *c * cis(arg) * s.eval([x[0] + v[0], x[1] + v[1]])
                })
                .fold(Complex::new(F::zero(), F::zero()), |acc, z| acc + z)
        })
    }

    /// The zero-shift part, evaluated as a function.
    pub fn multiplier(&self, x: [f64; 2]) -> Complex<f64> {
        self.terms
            .range(([0, 0], [i64::MIN, i64::MIN])..=([0, 0], [i64::MAX, i64::MAX]))
            .map(|((_, k), c)| {
                let c = Complex::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
                c * cis(std::f64::consts::FRAC_PI_2 * (k[0] as f64 * x[0] + k[1] as f64 * x[1]))
            })
            .sum()
    }
}

impl fmt::Display for TorusOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, k, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({} + {}i)·e[{},{}]·T[{},{}]", c.re, c.im, k[0], k[1], v[0], v[1])?;
        }
        Ok(())
    }
}

/// The operator of a skein element at `A = -i`: a multicurve `d (p,q)`
/// goes to `O_(p,q)^d`.
pub fn operator_image(x: &SkeinElement<GaussianRoot>) -> Result<TorusOperator, PillowcaseError> {
    if *x.param() != GaussianRoot::minus_i() {
        return Err(PillowcaseError::NotAtMinusI(x.param().to_string()));
    }
    let mut out = TorusOperator::zero();
    for (c, coeff) in x.terms() {
        let op = match *c {
            TorusMulticurve::Empty => TorusOperator::identity(),
            TorusMulticurve::Curve { d, p, q } => TorusOperator::curve_operator(p, q).pow(d),
        };
        out = out.add(&op.scale(coeff));
    }
    Ok(out)
}

/// `O_γ` for a single multicurve.
pub fn curve_image(c: &TorusMulticurve) -> TorusOperator {
    let x = SkeinElement::curve(GaussianRoot::minus_i(), *c);
    operator_image(&x).expect("at -i")
}

/// Exact geometric trace: shifted terms have isolated fixed points and
/// contribute nothing; the zero-shift multiplier integrates to its
/// constant coefficient against the normalized Liouville measure.
pub fn operator_trace(op: &TorusOperator) -> GaussianInt {
    op.terms.get(&([0, 0], [0, 0])).cloned().unwrap_or_else(GaussianInt::zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEstimate {
    pub re: Estimate,
    pub im: Estimate,
}

/// Monte Carlo trace: the Liouville integral of the zero-shift multiplier.
pub fn operator_trace_mc(op: &TorusOperator, samples: usize, seed: u64) -> ComplexEstimate {
    ComplexEstimate {
        re: liouville_integral(|x| op.multiplier(x).re, samples, seed),
        im: liouville_integral(|x| op.multiplier(x).im, samples, seed),
    }
}

/// `∫ f dλ`, the Liouville measure normalized to total volume 1: the
/// mean of `f` over the double cover `[0, 2]²`.
pub fn liouville_integral<G: Fn([f64; 2]) -> f64 + Sync>(f: G, samples: usize, seed: u64) -> Estimate {
    mc_mean(samples, seed, |rng| {
        let x = [rng.random::<f64>() * 2.0, rng.random::<f64>() * 2.0];
        f(x)
    })
}

/// Deterministic version of [`liouville_integral`]: the `n × n` periodic
/// trapezoid rule on `[0, 2)²`, exact for trigonometric polynomials in
/// `πα, πβ` of degree below `n`.
pub fn liouville_quadrature<G: Fn([f64; 2]) -> f64>(f: G, n: usize) -> f64 {
    let h = 2.0 / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += f([i as f64 * h, j as f64 * h]);
        }
    }
    total / (n * n) as f64
}
