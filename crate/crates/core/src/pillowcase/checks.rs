//! Pointwise and integral checks of the operator model, shared by the
//! tests and the command line.

use num_complex::Complex;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bundle::{cocycle, EquivariantSection, SectionEval, SectionFn};
use super::geometry::is_regular;
use super::operator::{curve_image, o_closed, o_op, operator_image, operator_trace, operator_trace_mc, psi_op, FlowLift};
use crate::mc::Estimate;
use crate::scalar::cis;
use crate::torus::{skein_mul, GaussianRoot, SkeinElement, TorusMulticurve};
use crate::tqft::{torus_curve_limit, AdmissibleSequence};

const BUMPS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub points: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    fn new(name: String, errors: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let (mut points, mut max_error) = (0, 0.0f64);
        for e in errors {
            points += 1;
            max_error = max_error.max(e);
        }
        Self { name, points, max_error, tolerance, passed: max_error <= tolerance }
    }
}

/// `n` uniform points of `[0, 2)²` at distance more than the singular
/// tolerance from the singular loci of all `curves`.
pub fn regular_points(seed: u64, n: usize, curves: &[(i64, i64)]) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = [rng.random_range(0.0..2.0), rng.random_range(0.0..2.0)];
        if curves.iter().all(|&(p, q)| is_regular(p, q, x)) {
            out.push(x);
        }
    }
    out
}

fn random_section(seed: u64) -> EquivariantSection<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ec7_1011);
    EquivariantSection::random(&mut rng, BUMPS)
}

/// `s(x + 2w) = e^{iπ(α w_2 - β w_1)} s(x)` and `s(-x) = s(x)` at random
/// points and translations.
pub fn equivariance_check(seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let errors = (0..n).map(|_| {
        let x = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
        let w = [rng.random_range(-3..=3), rng.random_range(-3..=3)];
        let shifted = s.eval([x[0] + 2.0 * w[0] as f64, x[1] + 2.0 * w[1] as f64]);
        let e1 = (shifted - cocycle(x, w) * s.eval(x)).norm();
        let e2 = (s.eval([-x[0], -x[1]]) - s.eval(x)).norm();
        e1.max(e2)
    });
    CheckReport::new("equivariance".into(), errors.collect::<Vec<_>>(), tol)
}

/// `Ψ^0_(p,q)` is the identity.
pub fn identity_check(p: i64, q: i64, seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let psi = psi_op(p, q, 0.0, &s, FlowLift::DoubleCover);
    let errors = regular_points(seed, n, &[(p, q)])
        .into_iter()
        .map(|x| (psi.eval(x) - s.eval(x)).norm());
    CheckReport::new(format!("identity ({p},{q}) t=0"), errors.collect::<Vec<_>>(), tol)
}

/// `Ψ_l^t Ψ_m^t = e^{-4iπt²} Ψ_m^t Ψ_l^t` pointwise.
pub fn commutation_check(t: f64, seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let lift = FlowLift::DoubleCover;
    let lm = psi_op(0, 1, t, psi_op(1, 0, t, &s, lift), lift);
    let ml = psi_op(1, 0, t, psi_op(0, 1, t, &s, lift), lift);
    let phase = cis(-4.0 * std::f64::consts::PI * t * t);
    let errors = regular_points(seed, n, &[(1, 0), (0, 1)])
        .into_iter()
        .map(|x| (lm.eval(x) - phase * ml.eval(x)).norm());
    CheckReport::new(format!("commutation t={t}"), errors.collect::<Vec<_>>(), tol)
}

fn power<'a>(p: i64, q: i64, t: f64, k: i64, s: SectionFn<'a, f64>) -> SectionFn<'a, f64> {
    let step = if k < 0 { -t } else { t };
    (0..k.abs()).fold(s, |acc, _| psi_op(p, q, step, acc, FlowLift::DoubleCover))
}

/// `Ψ^t_(p,q) = e^{-2iπt² pq} (Ψ_m^t)^p (Ψ_l^t)^q` pointwise.
pub fn slope_check(p: i64, q: i64, t: f64, seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let lhs = psi_op(p, q, t, &s, FlowLift::DoubleCover);
    let rhs = power(1, 0, t, p, power(0, 1, t, q, SectionFn::of(&s)));
    let phase = cis(-2.0 * std::f64::consts::PI * t * t * (p * q) as f64);
    let errors = regular_points(seed, n, &[(p, q), (1, 0), (0, 1)])
        .into_iter()
        .map(|x| (lhs.eval(x) - phase * rhs.eval(x)).norm());
    CheckReport::new(format!("slope ({p},{q}) t={t}"), errors.collect::<Vec<_>>(), tol)
}

/// `Ψ^{1/2} + Ψ^{-1/2} = tr ρ(γ) [γ] s(γ^# ρ)`, for both lifts of the flow.
pub fn closed_form_check(p: i64, q: i64, seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let closed = o_closed(p, q, &s);
    let dc = o_op(p, q, 1, &s, FlowLift::DoubleCover);
    let pc = o_op(p, q, 1, &s, FlowLift::Pillowcase);
    let errors = regular_points(seed, n, &[(p, q)]).into_iter().map(|x| {
        let c = closed.eval(x);
        (dc.eval(x) - c).norm().max((pc.eval(x) - c).norm())
    });
    CheckReport::new(format!("closed form ({p},{q})"), errors.collect::<Vec<_>>(), tol)
}

/// `O_(1,0) ∘ O_(0,1)` against the operator of the skein product
/// `(1,0)·(0,1)` at `A = -i`.
pub fn kauffman_check(seed: u64, n: usize, tol: f64) -> CheckReport {
    let s = random_section(seed);
    let root = GaussianRoot::minus_i();
    let m = TorusMulticurve::simple(1, 0).expect("primitive");
    let l = TorusMulticurve::simple(0, 1).expect("primitive");
    let prod = skein_mul(&SkeinElement::curve(root, m), &SkeinElement::curve(root, l)).expect("same parameter");
    let image = operator_image(&prod).expect("at -i").apply(&s);
    let composed = o_op(1, 0, 1, o_op(0, 1, 1, &s, FlowLift::DoubleCover), FlowLift::DoubleCover);
    let errors = regular_points(seed, n, &[(1, 0), (0, 1), (1, 1), (1, -1)])
        .into_iter()
        .map(|x| (composed.eval(x) - image.eval(x)).norm());
    CheckReport::new("kauffman product (1,0)(0,1)".into(), errors.collect::<Vec<_>>(), tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub curve: TorusMulticurve,
    /// Constant coefficient of the zero-shift multiplier, `[re, im]`.
    pub exact: [f64; 2],
    pub monte_carlo: Estimate,
    pub monte_carlo_im: Estimate,
    /// `⟨γ⟩_θ` from the TQFT limit along `θ_n = -1/2 + 1/(4n)`.
    pub tqft_limit: f64,
    pub passed: bool,
}

/// `tr O_γ` exactly and by Monte Carlo against the TQFT limit, the latter
/// within `k` standard errors.
pub fn trace_check(curve: TorusMulticurve, samples: usize, seed: u64, k: f64) -> TraceReport {
    let op = curve_image(&curve);
    let exact = operator_trace(&op);
    let exact = [exact.re.to_f64().unwrap_or(f64::NAN), exact.im.to_f64().unwrap_or(f64::NAN)];
    let mc = operator_trace_mc(&op, samples, seed);
    let tqft_limit = torus_curve_limit(curve.components(), &AdmissibleSequence::minus_i());
    let passed = mc.re.agrees(tqft_limit, k, 1e-12)
        && mc.im.agrees(0.0, k, 1e-12)
        && (Complex::new(exact[0], exact[1]) - tqft_limit).norm() < 1e-9;
    TraceReport { curve, exact, monte_carlo: mc.re, monte_carlo_im: mc.im, tqft_limit, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivariant_sections() {
        let r = equivariance_check(1, 1000, 1e-12);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn zero_time() {
        for (p, q) in [(1, 0), (2, -3)] {
            let r = identity_check(p, q, 9, 50, 1e-12);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn commutation_phases() {
        for t in [0.1, 0.25, 0.4, 0.5] {
            let r = commutation_check(t, 7, 100, 1e-9);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn slope_relation() {
        for (p, q) in [(1, 1), (2, 1), (1, -1), (-1, 2), (3, -2)] {
            for t in [0.1, 0.5] {
                let r = slope_check(p, q, t, 11, 50, 1e-9);
                assert!(r.passed, "{r:?}");
            }
        }
    }

    #[test]
    fn closed_forms() {
        for (p, q) in [(1, 0), (0, 1), (1, 1), (1, -2)] {
            let r = closed_form_check(p, q, 3, 100, 1e-9);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn kauffman_product() {
        let r = kauffman_check(5, 100, 1e-9);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn traces() {
        let r = trace_check(TorusMulticurve::new(2, 1, 0).unwrap(), 50_000, 1, 3.0);
        assert!(r.passed && r.exact == [2.0, 0.0], "{r:?}");
        let r = trace_check(TorusMulticurve::Empty, 1000, 1, 3.0);
        assert!(r.passed && r.monte_carlo.value == 1.0, "{r:?}");
    }
}
