use std::f64::consts::PI;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::graph::TrivalentGraph;
use super::polytope::{unit_rule, Polytope};
use super::sequence::{AdmissibleSequence, Q};
use crate::mc::{mc_mean, Estimate};

/// Fractional part of an exact rational, as a float in `[0, 1)`.
fn frac_f64(t: Q) -> f64 {
    (t - t.floor()).to_f64().expect("small rational")
}

/// Representatives of `Λ_B`: `μ in {0..B-1}^{d_G}` with even sums at every
/// vertex (loops counted twice); circles are unconstrained.
pub fn lambda_b_classes(g: &TrivalentGraph, big_b: u32) -> Vec<Vec<u32>> {
    let d = g.d();
    let total = (big_b as u64).pow(d as u32);
    let mut out = Vec::new();
    let mut mu = vec![0u32; d];
    for idx in 0..total {
        let mut r = idx;
        for x in mu.iter_mut() {
            *x = (r % big_b as u64) as u32;
            r /= big_b as u64;
        }
        if g.vertices().iter().all(|v| v.iter().map(|&e| mu[e]).sum::<u32>() % 2 == 0) {
            out.push(mu.clone());
        }
    }
    out
}

/// Whether `(m_e)` is zero in `H^1(G, Z_2)`: `Σ_e m_e μ_e` is even on
/// every cycle of a basis.
pub fn class_is_zero(g: &TrivalentGraph, m: &[u32]) -> bool {
    g.cycle_basis()
        .iter()
        .all(|c| c.iter().zip(m).map(|(&ce, &me)| ce as u32 * me).sum::<u32>() % 2 == 0)
}

/// `(1/B^{d_G}) Σ_{μ in Λ_B} F_μ(τ)`, with
/// `F_μ(τ) = Π_e (-2 cos(2π (a/b)(μ_e + 1) + π ζ τ_e))^{m_e}`.
struct LimitIntegrand {
    m: Vec<u32>,
    /// `2π (a/b)(μ_e + 1)` reduced mod `2π`, per class and edge.
    phases: Vec<Vec<f64>>,
    zeta: f64,
    norm: f64,
}

impl LimitIntegrand {
    fn new(g: &TrivalentGraph, m: &[u32], seq: &AdmissibleSequence) -> Self {
        let big_b = seq.big_b() as u32;
        let phases = lambda_b_classes(g, big_b)
            .into_iter()
            .map(|mu| {
                mu.iter()
                    .map(|&x| {
                        2.0 * PI * frac_f64(seq.base * Q::from_integer(x as i64 + 1))
                    })
                    .collect()
            })
            .collect();
        Self {
            m: m.to_vec(),
            phases,
            zeta: seq.zeta.to_f64().expect("small rational"),
            norm: (big_b as f64).powi(-(g.d() as i32)),
        }
    }

    fn eval(&self, tau: &[f64]) -> f64 {
        let sum: f64 = self
            .phases
            .iter()
            .map(|ph| {
                ph.iter()
                    .zip(tau)
                    .zip(&self.m)
                    .map(|((p, t), &me)| (-2.0 * (p + PI * self.zeta * t).cos()).powi(me as i32))
                    .product::<f64>()
            })
            .sum();
        sum * self.norm
    }
}

/// Monte Carlo estimate of `lim (2/p_n)^{d_G} tr Z_n`: uniform samples in
/// `[0,1]^{d_G}`, rejected outside `U_G`.
pub fn limit_trace(g: &TrivalentGraph, m: &[u32], seq: &AdmissibleSequence, samples: usize, seed: u64) -> Estimate {
    g.check_multiplicities(m).expect("one multiplicity per edge");
    let integrand = LimitIntegrand::new(g, m, seq);
    let region = Polytope::u_g(g);
    let d = g.d();
    if d == 0 {
        return Estimate::exact(integrand.eval(&[]));
    }
    mc_mean(samples, seed, |rng| {
        let tau: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        if region.contains(&tau) {
            integrand.eval(&tau)
        } else {
            0.0
        }
    })
}

/// Deterministic version of [`limit_trace`] by quadrature on `U_G`.
pub fn limit_trace_quadrature(g: &TrivalentGraph, m: &[u32], seq: &AdmissibleSequence, nodes: usize) -> f64 {
    g.check_multiplicities(m).expect("one multiplicity per edge");
    let integrand = LimitIntegrand::new(g, m, seq);
    Polytope::u_g(g).integrate(nodes, |tau| integrand.eval(tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceiMethod {
    /// The class of `(m_e)` is nonzero.
    Vanishing,
    /// Products of one-dimensional integrals (circle-only graphs).
    CentralBinomial,
    /// Gauss–Legendre on a triangulation of `U_G`.
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceiValue {
    pub value: f64,
    pub error: f64,
    pub method: TraceiMethod,
}

/// `∫_0^1 (2 cos π τ)^m dτ`: `C(m, m/2)` for even `m`, zero for odd `m`.
pub fn central_binomial_integral(m: u32) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let k = m / 2;
    (1..=k).fold(1.0, |acc, j| acc * (k + j) as f64 / j as f64)
}

/// The limit at `a/b = -1/2`, `ζ = 1`: zero unless `(m_e)` is zero in
/// `H^1(G, Z_2)`, otherwise `2^g / 2^{d_G} ∫_{U_G} Π_e (2 cos π τ_e)^{m_e}`
/// with `g = dim H^1(G, Z_2)`.
pub fn tracei_value(g: &TrivalentGraph, m: &[u32], samples: usize, seed: u64) -> TraceiValue {
    g.check_multiplicities(m).expect("one multiplicity per edge");
    if !class_is_zero(g, m) {
        return TraceiValue { value: 0.0, error: 0.0, method: TraceiMethod::Vanishing };
    }
    let factor = 2f64.powi(g.cycle_rank() as i32 - g.d() as i32);
    let integrand = |tau: &[f64]| -> f64 {
        tau.iter()
            .zip(m)
            .map(|(t, &me)| (2.0 * (PI * t).cos()).powi(me as i32))
            .product()
    };
    if g.edges() == 0 {
        let value = factor * m.iter().map(|&me| central_binomial_integral(me)).product::<f64>();
        return TraceiValue { value, error: 0.0, method: TraceiMethod::CentralBinomial };
    }
    if g.d() <= 3 {
        let nodes = 12 + m.iter().copied().max().unwrap_or(0) as usize;
        let region = Polytope::u_g(g);
        let coarse = region.integrate(nodes, integrand);
        let fine = region.integrate(2 * nodes, integrand);
        return TraceiValue {
            value: factor * fine,
            error: factor * (fine - coarse).abs(),
            method: TraceiMethod::Quadrature,
        };
    }
    let region = Polytope::u_g(g);
    let d = g.d();
    let est = mc_mean(samples, seed, |rng| {
        let tau: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        if region.contains(&tau) {
            integrand(&tau)
        } else {
            0.0
        }
    });
    TraceiValue { value: factor * est.value, error: factor * est.stderr, method: TraceiMethod::MonteCarlo }
}

/// `⟨d (p,q)⟩_θ` on the torus, by Gauss–Legendre on the single circle:
/// `(1/B) Σ_{μ=0}^{B-1} ∫_0^1 (-2 cos(2π (a/b)(μ+1) + π ζ τ))^d dτ`.
pub fn torus_curve_limit(d: u32, seq: &AdmissibleSequence) -> f64 {
    let big_b = seq.big_b();
    let zeta = seq.zeta.to_f64().expect("small rational");
    let rule = unit_rule(24 + 2 * d as usize);
    let mut total = 0.0;
    for mu in 0..big_b {
        let phase = 2.0 * PI * frac_f64(seq.base * Q::from_integer(mu + 1));
        for &(x, w) in &rule {
            total += w * (-2.0 * (phase + PI * zeta * x).cos()).powi(d as i32);
        }
    }
    total / big_b as f64
}
