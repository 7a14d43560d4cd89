//! Traces of `(Ψ^t + Ψ^{-t})^d` at rational `t`, to set beside the TQFT
//! limits at other roots. No identity between the two is claimed.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::cis;
use crate::tqft::{torus_curve_limit, AdmissibleSequence, Q};

/// `s -> Σ c · e^{iπ k·x} s(x + v)` with rational `k` and `v`.
#[derive(Debug, Clone, Default)]
struct RationalOperator {
    terms: BTreeMap<([Q; 2], [Q; 2]), Complex<f64>>,
}

impl RationalOperator {
    fn identity() -> Self {
        let zero = Q::zero();
        let mut terms = BTreeMap::new();
        terms.insert(([zero, zero], [zero, zero]), Complex::new(1.0, 0.0));
        Self { terms }
    }

    /// `Ψ^t + Ψ^{-t}` for the slope `(p, q)`.
    fn curve(p: i64, q: i64, t: Q) -> Self {
        let (p, q) = (Q::from_integer(p), Q::from_integer(q));
        let two = Q::from_integer(2);
        let mut terms = BTreeMap::new();
        for s in [t, -t] {
            terms.insert(([two * s * q, -two * s * p], [-s * p, -s * q]), Complex::new(1.0, 0.0));
        }
        Self { terms }
    }

    fn compose(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((va, ka), ca) in &self.terms {
            for ((vb, kb), cb) in &other.terms {
                let dot = kb[0] * va[0] + kb[1] * va[1];
                let phase = cis(std::f64::consts::PI * dot.to_f64().expect("small rational"));
                let key = ([va[0] + vb[0], va[1] + vb[1]], [ka[0] + kb[0], ka[1] + kb[1]]);
                *out.terms.entry(key).or_insert_with(Complex::zero) += ca * cb * phase;
            }
        }
        out.terms.retain(|_, c| c.norm() > 1e-14);
        out
    }

    /// Terms whose shift lies in `2Z²` are multiplication operators after
    /// the cocycle; they are integrated over `[0, 2]²` with mass 1. Other
    /// shifts have no fixed points and contribute nothing.
    fn trace(&self) -> Complex<f64> {
        let mut total = Complex::zero();
        for ((v, k), c) in &self.terms {
            let half = [v[0] / Q::from_integer(2), v[1] / Q::from_integer(2)];
            if !half[0].is_integer() || !half[1].is_integer() {
                continue;
            }
            let k = [k[0] + half[1], k[1] - half[0]];
            total += c * mean_on_period(k[0]) * mean_on_period(k[1]);
        }
        total
    }
}

/// `(1/2) ∫_0^2 e^{iπ k x} dx`.
fn mean_on_period(k: Q) -> Complex<f64> {
    if k.is_zero() {
        return Complex::new(1.0, 0.0);
    }
    let kf = k.to_f64().expect("small rational");
    (cis(2.0 * std::f64::consts::PI * kf) - 1.0) / Complex::new(0.0, 2.0 * std::f64::consts::PI * kf)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootTraceRow {
    pub d: u32,
    pub operator_trace: [f64; 2],
    pub tqft_limit: f64,
}

/// For `d = 0..=max_d`, the trace of `(Ψ^t_(p,q) + Ψ^{-t}_(p,q))^d` and
/// `⟨d (p,q)⟩_θ` for the given sequence.
pub fn root_trace_experiment(p: i64, q: i64, t: Q, seq: &AdmissibleSequence, max_d: u32) -> Vec<RootTraceRow> {
    let step = RationalOperator::curve(p, q, t);
    let mut op = RationalOperator::identity();
    let mut rows = Vec::new();
    for d in 0..=max_d {
        let tr = op.trace();
        rows.push(RootTraceRow { d, operator_trace: [tr.re, tr.im], tqft_limit: torus_curve_limit(d, seq) });
        op = op.compose(&step);
    }
    rows
}

/// `t` with `A = e^{-2iπt²}`, when `-a/(2b)` is the square of a rational.
pub fn time_for_root(a: i64, b: i64) -> Option<Q> {
    let x = Ratio::new(-a, 2 * b);
    if *x.numer() < 0 {
        return None;
    }
    let sq = |n: i64| {
        let r = (n as f64).sqrt().round() as i64;
        (r * r == n).then_some(r)
    };
    Some(Ratio::new(sq(*x.numer())?, sq(*x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::{operator_trace, TorusOperator};

    #[test]
    fn half_period_matches_exact_operator() {
        let seq = AdmissibleSequence::minus_i();
        for (p, q) in [(1, 0), (0, 1), (1, 1), (2, -1)] {
            let rows = root_trace_experiment(p, q, Q::new(1, 2), &seq, 5);
            for r in rows {
                let exact = operator_trace(&TorusOperator::curve_operator(p, q).pow(r.d));
                let e = exact.re.to_f64().unwrap();
                assert!((r.operator_trace[0] - e).abs() < 1e-9 && r.operator_trace[1].abs() < 1e-9, "{r:?}");
                assert!((r.operator_trace[0] - r.tqft_limit).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn times() {
        assert_eq!(time_for_root(-1, 2), Some(Q::new(1, 2)));
        assert_eq!(time_for_root(-1, 8), Some(Q::new(1, 4)));
        assert_eq!(time_for_root(1, 2), None);
        assert_eq!(time_for_root(-1, 3), None);
    }

    #[test]
    fn other_times_give_finite_traces() {
        let seq: AdmissibleSequence = "-1/8".parse().unwrap();
        let rows = root_trace_experiment(1, 0, Q::new(1, 4), &seq, 4);
        assert_eq!(rows[0].operator_trace, [1.0, 0.0]);
        assert!(rows.iter().all(|r| r.operator_trace.iter().all(|x| x.is_finite())));
    }
}
