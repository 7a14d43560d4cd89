use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::graph::TrivalentGraph;
use super::limit::{limit_trace, torus_curve_limit};
use super::sequence::AdmissibleSequence;
use crate::arith::RootOfUnity;
use crate::torus::{skein_mul, SkeinElement, SkeinError, TorusMulticurve};

/// How `⟨d (p,q)⟩_θ` is evaluated on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitMethod {
    Quadrature,
    MonteCarlo { samples: usize, seed: u64 },
}

/// The linear form `⟨·⟩_θ` on the torus skein algebra. On the torus the
/// limit of a multicurve depends only on its number of components.
pub struct TorusTraceForm {
    seq: AdmissibleSequence,
    method: LimitMethod,
    cache: HashMap<u32, f64>,
}

impl TorusTraceForm {
    pub fn new(seq: AdmissibleSequence, method: LimitMethod) -> Self {
        Self { seq, method, cache: HashMap::new() }
    }

    pub fn curve(&mut self, c: &TorusMulticurve) -> f64 {
        let d = c.components();
        let (seq, method) = (self.seq, self.method);
        *self.cache.entry(d).or_insert_with(|| match method {
            LimitMethod::Quadrature => torus_curve_limit(d, &seq),
            LimitMethod::MonteCarlo { samples, seed } => {
                limit_trace(&TrivalentGraph::torus(), &[d], &seq, samples, seed).value
            }
        })
    }

    pub fn eval(&mut self, x: &SkeinElement<RootOfUnity>) -> Complex<f64> {
        x.terms()
            .map(|(c, v)| v.to_complex().expect("numeric coefficient") * self.curve(c))
            .sum()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramReport {
    pub labels: Vec<String>,
    /// `M_{xy} = ⟨x y⟩_θ` as `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
    /// `(M + M^*)/2`.
    pub hermitian: Vec<Vec<[f64; 2]>>,
    /// Ascending spectrum of the Hermitian part.
    pub eigenvalues: Vec<f64>,
    /// `max |M_{xy} - M_{yx}|`.
    pub symmetry_defect: f64,
    pub positive_semidefinite: bool,
}

fn pairs(m: &DMatrix<Complex<f64>>) -> Vec<Vec<[f64; 2]>> {
    m.row_iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// The matrix of `⟨x y⟩_θ` over the given elements, products taken in the
/// skein algebra at `A = e^{iπ a/b}`, with the spectrum of its Hermitian
/// part. Exploratory: nothing about the sign of the spectrum is asserted.
pub fn gram_probe(
    elements: &[(String, TorusMulticurve)],
    seq: &AdmissibleSequence,
    method: LimitMethod,
) -> Result<GramReport, SkeinError> {
    let root = RootOfUnity::new(*seq.base.numer(), *seq.base.denom()).expect("reduced rational");
    let mut form = TorusTraceForm::new(*seq, method);
    let n = elements.len();
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for (i, (_, x)) in elements.iter().enumerate() {
        for (j, (_, y)) in elements.iter().enumerate() {
            let prod = skein_mul(&SkeinElement::curve(root, *x), &SkeinElement::curve(root, *y))?;
            m[(i, j)] = form.eval(&prod);
        }
    }
    let h = (&m + m.adjoint()).scale(0.5);
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let symmetry_defect = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (m[(i, j)] - m[(j, i)]).norm())
        .fold(0.0, f64::max);
    let positive_semidefinite = eigenvalues.first().is_none_or(|&e| e >= -1e-9);
    Ok(GramReport {
        labels: elements.iter().map(|(l, _)| l.clone()).collect(),
        matrix: pairs(&m),
        hermitian: pairs(&h),
        eigenvalues,
        symmetry_defect,
        positive_semidefinite,
    })
}

/// `{∅, (1,0), (0,1), (1,1), 2(1,0)}`.
pub fn default_torus_basis() -> Vec<(String, TorusMulticurve)> {
    [
        TorusMulticurve::Empty,
        TorusMulticurve::simple(1, 0).expect("primitive"),
        TorusMulticurve::simple(0, 1).expect("primitive"),
        TorusMulticurve::simple(1, 1).expect("primitive"),
        TorusMulticurve::new(2, 1, 0).expect("primitive"),
    ]
    .into_iter()
    .map(|c| (c.to_string(), c))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_only() {
        let basis = vec![("empty".to_string(), TorusMulticurve::Empty)];
        let r = gram_probe(&basis, &AdmissibleSequence::minus_i(), LimitMethod::Quadrature).unwrap();
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_and_meridian() {
        let basis = default_torus_basis()[..2].to_vec();
        let r = gram_probe(&basis, &AdmissibleSequence::minus_i(), LimitMethod::Quadrature).unwrap();
        let close = |z: [f64; 2], re: f64| (z[0] - re).abs() < 1e-12 && z[1].abs() < 1e-12;
        assert!(close(r.matrix[0][0], 1.0));
        assert!(close(r.matrix[1][1], 2.0));
        assert!(close(r.matrix[0][1], 0.0));
        assert!(close(r.matrix[1][0], 0.0));
    }

    #[test]
    fn default_basis_is_symmetric() {
        let r = gram_probe(&default_torus_basis(), &AdmissibleSequence::minus_i(), LimitMethod::Quadrature).unwrap();
        assert!(r.symmetry_defect < 1e-12);
        assert_eq!(r.eigenvalues.len(), 5);
    }
}
