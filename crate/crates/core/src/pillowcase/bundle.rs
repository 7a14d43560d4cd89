//! The prequantum line bundle over the pillowcase. Its sections are
//! functions on the plane with `s(x + 2w) = e^{iπ(α w_2 - β w_1)} s(x)` and
//! `s(-x) = s(x)`; parallel transport is computed on the plane, where the
//! connection form is `(iπ/2)(α dβ - β dα)`.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::{cis, Real};

/// `e^{iπ(α w_2 - β w_1)}`: the factor picked up by a section under
/// `x -> x + 2w`.
pub fn cocycle<F: Real>(x: [F; 2], w: [i64; 2]) -> Complex<F> {
    cis(F::PI() * (x[0] * F::of(w[1] as f64) - x[1] * F::of(w[0] as f64)))
}

/// Parallel transport along `x(τ) = start + τ v`, `0 <= τ <= duration`:
/// `exp(-(iπ/2) T (α_0 v_β - β_0 v_α))`.
pub fn transport_phase<F: Real>(start: [F; 2], velocity: [F; 2], duration: F) -> Complex<F> {
    let half = F::of(0.5);
    cis(-half * F::PI() * duration * (start[0] * velocity[1] - start[1] * velocity[0]))
}

/// Transport along the polygonal path through `points`.
pub fn path_transport<F: Real>(points: &[[F; 2]]) -> Complex<F> {
    points
        .windows(2)
        .map(|w| transport_phase(w[0], [w[1][0] - w[0][0], w[1][1] - w[0][1]], F::one()))
        .fold(Complex::new(F::one(), F::zero()), |acc, z| acc * z)
}

/// Transport once around the rectangle with corner `x` and sides `a` (in
/// `α`) and `b` (in `β`), counterclockwise when `a, b > 0`. Its symplectic
/// area is `ab/2` and the result is `exp(-2iπ ab/2)`.
pub fn rectangle_transport<F: Real>(x: [F; 2], a: F, b: F) -> Complex<F> {
    path_transport(&[x, [x[0] + a, x[1]], [x[0] + a, x[1] + b], [x[0], x[1] + b], x])
}

/// Anything that can be evaluated as a section on the plane.
pub trait SectionEval<F: Real>: Send + Sync {
    fn eval(&self, x: [F; 2]) -> Complex<F>;
}

impl<F: Real, S: SectionEval<F> + ?Sized> SectionEval<F> for &S {
    fn eval(&self, x: [F; 2]) -> Complex<F> {
        (**self).eval(x)
    }
}

/// A section given by a closure; cheap to clone.
#[derive(Clone)]
pub struct SectionFn<'a, F>(Arc<dyn Fn([F; 2]) -> Complex<F> + Send + Sync + 'a>);

impl<'a, F: Real> SectionFn<'a, F> {
    pub fn new(f: impl Fn([F; 2]) -> Complex<F> + Send + Sync + 'a) -> Self {
        Self(Arc::new(f))
    }

    pub fn of<S: SectionEval<F> + 'a>(s: S) -> Self {
        Self::new(move |x| s.eval(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |x| a.eval(x) + b.eval(x))
    }

    pub fn scale(&self, c: Complex<F>) -> Self {
        let a = self.clone();
        Self::new(move |x| a.eval(x) * c)
    }
}

impl<F: Real> SectionEval<F> for SectionFn<'_, F> {
    fn eval(&self, x: [F; 2]) -> Complex<F> {
        (self.0)(x)
    }
}

/// `amplitude · (c_0 + c_1 δα + c_2 δβ) · exp(1 - 1/(1 - ρ²))` for
/// `ρ = |x - center| / radius < 1`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump<F> {
    pub center: [F; 2],
    pub radius: F,
    pub amplitude: Complex<F>,
    pub poly: [F; 3],
}

impl<F: Real> Bump<F> {
    pub fn eval(&self, x: [F; 2]) -> Complex<F> {
        let (da, db) = (x[0] - self.center[0], x[1] - self.center[1]);
        let rho2 = (da * da + db * db) / (self.radius * self.radius);
        if rho2 >= F::one() {
            return Complex::new(F::zero(), F::zero());
        }
        let profile = (F::one() - F::one() / (F::one() - rho2)).exp();
        let poly = self.poly[0] + self.poly[1] * da + self.poly[2] * db;
        self.amplitude * (poly * profile)
    }

    /// `Σ_w e_w(x)^{-1} b(x + 2w)` over the finitely many `w` with
    /// `x + 2w` in the support.
    fn equivariant_sum(&self, x: [F; 2]) -> Complex<F> {
        let two = F::of(2.0);
        let range = |i: usize| {
            let lo = ((self.center[i] - self.radius - x[i]) / two).ceil().as_f64() as i64;
            let hi = ((self.center[i] + self.radius - x[i]) / two).floor().as_f64() as i64;
            lo..=hi
        };
        let mut acc = Complex::new(F::zero(), F::zero());
        for w0 in range(0) {
            for w1 in range(1) {
                let y = [x[0] + two * F::of(w0 as f64), x[1] + two * F::of(w1 as f64)];
                acc = acc + self.eval(y) * cocycle(x, [w0, w1]).conj();
            }
        }
        acc
    }
}

/// Section generated by bumps through the equivariant sum, made even by
/// averaging over `x -> -x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivariantSection<F> {
    pub bumps: Vec<Bump<F>>,
}

impl<F: Real> EquivariantSection<F> {
    pub fn new(bumps: Vec<Bump<F>>) -> Self {
        Self { bumps }
    }

    /// Bumps with centers in `[0, 2)²`, radii in `[0.3, 0.9)` and
    /// coefficients in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Self {
        let mut u = |lo: f64, hi: f64| F::of(rng.random_range(lo..hi));
        let bumps = (0..count)
            .map(|_| Bump {
                center: [u(0.0, 2.0), u(0.0, 2.0)],
                radius: u(0.3, 0.9),
                amplitude: Complex::new(u(-1.0, 1.0), u(-1.0, 1.0)),
                poly: [u(-1.0, 1.0), u(-1.0, 1.0), u(-1.0, 1.0)],
            })
            .collect();
        Self { bumps }
    }
}

impl<F: Real> SectionEval<F> for EquivariantSection<F> {
    fn eval(&self, x: [F; 2]) -> Complex<F> {
        let half = F::of(0.5);
        let minus = [-x[0], -x[1]];
        self.bumps
            .iter()
            .map(|b| (b.equivariant_sum(x) + b.equivariant_sum(minus)) * half)
            .fold(Complex::new(F::zero(), F::zero()), |acc, z| acc + z)
    }
}
