use serde::{Deserialize, Serialize};

use super::PillowcaseError;
use crate::scalar::Real;

/// Points closer than this to `F_γ^{-1}({0, 1})` count as singular.
pub const SINGULAR_TOL: f64 = 1e-6;

/// Point of the pillowcase `(R²/2Z²)/(x ~ -x)`, stored in the fundamental
/// domain `0 <= α <= 1`, `0 <= β < 2`; on the edges `α = 0` and `α = 1`
/// the representative has `β <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint<F> {
    pub alpha: F,
    pub beta: F,
}

fn mod2<F: Real>(x: F) -> F {
    let two = F::of(2.0);
    let r = x % two;
    let r = if r < F::zero() { r + two } else { r };
    if r >= two {
        F::zero()
    } else {
        r
    }
}

impl<F: Real> ModuliPoint<F> {
    /// The class of the lift `(α, β)`.
    pub fn new(alpha: F, beta: F) -> Self {
        let two = F::of(2.0);
        let (mut a, mut b) = (mod2(alpha), mod2(beta));
        if a > F::one() {
            a = two - a;
            b = mod2(two - b);
        }
        if (a == F::zero() || a == F::one()) && b > F::one() {
            b = two - b;
        }
        Self { alpha: a, beta: b }
    }

    pub fn lift(&self) -> [F; 2] {
        [self.alpha, self.beta]
    }

    /// Distance on the torus `R²/2Z²` between the canonical lifts, up to
    /// `x ~ -x`.
    pub fn distance(&self, other: &Self) -> F {
        let two = F::of(2.0);
        let wrap = |d: F| {
            let d = mod2(d);
            d.min(two - d)
        };
        let direct = wrap(self.alpha - other.alpha).hypot(wrap(self.beta - other.beta));
        let flipped = wrap(self.alpha + other.alpha).hypot(wrap(self.beta + other.beta));
        direct.min(flipped)
    }
}

/// `p α + q β`: the representation sends `(p, q)` to `diag(e^{iπu}, e^{-iπu})`.
pub fn slope_phase<F: Real>(p: i64, q: i64, x: [F; 2]) -> F {
    F::of(p as f64) * x[0] + F::of(q as f64) * x[1]
}

/// `f_γ = -tr ρ(γ)` for `d` parallel copies of `(p, q)`: `(-2 cos π u)^d`.
pub fn f_curve<F: Real>(p: i64, q: i64, d: u32, x: [F; 2]) -> F {
    (-F::of(2.0) * (F::PI() * slope_phase(p, q, x)).cos()).powi(d as i32)
}

/// `F_γ = (1/π) acos(½ tr ρ(γ))`, in `[0, 1]`.
pub fn twist_hamiltonian<F: Real>(p: i64, q: i64, x: [F; 2]) -> F {
    (F::PI() * slope_phase(p, q, x)).cos().max(-F::one()).min(F::one()).acos() / F::PI()
}

pub fn is_regular<F: Real>(p: i64, q: i64, x: [F; 2]) -> bool {
    let f = twist_hamiltonian(p, q, x).as_f64();
    f > SINGULAR_TOL && f < 1.0 - SINGULAR_TOL
}

/// The Hamiltonian vector field of `F_(p,q)`: `2 sgn(sin π u) (-q, p)`.
/// On `0 < α < 1` it gives `Φ_m^t = (α, β + 2t)` and `Φ_l^t = (α - 2t, β)`.
pub fn twist_field<F: Real>(p: i64, q: i64, x: [F; 2]) -> [F; 2] {
    let s = (F::PI() * slope_phase(p, q, x)).sin().signum();
    let two = F::of(2.0);
    [-two * s * F::of(q as f64), two * s * F::of(p as f64)]
}

/// `Φ^t_(p,q)` on the pillowcase. The field is constant along its own
/// orbits, so the flow is a translation.
pub fn flow<F: Real>(p: i64, q: i64, t: F, pt: ModuliPoint<F>) -> Result<ModuliPoint<F>, PillowcaseError> {
    let x = pt.lift();
    if !is_regular(p, q, x) {
        return Err(PillowcaseError::SingularLocus { p, q, alpha: x[0].as_f64(), beta: x[1].as_f64() });
    }
    let v = twist_field(p, q, x);
    Ok(ModuliPoint::new(x[0] + t * v[0], x[1] + t * v[1]))
}
