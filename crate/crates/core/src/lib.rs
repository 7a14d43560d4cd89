//! Skein algebras of the torus at roots of unity, their twisted models, and
//! the trace functionals of the TQFT quantization of the pillowcase.

pub mod arith;
pub mod heis;
pub mod mc;
pub mod pillowcase;
pub mod ribbon;
pub mod scalar;
pub mod torus;
pub mod tqft;
pub mod twisted;

pub use arith::{ExactScalar, GaussianInt, LaurentPoly, RootOfUnity};
pub use torus::{Formal, GaussianRoot, SkeinElement, TorusMulticurve};

/// Skein element with coefficients in `Z[A, A^{-1}]`.
pub type FormalSkein = SkeinElement<Formal>;
/// Skein element specialized at a root of unity.
pub type SkeinAtRoot = SkeinElement<RootOfUnity>;
/// Skein element at `A` in `{1, i, -1, -i}` with Gaussian integer coefficients.
pub type GaussianSkein = SkeinElement<GaussianRoot>;

/// Section of the prequantum bundle over the pillowcase.
pub type Section = pillowcase::EquivariantSection<f64>;
