//! The Kauffman skein algebra of the torus, realized through its embedding
//! into the noncommutative torus.

mod curve;
mod nctorus;
mod param;
mod skein;

pub use curve::{CurveError, TorusMulticurve};
pub use nctorus::{nc_mul, NcTorusElement};
pub use param::{Formal, GaussianRoot, Parameter};
pub use skein::{
    phi, phi_element, phi_inverse, skein_mul, trivial_loop_value, SkeinElement, SkeinError, SkeinTerm,
};
