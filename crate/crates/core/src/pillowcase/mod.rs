//! The torus moduli space `M(T², SU(2))` as the pillowcase, its prequantum
//! line bundle, the twist flows and the parallel transport operators `Ψ`
//! and `O_γ` acting on sections.

mod bundle;
mod checks;
mod experiment;
mod geometry;
mod operator;

use thiserror::Error;

pub use bundle::{
    cocycle, path_transport, rectangle_transport, transport_phase, Bump, EquivariantSection, SectionEval, SectionFn,
};
pub use checks::{
    closed_form_check, commutation_check, equivariance_check, identity_check, kauffman_check, regular_points, slope_check,
    trace_check, CheckReport, TraceReport,
};
pub use experiment::{root_trace_experiment, time_for_root, RootTraceRow};
pub use geometry::{
    f_curve, flow, is_regular, slope_phase, twist_field, twist_hamiltonian, ModuliPoint, SINGULAR_TOL,
};
pub use operator::{
    curve_image, liouville_integral, liouville_quadrature, o_closed, o_op, operator_image, operator_trace,
    operator_trace_mc, psi_op, ComplexEstimate, FlowLift, OperatorTerm, TorusOperator,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PillowcaseError {
    #[error("({alpha}, {beta}) is on the singular locus of F_({p},{q})")]
    SingularLocus { p: i64, q: i64, alpha: f64, beta: f64 },
    #[error("operators are defined at A = -i, got A = {0}")]
    NotAtMinusI(String),
}
