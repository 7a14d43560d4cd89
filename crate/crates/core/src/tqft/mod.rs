//! Trace sums of TQFT curve operators over admissible colorings, their
//! normalized limits, and the limit at `A = -i`.

mod colorings;
mod graph;
mod gram;
mod limit;
mod polytope;
mod sequence;

pub use colorings::{
    admissible_triple, enumerate_colorings, for_each_coloring, normalized_trace, palette, trace_sum,
    trace_sum_contracted,
};
pub use graph::{GraphError, GraphWithMultiplicities, TrivalentGraph};
pub use gram::{default_torus_basis, gram_probe, GramReport, LimitMethod, TorusTraceForm};
pub use limit::{
    central_binomial_integral, class_is_zero, lambda_b_classes, limit_trace, limit_trace_quadrature,
    torus_curve_limit, tracei_value, TraceiMethod, TraceiValue,
};
pub use polytope::{unit_rule, Polytope};
pub use sequence::{cos_two_pi, parse_rational, AdmissibleSequence, SequenceError, Q};
