//! Exact evaluation of weighted power sums of Horadam sequences.
//!
//! Sums of the form `sum_{k=1}^{n} k^m w_{hk+r}`, optionally weighted by
//! `V_h^{-k}`, are evaluated three independent ways: the recursive Ledin
//! scheme ([`recursive`]), Eulerian-number closed forms ([`closed`]) and direct
//! summation ([`oracle`]). All arithmetic is exact over the rationals.

pub mod cli;
pub mod closed;
pub mod error;
pub mod eulerian;
pub mod recursive;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod sequence;

pub use closed::{
    ap_sum_closed, horadam_ledin_explicit, horadam_ledin_restricted, ledin_constants_explicit,
    omega_closed, p_polys_explicit, q_power_sum_closed, s_closed, t_closed, uv_closed,
    weighted_ap_closed, ClosedFormReport, Route, SumEvaluator, SumSpec, UvKind,
};
pub use error::{Error, Result};
pub use eulerian::{eulerian, eulerian_row, EulerianTriangle};
pub use recursive::{
    ck_constants_recursive, ck_shifted_recursive, evaluate_ledin_form, horadam_ledin_recursive,
    p_polys_recursive, HoradamScheme, LedinForm,
};
pub use oracle::{
    brute_sum, eulerian_recurrence_oracle, verify_grid, GridRanges, Mismatch, Status,
    VerificationReport, WeightMode,
};
pub use poly::PolynomialInN;
pub use scalar::{format_rational, parse_rational, ExactScalar};
pub use sequence::{horadam_term, named_sequence_params, HoradamParams, NamedSequence, Sequence};
