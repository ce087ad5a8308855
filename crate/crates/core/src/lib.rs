//! Rigorous enclosures for interval linear systems Ax = b where the
//! coefficients range over intervals. Provides outward-rounded interval
//! arithmetic, midpoint-inverse preconditioning with a regularity
//! certificate, a verified point-system solver, the classical Krawczyk /
//! Gauss-Seidel / hull enclosures, and a magnitude-based interval
//! operator that tightens Gauss-Seidel at the same asymptotic cost.
//!
//! Everything here is deterministic and allocation-light; no global
//! floating-point state is touched, so the API is safe to call from
//! multiple threads.

mod classic;
mod error;
mod interval;
mod linsys;
mod lu;
mod magnitude;
mod matrix;
mod round;
mod verified;

pub use classic::{
    gauss_seidel_step, gs_limit, iterate, krawczyk_limit, krawczyk_step, ning_kearfott_hull,
    IterationResult, StoppingRule,
};
pub use error::{Error, Result};
pub use interval::Interval;
pub use linsys::{
    approx_mid_inverse, certify_regular, precondition_relax, IntervalLinearSystem,
    RegularityCertificate, SystemForm,
};
pub use magnitude::{
    cheap_lower_bound_d, cheap_lower_bound_d_counted, cheap_lower_bound_u,
    cheap_lower_bound_u_counted, gs_then_operator, magnitude_enclosure,
    magnitude_enclosure_gamma0, new_operator_row, OperatorInputs,
};
pub use matrix::{IntervalMatrix, IntervalVector, RealMatrix, RealVector};
pub use verified::{
    assemble_ud, verified_inverse_diag, verified_point_solve, UDBounds, UdMode, UdSource,
};
