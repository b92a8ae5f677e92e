//! Stationarity notions for `min f(z)` s.t. `P(z) ∈ D` with `D` a finite union
//! of convex polyhedra, all decided on exact first-order data at `z̄`.

mod checks;
mod problem;
mod qp;
mod search;
mod sharp;

#[cfg(test)]
pub(crate) mod examples;

pub use checks::{check_b_lin, check_lin_m_k0, check_m, check_s, check_sufficient_s, BOutcome, K0Outcome, MOutcome};
pub use problem::{lin_tangent_cone, Assumptions, LinearizedProblem};
pub use qp::{
    aux_program, optimal_set, solve_aux_qp, solve_piece, PieceOutcome, QpOutcome, QpStatus, QuadraticObjective,
};
pub use search::{
    lin_m_search, m_certificate, next_linearization, s_certificate, verify_certificate, CertificateKind, LspMethod,
    StationarityCertificate, Verdict,
};
pub use sharp::{sharp_min_criterion, SharpOutcome};
