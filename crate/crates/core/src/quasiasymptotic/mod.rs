//! Quasi-asymptotic curves `γ₁,₅`: the `(3n+3)`-determinant `D` in the jet
//! coefficients, its identical vanishing, the five-jet dependence test, the
//! constancy of the span `Π` along a `γ₁,₅`, and the audits tying these to
//! length-3 speciality and 2-defectivity.
//!
//! The fifth derivative of `x(u(t))` has leading term `Σ x_ijklm λ_i … λ_m`
//! with five indices.

mod audit;
mod claim;
mod gamma15;
mod pi;

pub use audit::{
    defect_pipeline, equivalence_audit, Consistency, DefectReport, EquivalenceAudit,
    PipelineConfig,
};
pub use claim::{claim_coefficient_audit, gamma15_symbolic, ClaimAudit, CLAIM_LIMIT};
pub use gamma15::{
    five_jet_rank_check, gamma15_columns, gamma15_degree_bound, gamma15_det,
    gamma15_identically_zero, gamma15_matrix, suppressed_vector_in_span, FiveJetRank,
    Gamma15Matrix, Gamma15Verdict,
};
pub use pi::{pi_constancy_check, pi_space, PiConstancy, PiSpace};
