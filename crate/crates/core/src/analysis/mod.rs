//! Competitive-ratio evaluation, witness extraction and lower-bound audits.
//!
//! The competitive ratio of a target `x` is `T(x) / |x|`, where `T(x)` is the
//! time at which `x` is explored in every mode. Suprema over `x` are attained
//! only in the limit just past a round boundary, so critical targets are
//! offset outward by a small relative `eta`; the one-sided limit itself is
//! available through [`Trajectory::outer_limit_time`](crate::coverage::Trajectory::outer_limit_time).

mod audit;
mod ratio;
mod witness;

pub use audit::{
    audit_min_growth, audit_odd_lower_bound, recurrence_collapse, AuditEntry, AuditReport,
};
pub use ratio::{
    analytic_cr_limit, cr_convergence_series, empirical_cr, grid_targets, phase_limits,
    replay_round_ratios, worst_case_targets, CrReport, RoundRatio, TargetRatio, DEFAULT_ETA,
};
pub use witness::{extract_witness, WitnessSequences};
