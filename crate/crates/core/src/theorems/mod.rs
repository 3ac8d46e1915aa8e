//! Closed-form constants of the inclusion, radius and integral-operator
//! results, and seeded randomized verifiers that test them numerically.

mod closed_form;
mod radius;
mod sampling;
mod verify;

pub use closed_form::{
    extremal_hypothesis_function, goodman_bounds_check, iota, radius_r1, rho1, sharp_function, sharp_h_quadrature,
    sharp_radius_kernel,
};
pub use radius::{empirical_radius, radius_scan, scan_csv, RadiusResult, ScanFunction, ScanRow};
pub use sampling::{sample_measure, sample_target, sample_trial_params, TrialParams};
pub use verify::{
    report_json, solve_bernardi_target, verify, verify_t21, verify_t22, verify_t31, verify_t41, ParamSource, TheoremId,
    TheoremReport, VerifyConfig,
};
