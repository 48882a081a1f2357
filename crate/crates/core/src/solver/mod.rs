//! Discounted values, limit values, and stationary guarantees of absorbing
//! games.

pub mod discounted;
pub mod guarantee;
pub mod limit;
pub mod wmatrix;

pub use discounted::{discounted_optimal, discounted_payoff, discounted_value, lambda_sweep, TracePoint};
pub use guarantee::{limit_payoff, stationary_guarantee, stationary_guarantee_with, Guarantee};
pub use limit::{
    limit_candidates, limit_value, rational_limit_certificate, Candidate, LimitOptions, LimitResult,
    LimitValue, RationalCheck,
};
pub use wmatrix::{build_w, WMatrix};
