//! Exact solver for a two-player Stackelberg production game.
//!
//! A leader spreads a production budget `R_l` over facilities with production
//! rates `p_i`; a follower then spends a destruction budget `R_f`, where
//! destroying facility `i` completely costs `a_i`. The leader maximizes the
//! production that survives the follower's best reply.
//!
//! - [`follower`]: the follower's optimal reply and the objective.
//! - [`leader`]: composed net production rates, balanced allocations, and
//!   the linear-time optimal leader solver [`leader::solve`].
//! - [`classify`]: balanced / semi-balanced / seried-balanced detection.
//! - [`oracle`]: brute-force cross-checks for small instances.
//!
//! All arithmetic is exact ([`Ratio`]).

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod follower;
pub mod gen;
pub mod instance;
pub mod leader;
pub mod oracle;
pub mod ratio;
pub mod strategy;

pub use classify::{classify, StrategyClass, StrategyKind};
pub use error::{Error, Player, Result, Violation};
pub use follower::{best_response, destruction_ratios, evaluate, worst_case, FollowerBestResponse};
pub use instance::{validate_instance, Facility, FacilitySet, Instance, RawFacility, RawInstance};
pub use leader::{
    balanced_allocation, composed_net_rate, semi_balanced_allocation, semi_balanced_value, solve, PrefixRate,
    SolveReport,
};
pub use oracle::{follower_oracle, leader_grid_oracle, leader_subset_oracle, OracleLimits, OracleVerdict, Witness};
pub use ratio::{q, Ratio};
pub use strategy::{parse_inline, FollowerStrategy, LeaderStrategy};
