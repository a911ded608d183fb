use std::fmt;

use crate::ratio::Ratio;

/// Which player a strategy belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Leader,
    Follower,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Leader => f.write_str("leader"),
            Player::Follower => f.write_str("follower"),
        }
    }
}

/// The feasibility constraint a strategy breaks. Facility ids are the
/// original (1-based, input order) ids.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("entry for facility {id} is negative ({value})")]
    Negative { id: usize, value: Ratio },
    #[error("entry for facility {id} ({value}) exceeds its destruction quantity {limit}")]
    AboveQuantity { id: usize, value: Ratio, limit: Ratio },
    #[error("total {total} exceeds budget {budget}")]
    OverBudget { total: Ratio, budget: Ratio },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("instance has no facilities")]
    EmptyInstance,
    #[error("facility {id} has non-positive production rate {value}")]
    NonPositiveRate { id: usize, value: Ratio },
    #[error("facility {id} has non-positive destruction quantity {value}")]
    NonPositiveQuantity { id: usize, value: Ratio },
    #[error("{player} budget must be positive, got {value}")]
    NonPositiveBudget { player: Player, value: Ratio },
    #[error("follower budget {follower_budget} is at least the total destruction quantity {total_quantity}; every facility would be destroyed")]
    TrivialFollower {
        follower_budget: Ratio,
        total_quantity: Ratio,
    },
    #[error("infeasible {player} strategy: {violation}")]
    Infeasible { player: Player, violation: Violation },
    #[error("facility set must not be empty")]
    EmptySupport,
    #[error("facility position {position} is out of range for {len} facilities")]
    UnknownFacility { position: usize, len: usize },
    #[error("no facility with id {id}")]
    UnknownId { id: usize },
    #[error("not a semi-balanced configuration: {0}")]
    NotSemiBalanced(&'static str),
    #[error("instance has {n} facilities; this oracle is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("grid resolution must be at least 1")]
    ZeroResolution,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
