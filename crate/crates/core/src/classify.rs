//! Structural classification of leader strategies.

use crate::follower::destruction_ratios;
use crate::instance::{FacilitySet, Instance};
use crate::strategy::LeaderStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// Full budget, all supported facilities share one destruction ratio.
    Balanced,
    /// Balanced on a set plus one residual facility with a strictly lower ratio.
    SemiBalanced,
    /// Balanced with support `{1..s}` in normalized order.
    SeriedBalanced,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyClass {
    pub kind: StrategyKind,
    /// The balanced part of the support. Empty for `Other`.
    pub support: FacilitySet,
    /// The residual facility of a semi-balanced strategy.
    pub residual: Option<usize>,
    /// Highest support position of a balanced or seried-balanced strategy.
    pub top_index: Option<usize>,
}

impl StrategyClass {
    fn other() -> Self {
        StrategyClass {
            kind: StrategyKind::Other,
            support: FacilitySet::default(),
            residual: None,
            top_index: None,
        }
    }

    /// True for both plain and seried balanced strategies.
    pub fn is_balanced(&self) -> bool {
        matches!(self.kind, StrategyKind::Balanced | StrategyKind::SeriedBalanced)
    }
}

/// Classifies `x` against the normalized facility order.
pub fn classify(inst: &Instance, x: &LeaderStrategy) -> StrategyClass {
    if &x.total() != inst.leader_budget() {
        return StrategyClass::other();
    }
    let ratios = destruction_ratios(inst, x);
    let support: Vec<usize> = (0..inst.len()).filter(|&pos| x.get(pos).is_positive()).collect();
    let Some(&first) = support.first() else {
        return StrategyClass::other();
    };

    let top = support.iter().map(|&pos| &ratios[pos]).max().expect("nonempty");
    let low = support.iter().map(|&pos| &ratios[pos]).min().expect("nonempty");

    if top == low {
        let support = FacilitySet::new(support);
        let kind = if support.is_prefix() {
            StrategyKind::SeriedBalanced
        } else {
            StrategyKind::Balanced
        };
        return StrategyClass {
            kind,
            top_index: support.max(),
            support,
            residual: None,
        };
    }

    // Semi-balanced: exactly one facility at the minimum, everything else at
    // the (single) maximum.
    let mut lowest = support.iter().filter(|&&pos| &ratios[pos] == low);
    let residual = *lowest.next().unwrap_or(&first);
    if lowest.next().is_some() {
        return StrategyClass::other();
    }
    let rest: Vec<usize> = support.iter().copied().filter(|&pos| pos != residual).collect();
    if rest.iter().any(|&pos| &ratios[pos] != top) {
        return StrategyClass::other();
    }
    StrategyClass {
        kind: StrategyKind::SemiBalanced,
        support: FacilitySet::new(rest),
        residual: Some(residual),
        top_index: None,
    }
}
