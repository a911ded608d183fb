//! The leader's problem.
//!
//! A balanced allocation over a facility set `S` equalizes the destruction
//! ratios on `S`, which makes the follower indifferent among them. Its
//! worst-case value is `p̄(S) * R_l`, where the composed net production rate
//!
//! ```text
//! p̄(S) = max{ (Σ_S a_i - R_f) / Σ_S (a_i / p_i), 0 },   p̄(∅) = 0
//! ```
//!
//! is the worst-case output per unit of leader budget. Some optimal strategy
//! is balanced over a prefix of the facilities sorted by production rate,
//! and [`solve`] finds the best prefix in a single pass.

use crate::error::{Error, Result};
use crate::instance::{FacilitySet, Instance};
use crate::ratio::{LazySum, Ratio};
use crate::strategy::LeaderStrategy;

/// One accepted prefix `{1..size}` and its composed net production rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixRate {
    pub size: usize,
    pub rate: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub strategy: LeaderStrategy,
    /// The accepted prefix `{1..i*}` in normalized order.
    pub support: FacilitySet,
    /// `p̄(support)`.
    pub rate: Ratio,
    /// `rate * R_l`, the optimal worst-case production.
    pub value: Ratio,
    /// Rate of every accepted prefix, in order.
    pub trace: Vec<PrefixRate>,
    /// Position of the first facility that failed `p_i > p̄(prefix)`, if the
    /// scan stopped before the end.
    pub stopped_at: Option<usize>,
}

/// Running sums `Σ a_i` and `Σ a_i / p_i` for a growing facility set.
#[derive(Debug, Clone)]
struct RateAccumulator {
    quantity: LazySum,
    weight: LazySum,
}

impl RateAccumulator {
    fn new() -> Self {
        RateAccumulator {
            quantity: LazySum::new(),
            weight: LazySum::new(),
        }
    }

    fn push(&mut self, a: &Ratio, p: &Ratio) {
        self.quantity.add(a);
        self.weight.add_quotient(a, p);
    }

    fn rate(&self, follower_budget: &Ratio) -> Ratio {
        if self.weight.is_zero() {
            return Ratio::zero();
        }
        self.quantity.excess_over(follower_budget, &self.weight)
    }
}

fn checked_set(inst: &Instance, set: &FacilitySet) -> Result<()> {
    set.check_within(inst)
}

/// Composed net production rate `p̄(S)`. Zero for the empty set.
pub fn composed_net_rate(inst: &Instance, set: &FacilitySet) -> Ratio {
    let mut acc = RateAccumulator::new();
    for pos in set.iter() {
        acc.push(inst.a(pos), inst.p(pos));
    }
    acc.rate(inst.follower_budget())
}

/// The balanced strategy with support `set`:
/// `x_i = a_i R_l / (p_i Σ_S a_j / p_j)` on `set`, zero elsewhere.
pub fn balanced_allocation(inst: &Instance, set: &FacilitySet) -> Result<LeaderStrategy> {
    if set.is_empty() {
        return Err(Error::EmptySupport);
    }
    checked_set(inst, set)?;
    Ok(spread(inst, set, inst.leader_budget()))
}

/// Splits `amount` over `set` so that all destruction ratios on `set` agree.
fn spread(inst: &Instance, set: &FacilitySet, amount: &Ratio) -> LeaderStrategy {
    let weights: Vec<(usize, Ratio)> = set.iter().map(|pos| (pos, inst.a(pos) / inst.p(pos))).collect();
    let total_weight: Ratio = weights.iter().map(|(_, w)| w).sum();
    let scale = amount / &total_weight;
    let mut x = vec![Ratio::zero(); inst.len()];
    for (pos, w) in weights {
        x[pos] = w * &scale;
    }
    LeaderStrategy::from_vec_unchecked(x)
}

fn check_semi_balanced(inst: &Instance, set: &FacilitySet, residual: usize, residual_amount: &Ratio) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySupport);
    }
    checked_set(inst, set)?;
    if residual >= inst.len() {
        return Err(Error::UnknownFacility {
            position: residual,
            len: inst.len(),
        });
    }
    if set.contains(residual) {
        return Err(Error::NotSemiBalanced("residual facility belongs to the balanced set"));
    }
    if !residual_amount.is_positive() {
        return Err(Error::NotSemiBalanced("residual allocation must be positive"));
    }
    if residual_amount >= inst.leader_budget() {
        return Err(Error::NotSemiBalanced(
            "residual allocation leaves nothing for the balanced set",
        ));
    }
    // Common ratio on S is (R_l - x_r) / Σ_S a/p; the residual must sit strictly below it.
    let weight: Ratio = set.iter().map(|pos| inst.a(pos) / inst.p(pos)).sum();
    let common = (inst.leader_budget() - residual_amount) / weight;
    let residual_ratio = inst.p(residual) * residual_amount / inst.a(residual);
    if residual_ratio >= common {
        return Err(Error::NotSemiBalanced(
            "residual destruction ratio is not below the common ratio",
        ));
    }
    Ok(())
}

/// The semi-balanced strategy: `x_r` on `residual`, the rest of the budget
/// spread over `set` with equal destruction ratios.
pub fn semi_balanced_allocation(
    inst: &Instance,
    set: &FacilitySet,
    residual: usize,
    residual_amount: &Ratio,
) -> Result<LeaderStrategy> {
    check_semi_balanced(inst, set, residual, residual_amount)?;
    let rest = inst.leader_budget() - residual_amount;
    let spread = spread(inst, set, &rest);
    let mut x = spread.values().to_vec();
    x[residual] = residual_amount.clone();
    Ok(LeaderStrategy::from_vec_unchecked(x))
}

/// Closed-form worst-case value of a semi-balanced strategy.
///
/// With `A_S = Σ_S a_i`:
/// - `R_f <= A_S`: `p̄(S) (R_l - x_r) + p_r x_r`
/// - `A_S < R_f < A_S + a_r`: `(p_r x_r / a_r) (A_S + a_r - R_f)`
/// - otherwise `0`
pub fn semi_balanced_value(
    inst: &Instance,
    set: &FacilitySet,
    residual: usize,
    residual_amount: &Ratio,
) -> Result<Ratio> {
    check_semi_balanced(inst, set, residual, residual_amount)?;
    let budget = inst.follower_budget();
    let set_quantity: Ratio = set.iter().map(|pos| inst.a(pos)).sum();
    let with_residual = &set_quantity + inst.a(residual);
    let p_r = inst.p(residual);
    let value = if budget <= &set_quantity {
        composed_net_rate(inst, set) * (inst.leader_budget() - residual_amount) + p_r * residual_amount
    } else if budget < &with_residual {
        p_r * residual_amount / inst.a(residual) * (with_residual - budget)
    } else {
        Ratio::zero()
    };
    Ok(value)
}

/// Finds an optimal leader strategy.
///
/// Starting from the highest-rate facility, the prefix is extended with the
/// next facility while its rate strictly exceeds the prefix's composed net
/// production rate. The result is the balanced allocation over the final
/// prefix. Each step is O(1) on running sums; the whole scan is linear.
pub fn solve(inst: &Instance) -> SolveReport {
    let n = inst.len();
    let follower_budget = inst.follower_budget();

    let mut acc = RateAccumulator::new();
    let mut trace = Vec::new();
    let mut rate = Ratio::zero();
    let mut stopped_at = None;
    for pos in 0..n {
        // Facility 1 always enters: p_1 > 0 = p̄(∅).
        if pos > 0 && inst.p(pos) <= &rate {
            stopped_at = Some(pos);
            break;
        }
        acc.push(inst.a(pos), inst.p(pos));
        rate = acc.rate(follower_budget);
        trace.push(PrefixRate {
            size: pos + 1,
            rate: rate.clone(),
        });
    }

    let size = trace.len();
    let scale = inst.leader_budget() / acc.weight.to_ratio();
    let mut x: Vec<Ratio> = (0..size).map(|pos| inst.a(pos) / inst.p(pos) * &scale).collect();
    x.resize(n, Ratio::zero());

    let value = &rate * inst.leader_budget();
    SolveReport {
        strategy: LeaderStrategy::from_vec_unchecked(x),
        support: FacilitySet::prefix(size),
        rate,
        value,
        trace,
        stopped_at,
    }
}
