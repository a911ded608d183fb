//! Brute-force cross-checks for small instances.
//!
//! Each oracle computes its answer without going through the solver it
//! checks: the follower oracle enumerates every destruction order, the subset
//! oracle evaluates the composed rate of every facility set from scratch,
//! and the grid oracle maximizes the raw worst-case objective over a lattice
//! of leader allocations.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::follower::{best_response, worst_case};
use crate::instance::{FacilitySet, Instance};
use crate::leader::{balanced_allocation, solve};
use crate::ratio::Ratio;
use crate::strategy::{FollowerStrategy, LeaderStrategy};

/// Largest instance each oracle accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub follower: usize,
    pub subset: usize,
    pub grid: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            follower: 7,
            subset: 20,
            grid: 4,
        }
    }
}

pub const DEFAULT_GRID_RESOLUTION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Leader(LeaderStrategy),
    Follower(FollowerStrategy),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub oracle_value: Ratio,
    pub solver_value: Ratio,
    pub agree: bool,
    /// A strategy attaining `oracle_value`.
    pub witness: Option<Witness>,
    /// `oracle_value - solver_value`.
    pub gap: Ratio,
}

impl OracleVerdict {
    fn exact(oracle_value: Ratio, solver_value: Ratio, witness: Option<Witness>) -> Self {
        let gap = &oracle_value - &solver_value;
        OracleVerdict {
            agree: gap.is_zero(),
            oracle_value,
            solver_value,
            witness,
            gap,
        }
    }

    /// The oracle only lower-bounds the true optimum.
    fn lower_bound(oracle_value: Ratio, solver_value: Ratio, witness: Option<Witness>) -> Self {
        let gap = &oracle_value - &solver_value;
        OracleVerdict {
            agree: solver_value >= oracle_value,
            oracle_value,
            solver_value,
            witness,
            gap,
        }
    }
}

fn check_size(inst: &Instance, limit: usize) -> Result<()> {
    if inst.len() > limit {
        return Err(Error::TooLarge { n: inst.len(), limit });
    }
    Ok(())
}

/// Follower production left after destroying greedily along `order`.
fn greedy_filling(inst: &Instance, order: &[usize]) -> Vec<Ratio> {
    let mut y = vec![Ratio::zero(); inst.len()];
    let mut left = inst.follower_budget().clone();
    for &pos in order {
        if !left.is_positive() {
            break;
        }
        let take = if inst.a(pos) < &left {
            inst.a(pos).clone()
        } else {
            left.clone()
        };
        left -= &take;
        y[pos] = take;
    }
    y
}

fn production_after(inst: &Instance, x: &LeaderStrategy, y: &[Ratio]) -> Ratio {
    (0..inst.len())
        .map(|pos| inst.p(pos) * x.get(pos) * (inst.a(pos) - &y[pos]) / inst.a(pos))
        .sum()
}

/// Minimizes production over all `n!` greedy fillings and compares with
/// [`best_response`].
pub fn follower_oracle(inst: &Instance, x: &LeaderStrategy) -> Result<OracleVerdict> {
    follower_oracle_with_limit(inst, x, OracleLimits::default().follower)
}

pub fn follower_oracle_with_limit(inst: &Instance, x: &LeaderStrategy, limit: usize) -> Result<OracleVerdict> {
    check_size(inst, limit)?;
    let mut best: Option<(Ratio, Vec<Ratio>)> = None;
    for order in (0..inst.len()).permutations(inst.len()) {
        let y = greedy_filling(inst, &order);
        let value = production_after(inst, x, &y);
        if best.as_ref().is_none_or(|(v, _)| &value < v) {
            best = Some((value, y));
        }
    }
    let (oracle_value, y) = best.expect("at least one permutation");
    let solver_value = best_response(inst, x).worst_case_value;
    Ok(OracleVerdict::exact(
        oracle_value,
        solver_value,
        Some(Witness::Follower(FollowerStrategy::from_vec_unchecked(y))),
    ))
}

/// `max{(Σ_S a - R_f) / Σ_S a/p, 0}`, computed directly.
fn subset_rate(inst: &Instance, members: &[usize]) -> Ratio {
    let quantity: Ratio = members.iter().map(|&pos| inst.a(pos)).sum();
    if &quantity <= inst.follower_budget() {
        return Ratio::zero();
    }
    let weight: Ratio = members.iter().map(|&pos| inst.a(pos) / inst.p(pos)).sum();
    (quantity - inst.follower_budget()) / weight
}

/// Maximizes `p̄(S) R_l` over all nonempty facility sets and compares with
/// [`solve`].
pub fn leader_subset_oracle(inst: &Instance) -> Result<OracleVerdict> {
    leader_subset_oracle_with_limit(inst, OracleLimits::default().subset)
}

pub fn leader_subset_oracle_with_limit(inst: &Instance, limit: usize) -> Result<OracleVerdict> {
    check_size(inst, limit)?;
    let n = inst.len();
    let mut best_rate = Ratio::zero();
    let mut best_mask = 1u64;
    let mut members = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        members.clear();
        members.extend((0..n).filter(|&pos| mask & (1 << pos) != 0));
        let rate = subset_rate(inst, &members);
        if rate > best_rate {
            best_rate = rate;
            best_mask = mask;
        }
    }
    let set = FacilitySet::new((0..n).filter(|&pos| best_mask & (1 << pos) != 0));
    let witness = balanced_allocation(inst, &set)?;
    let oracle_value = best_rate * inst.leader_budget();
    Ok(OracleVerdict::exact(
        oracle_value,
        solve(inst).value,
        Some(Witness::Leader(witness)),
    ))
}

/// Calls `visit` with every `k` of length `n` with `Σ k <= total`.
fn for_each_composition(n: usize, total: u32, visit: &mut impl FnMut(&[u32])) {
    fn go(k: &mut Vec<u32>, n: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
        if k.len() == n {
            visit(k);
            return;
        }
        for v in 0..=left {
            k.push(v);
            go(k, n, left - v, visit);
            k.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, total, visit);
}

/// Maximizes the worst-case production over the lattice
/// `x_i = k_i R_l / resolution`, `Σ k_i <= resolution`. The grid maximum is a
/// lower bound on the true optimum, so agreement means the solver is at
/// least as good.
pub fn leader_grid_oracle(inst: &Instance, resolution: u32) -> Result<OracleVerdict> {
    leader_grid_oracle_with_limit(inst, resolution, OracleLimits::default().grid)
}

pub fn leader_grid_oracle_with_limit(inst: &Instance, resolution: u32, limit: usize) -> Result<OracleVerdict> {
    check_size(inst, limit)?;
    if resolution == 0 {
        return Err(Error::ZeroResolution);
    }
    let step = inst.leader_budget() / Ratio::from_integer(resolution as i64);
    let mut best: Option<(Ratio, LeaderStrategy)> = None;
    for_each_composition(inst.len(), resolution, &mut |k| {
        let x =
            LeaderStrategy::from_vec_unchecked(k.iter().map(|&ki| Ratio::from_integer(ki as i64) * &step).collect());
        let value = worst_case(inst, &x);
        if best.as_ref().is_none_or(|(v, _)| &value > v) {
            best = Some((value, x));
        }
    });
    let (oracle_value, x) = best.expect("grid contains the origin");
    Ok(OracleVerdict::lower_bound(
        oracle_value,
        solve(inst).value,
        Some(Witness::Leader(x)),
    ))
}
