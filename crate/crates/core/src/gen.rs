//! Seeded random instances and strategies.
//!
//! Values are rationals with small denominators so that exact arithmetic
//! stays cheap and ties (equal rates, equal ratios) show up regularly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{validate_instance, Instance, RawInstance};
use crate::ratio::Ratio;
use crate::strategy::{FollowerStrategy, LeaderStrategy};

const DENOMINATORS: [i64; 4] = [1, 2, 4, 5];

/// Parameters of the random instance distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    /// Production rates are drawn from `(0, max_rate]`.
    pub max_rate: i64,
    /// Destruction quantities are drawn from `(0, max_quantity]`.
    pub max_quantity: i64,
    /// The leader budget is drawn from `(0, max_budget]`.
    pub max_budget: i64,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_rate: 20,
            max_quantity: 2,
            max_budget: 10,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `{k/d : 1 <= k <= max * d}` for a random small `d`.
fn small_rational(rng: &mut impl Rng, max: i64) -> Ratio {
    let d = *DENOMINATORS.choose(rng).expect("nonempty");
    Ratio::new(rng.gen_range(1..=max * d), d)
}

/// A random valid instance; `R_f` is a strict fraction of `Σ a_i`.
pub fn random_raw_instance(rng: &mut impl Rng, n: usize, shape: InstanceShape) -> RawInstance {
    assert!(n >= 1, "need at least one facility");
    let pairs: Vec<(Ratio, Ratio)> = (0..n)
        .map(|_| {
            (
                small_rational(rng, shape.max_rate),
                small_rational(rng, shape.max_quantity),
            )
        })
        .collect();
    let total: Ratio = pairs.iter().map(|(_, a)| a).sum();
    let leader_budget = small_rational(rng, shape.max_budget);
    let follower_budget = total * Ratio::new(rng.gen_range(1..100), 100);
    RawInstance::from_pairs(&pairs, leader_budget, follower_budget)
}

/// Deterministic instance for `(n, seed)` with the default shape.
pub fn generate(n: usize, seed: u64) -> RawInstance {
    random_raw_instance(&mut rng_from_seed(seed), n, InstanceShape::default())
}

pub fn random_instance(rng: &mut impl Rng, n: usize) -> Instance {
    validate_instance(&random_raw_instance(rng, n, InstanceShape::default())).expect("generated instances are valid")
}

/// A random feasible leader strategy. Some facilities get nothing and the
/// budget is spent in full about half of the time.
pub fn random_leader_strategy(rng: &mut impl Rng, inst: &Instance) -> LeaderStrategy {
    let weights: Vec<i64> = (0..inst.len())
        .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=12) })
        .collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return LeaderStrategy::zero(inst);
    }
    let spend = if rng.gen_bool(0.5) {
        inst.leader_budget().clone()
    } else {
        inst.leader_budget() * Ratio::new(rng.gen_range(0..=10), 10)
    };
    let x = weights.iter().map(|&w| Ratio::new(w, total) * &spend).collect();
    LeaderStrategy::new(inst, x).expect("random leader strategy is feasible")
}

/// A random feasible follower strategy: either a greedy filling along a
/// random order (a vertex of the feasible set) or a random interior point.
pub fn random_follower_strategy(rng: &mut impl Rng, inst: &Instance) -> FollowerStrategy {
    let n = inst.len();
    let mut y = vec![Ratio::zero(); n];
    if rng.gen_bool(0.5) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut left = inst.follower_budget().clone();
        for pos in order {
            let take = if inst.a(pos) < &left {
                inst.a(pos).clone()
            } else {
                left.clone()
            };
            left -= &take;
            y[pos] = take;
        }
    } else {
        // Each y_i in [0, a_i], then scaled down to fit the budget.
        for (pos, yi) in y.iter_mut().enumerate() {
            *yi = inst.a(pos) * Ratio::new(rng.gen_range(0..=8), 8);
        }
        let total: Ratio = y.iter().sum();
        if &total > inst.follower_budget() {
            let scale = inst.follower_budget() / total;
            for yi in &mut y {
                *yi = &*yi * &scale;
            }
        }
    }
    FollowerStrategy::new(inst, y).expect("random follower strategy is feasible")
}
