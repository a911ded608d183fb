//! The follower's problem: given the leader's allocation, spend the
//! destructive budget to minimize total production after destruction.
//!
//! This is a fractional knapsack. Destroying `y_i` units at facility `i`
//! removes `y_i * p_i x_i / a_i` production, so the follower destroys
//! facilities greedily in order of non-increasing destruction ratio
//! `p_i x_i / a_i` until the budget runs out.

use std::cmp::Ordering;

use crate::instance::{FacilitySet, Instance};
use crate::ratio::Ratio;
use crate::strategy::{FollowerStrategy, LeaderStrategy};

/// The follower's canonical optimal reply to a leader strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerBestResponse {
    /// Destruction order (normalized positions): non-increasing ratio, ties
    /// by ascending original id.
    pub order: Vec<usize>,
    /// Position of the last facility reached by the budget. It may be only
    /// partially destroyed.
    pub threshold: usize,
    /// Facilities receiving destructive resources, threshold included.
    pub destroyed: FacilitySet,
    pub y: FollowerStrategy,
    /// Worst-case total production after destruction for the leader.
    pub worst_case_value: Ratio,
}

/// `p_i * x_i / a_i` for each facility, in normalized order.
pub fn destruction_ratios(inst: &Instance, x: &LeaderStrategy) -> Vec<Ratio> {
    assert_eq!(x.len(), inst.len(), "strategy does not match instance");
    inst.facilities()
        .iter()
        .zip(x.values())
        .map(|(f, xi)| if xi.is_zero() { Ratio::zero() } else { &f.p * xi / &f.a })
        .collect()
}

/// Total production after destruction: `Σ p_i x_i (1 - y_i / a_i)`.
pub fn evaluate(inst: &Instance, x: &LeaderStrategy, y: &FollowerStrategy) -> Ratio {
    assert_eq!(x.len(), inst.len(), "strategy does not match instance");
    assert_eq!(y.len(), inst.len(), "strategy does not match instance");
    let mut total = Ratio::zero();
    for (pos, f) in inst.facilities().iter().enumerate() {
        let xi = x.get(pos);
        if xi.is_zero() {
            continue;
        }
        let produced = &f.p * xi;
        let yi = y.get(pos);
        if yi.is_zero() {
            total += produced;
        } else {
            total += produced * (&f.a - yi) / &f.a;
        }
    }
    total
}

/// Computes the follower's optimal reply in `O(n log n)`.
pub fn best_response(inst: &Instance, x: &LeaderStrategy) -> FollowerBestResponse {
    let ratios = destruction_ratios(inst, x);
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&i, &j| match ratios[j].cmp(&ratios[i]) {
        Ordering::Equal => inst.id_of(i).cmp(&inst.id_of(j)),
        other => other,
    });

    let budget = inst.follower_budget();
    let mut y = vec![Ratio::zero(); inst.len()];
    let mut spent = Ratio::zero();
    let mut threshold = None;
    let mut destroyed = Vec::new();
    for &pos in &order {
        let a = inst.a(pos);
        let reach = &spent + a;
        destroyed.push(pos);
        if &reach >= budget {
            y[pos] = budget - &spent;
            threshold = Some(pos);
            break;
        }
        y[pos] = a.clone();
        spent = reach;
    }
    // Validation guarantees R_f < Σ a_i, so the budget always runs out.
    let threshold = threshold.expect("follower budget below total destruction quantity");

    let y = FollowerStrategy::from_vec_unchecked(y);
    let worst_case_value = evaluate(inst, x, &y);
    FollowerBestResponse {
        order,
        threshold,
        destroyed: FacilitySet::new(destroyed),
        y,
        worst_case_value,
    }
}

/// Worst-case total production after destruction for `x`.
pub fn worst_case(inst: &Instance, x: &LeaderStrategy) -> Ratio {
    best_response(inst, x).worst_case_value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked;
    use crate::ratio::q;
    use crate::strategy::parse_inline;

    fn leader(inst: &Instance, text: &str) -> LeaderStrategy {
        LeaderStrategy::from_original(inst, parse_inline(text).unwrap()).unwrap()
    }

    fn follower(inst: &Instance, text: &str) -> FollowerStrategy {
        FollowerStrategy::from_original(inst, parse_inline(text).unwrap()).unwrap()
    }

    #[test]
    fn ratios_of_example_strategies() {
        let inst = worked();
        let ratios = destruction_ratios(&inst, &leader(&inst, "0,7/10,3/10,0,4"));
        assert_eq!(ratios, vec![q(0, 1), q(28, 5), q(6, 1), q(0, 1), q(16, 3)]);

        let ratios = destruction_ratios(&inst, &leader(&inst, "3/8,5/8,1/4,0,15/4"));
        assert_eq!(ratios, vec![q(5, 1), q(5, 1), q(5, 1), q(0, 1), q(5, 1)]);

        let ratios = destruction_ratios(&inst, &LeaderStrategy::zero(&inst));
        assert!(ratios.iter().all(Ratio::is_zero));
    }

    #[test]
    fn evaluate_example_pair() {
        let inst = worked();
        let x = leader(&inst, "0,7/10,3/10,0,4");
        assert_eq!(evaluate(&inst, &x, &follower(&inst, "0,7/8,1/8,0,3/4")), q(29, 20));
        assert_eq!(evaluate(&inst, &x, &follower(&inst, "0,1,1/4,0,1/2")), q(4, 3));
        // No destruction: Σ p_i x_i = 28/5 + 3/2 + 4.
        assert_eq!(evaluate(&inst, &x, &FollowerStrategy::zero(&inst)), q(111, 10));
    }

    #[test]
    fn best_response_example() {
        let inst = worked();
        let br = best_response(&inst, &leader(&inst, "0,7/10,3/10,0,4"));
        assert_eq!(inst.id_of(br.threshold), 5);
        assert_eq!(br.destroyed.to_ids(&inst), vec![2, 3, 5]);
        assert_eq!(br.y.to_original(&inst), parse_inline("0,1,1/4,0,1/2").unwrap());
        assert_eq!(br.worst_case_value, q(4, 3));
        let order_ids: Vec<usize> = br.order.iter().map(|&p| inst.id_of(p)).collect();
        assert_eq!(order_ids, vec![3, 2, 5, 1, 4]);
    }

    #[test]
    fn zero_allocation_destroys_by_id() {
        let inst = worked();
        let br = best_response(&inst, &LeaderStrategy::zero(&inst));
        assert_eq!(br.worst_case_value, Ratio::zero());
        // a_1 + a_2 = 19/10 >= 7/4: facility 1 fully, facility 2 partially.
        assert_eq!(br.y.to_original(&inst), parse_inline("9/10,17/20,0,0,0").unwrap());
        assert_eq!(inst.id_of(br.threshold), 2);
        assert_eq!(br.y.total(), q(7, 4));
    }

    #[test]
    fn worst_case_examples() {
        let inst = worked();
        assert_eq!(worst_case(&inst, &leader(&inst, "0,7/10,3/10,0,4")), q(4, 3));
        assert_eq!(worst_case(&inst, &leader(&inst, "3/8,5/8,1/4,0,15/4")), q(23, 4));
        assert_eq!(worst_case(&inst, &leader(&inst, "1/15,2/3,4/15,0,4")), q(32, 15));
    }

    #[test]
    fn exact_budget_hit_fully_destroys_threshold() {
        // a_3 + a_2 + ... : choose R_f = a_3 + a_2 = 5/4 for the example x.
        let mut raw = crate::fixtures::worked_raw();
        raw.follower_budget = q(5, 4);
        let inst = crate::instance::validate_instance(&raw).unwrap();
        let br = best_response(&inst, &leader(&inst, "0,7/10,3/10,0,4"));
        assert_eq!(inst.id_of(br.threshold), 2);
        assert_eq!(br.y.get(br.threshold), inst.a(br.threshold));
        assert_eq!(br.destroyed.to_ids(&inst), vec![2, 3]);
    }
}
