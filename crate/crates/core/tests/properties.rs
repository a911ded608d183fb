use proptest::prelude::*;
use stackprod_core::gen::{generate, random_follower_strategy, random_leader_strategy, rng_from_seed};
use stackprod_core::{
    balanced_allocation, best_response, classify, evaluate, solve, validate_instance, worst_case, FacilitySet,
    LeaderStrategy, RawInstance, StrategyKind,
};

fn instance(n: usize, seed: u64) -> stackprod_core::Instance {
    validate_instance(&generate(n, seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn input_order_does_not_change_the_value(n in 1usize..9, seed in any::<u64>(), shift in 0usize..9) {
        let raw = generate(n, seed);
        let mut rotated = raw.clone();
        rotated.facilities.rotate_left(shift % n);
        let a = validate_instance(&raw).unwrap();
        let b = validate_instance(&rotated).unwrap();
        prop_assert_eq!(solve(&a).value, solve(&b).value);
    }

    #[test]
    fn normalization_is_idempotent(n in 1usize..9, seed in any::<u64>()) {
        let inst = instance(n, seed);
        let again = validate_instance(&inst.to_raw_normalized()).unwrap();
        prop_assert_eq!(inst.to_raw_normalized(), again.to_raw_normalized());
        let json: RawInstance = RawInstance::from_json(&inst.to_raw().to_json_pretty()).unwrap();
        prop_assert_eq!(json, inst.to_raw());
    }

    #[test]
    fn balanced_allocations_classify_as_balanced(n in 1usize..9, seed in any::<u64>(), mask in 1u32..512) {
        let inst = instance(n, seed);
        let set = FacilitySet::new((0..n).filter(|&pos| mask & (1 << pos) != 0));
        prop_assume!(!set.is_empty());
        let x = balanced_allocation(&inst, &set).unwrap();
        let class = classify(&inst, &x);
        prop_assert!(class.is_balanced());
        prop_assert_eq!(&class.support, &set);
        prop_assert_eq!(class.kind == StrategyKind::SeriedBalanced, set.is_prefix());
    }

    #[test]
    fn solver_output_is_seried_balanced(n in 1usize..12, seed in any::<u64>()) {
        let inst = instance(n, seed);
        let report = solve(&inst);
        let class = classify(&inst, &report.strategy);
        prop_assert_eq!(class.kind, StrategyKind::SeriedBalanced);
        prop_assert_eq!(&class.support, &report.support);
        prop_assert_eq!(worst_case(&inst, &report.strategy), report.value);
    }

    #[test]
    fn best_response_beats_random_replies(n in 1usize..9, seed in any::<u64>()) {
        let inst = instance(n, seed);
        let mut rng = rng_from_seed(seed);
        let x: LeaderStrategy = random_leader_strategy(&mut rng, &inst);
        let best = best_response(&inst, &x).worst_case_value;
        prop_assert!(!best.is_negative());
        for _ in 0..10 {
            let y = random_follower_strategy(&mut rng, &inst);
            let value = evaluate(&inst, &x, &y);
            prop_assert!(!value.is_negative());
            prop_assert!(best <= value);
        }
    }
}
