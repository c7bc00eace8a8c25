//! Ear decompositions and the prefix rules, checked against exhaustive nF* on every prefix.

mod common;

use common::*;
use nfstar_core::ears::{find_ear_decomposition, validate_decomposition, DEFAULT_BUDGET};
use nfstar_core::is_matching_covered;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn prefix_rules_hold(g in mixed_matching_covered_graph(8, 13)) {
        let d = find_ear_decomposition(&g, DEFAULT_BUDGET).unwrap();
        prop_assert!(validate_decomposition(&g, &d).is_ok());
        let mut doubles = 0;
        for i in 1..=d.r() {
            let prefix = d.prefix(&g, i).graph;
            prop_assert!(is_matching_covered(&prefix).is_yes());
            let eps: usize = d.steps[..i].iter().map(|s| usize::from(s.epsilon)).sum();
            prop_assert_eq!(eps, prefix.m() + 1 - prefix.n());
            let empty = brute_nf_star(&prefix).is_empty();
            if eps <= i + 1 {
                prop_assert!(empty, "prefix {} has at most one double ear but non-empty nF*", i);
            }
            if d.steps[i - 1].epsilon == 2 {
                doubles += 1;
                if doubles >= 2 {
                    prop_assert!(!empty, "prefix {} ends in a second double ear but nF* is empty", i);
                }
            }
        }
    }
}
