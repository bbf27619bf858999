//! Determinism and bounds of the random system generator.

use std::collections::BTreeSet;

use mimicry::{generate_random_pts, GeneratorParams};
use num_traits::One;

#[test]
fn same_seed_same_system() {
    let params = GeneratorParams::default();
    for seed in [0, 1, 42, u64::MAX] {
        assert_eq!(generate_random_pts(seed, &params), generate_random_pts(seed, &params));
    }
    let distinct: BTreeSet<String> = (0..20)
        .map(|seed| mimicry::serialize_pts(&generate_random_pts(seed, &params)))
        .collect();
    assert!(distinct.len() > 15);
}

#[test]
fn depth_zero_means_no_transitions() {
    let params = GeneratorParams { max_depth: 0, ..GeneratorParams::default() };
    for seed in 0..50 {
        let pts = generate_random_pts(seed, &params);
        assert!(pts.processes().all(|s| pts.transition_count(s) == 0));
    }
}

#[test]
fn generated_systems_respect_bounds() {
    let params = GeneratorParams::default();
    let mut depths = BTreeSet::new();
    for seed in 0..1000 {
        let pts = generate_random_pts(seed, &params);
        assert!((1..=params.max_states).contains(&pts.len()));
        let depth = pts.max_depth().expect("acyclic");
        assert!(depth <= params.max_depth);
        depths.insert(depth);
        for s in pts.processes() {
            assert!(pts.transition_count(s) <= params.max_fanout);
            let ds = pts.finite_depth(s).unwrap();
            for (a, dist) in pts.transitions(s) {
                assert!(pts.alphabet().contains(a));
                assert!(dist.len() <= params.max_support);
                assert!(dist.iter().map(|(_, w)| w.clone()).sum::<mimicry_core::Rational>().is_one());
                for (t, w) in dist.iter() {
                    assert!(*w.denom() <= (params.denominator_bound as u64).into());
                    assert!(pts.finite_depth(t).unwrap() < ds);
                }
            }
        }
    }
    assert_eq!(depths, (0..=params.max_depth).collect());
}
