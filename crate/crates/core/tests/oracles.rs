//! Agreement with brute-force oracles on small instances.

mod common;

use mimicry_core::formula_metric::FormulaDistance;
use mimicry_core::logic::{satisfies_dist, satisfies_state};
use mimicry_core::metrics::{kantorovich, PseudometricTable};
use mimicry_core::rational::{ratio, Rational};
use mimicry_core::relations::{lift_check, lift_witness, Relation};
use mimicry_core::transport;
use mimicry_core::{Discount, ProcessId};
use mimicry_testkit::oracles::{decomposes, transport_by_vertices};
use mimicry_testkit::strategies::{
    arb_dist_formula, arb_distribution, arb_formula, arb_pts, config, PtsShape,
};
use proptest::prelude::*;

/// Positive masses with denominators at most `max_den`, summing to 1.
fn masses(len: std::ops::RangeInclusive<usize>, max_weight: u32) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1..=max_weight, len).prop_map(|raw| {
        let total: u32 = raw.iter().sum();
        raw.iter().map(|w| ratio(*w as i64, total as i64)).collect()
    })
}

fn cost_matrix(m: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((0..=6i64).prop_map(|c| ratio(c, 6)), n), m)
}

fn symmetric_table(n: usize) -> impl Strategy<Value = PseudometricTable> {
    prop::collection::vec(0..=4i64, n * n).prop_map(move |raw| {
        PseudometricTable::from_fn(n, |s, t| {
            let (i, j) = (s.index().min(t.index()), s.index().max(t.index()));
            if i == j {
                ratio(0, 1)
            } else {
                ratio(raw[i * n + j], 4)
            }
        })
    })
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn transport_matches_vertex_enumeration(
        (supply, demand, cost) in (masses(1..=3, 3), masses(1..=3, 3))
            .prop_flat_map(|(s, d)| {
                let (m, n) = (s.len(), d.len());
                (Just(s), Just(d), cost_matrix(m, n))
            })
    ) {
        let plan = transport::solve(&supply, &demand, &cost);
        prop_assert_eq!(&plan.cost, &transport_by_vertices(&supply, &demand, &cost));
        // the plan is feasible and has the claimed cost
        let mut rows = vec![Rational::from_integer(0.into()); supply.len()];
        let mut cols = vec![Rational::from_integer(0.into()); demand.len()];
        let mut total = Rational::from_integer(0.into());
        for (i, j, w) in &plan.cells {
            rows[*i] += w;
            cols[*j] += w;
            total += w * &cost[*i][*j];
        }
        prop_assert_eq!(rows, supply);
        prop_assert_eq!(cols, demand);
        prop_assert_eq!(total, plan.cost);
    }

    #[test]
    fn kantorovich_matches_vertex_enumeration(
        d in symmetric_table(5),
        pi in arb_distribution(5, 3, 6),
        pi2 in arb_distribution(5, 3, 6),
    ) {
        let (value, matching) = kantorovich(&d, &pi, &pi2);
        let supply: Vec<Rational> = pi.iter().map(|(_, w)| w.clone()).collect();
        let demand: Vec<Rational> = pi2.iter().map(|(_, w)| w.clone()).collect();
        let cost: Vec<Vec<Rational>> = pi
            .support()
            .map(|s| pi2.support().map(|t| d.get(s, t).clone()).collect())
            .collect();
        prop_assert_eq!(&value, &transport_by_vertices(&supply, &demand, &cost));
        prop_assert!(matching.is_coupling_of(&pi, &pi2));
        prop_assert_eq!(matching.cost(&d), value);
    }

    #[test]
    fn lifting_matches_decomposition_search(
        bits in prop::collection::vec(any::<bool>(), 36),
        pi in arb_distribution(6, 3, 6),
        pi2 in arb_distribution(6, 3, 6),
    ) {
        let r = Relation::from_pairs(
            6,
            (0..36).filter(|k| bits[*k]).map(|k| (ProcessId::new(k / 6), ProcessId::new(k % 6))),
        );
        let left: Vec<ProcessId> = pi.support().collect();
        let right: Vec<ProcessId> = pi2.support().collect();
        let supply: Vec<Rational> = pi.iter().map(|(_, w)| w.clone()).collect();
        let demand: Vec<Rational> = pi2.iter().map(|(_, w)| w.clone()).collect();
        let expected = decomposes(&supply, &demand, &|i, j| r.contains(left[i], right[j]));
        prop_assert_eq!(lift_check(&r, &pi, &pi2), expected);
        if let Some(w) = lift_witness(&r, &pi, &pi2) {
            for (s, t, _) in &w {
                prop_assert!(r.contains(*s, *t));
            }
        }
    }

    #[test]
    fn distribution_satisfaction_matches_decomposition_search(
        pts in arb_pts(PtsShape { max_states: 5, max_actions: 2, ..PtsShape::default() }),
        pi in arb_distribution(5, 3, 6),
        psi in arb_dist_formula(2, 2, 3),
    ) {
        let n = pts.len();
        prop_assume!(pi.support().all(|s| s.index() < n));
        let states: Vec<ProcessId> = pi.support().collect();
        let supply: Vec<Rational> = pi.iter().map(|(_, w)| w.clone()).collect();
        let demand: Vec<Rational> = psi.terms().iter().map(|(r, _)| r.clone()).collect();
        let sat: Vec<Vec<bool>> = states
            .iter()
            .map(|&s| psi.terms().iter().map(|(_, f)| satisfies_state(&pts, s, f).unwrap()).collect())
            .collect();
        let expected = decomposes(&supply, &demand, &|i, j| sat[i][j]);
        prop_assert_eq!(satisfies_dist(&pts, &pi, &psi).unwrap(), expected);
    }

    #[test]
    fn formula_transport_matches_vertex_enumeration(
        psi1 in arb_dist_formula(2, 2, 3),
        psi2 in arb_dist_formula(2, 2, 3),
        k in 0usize..4,
        lambda in prop_oneof![Just(ratio(1, 1)), Just(ratio(1, 2)), Just(ratio(3, 4))],
    ) {
        let mut fd = FormulaDistance::new(Discount::new(lambda).unwrap());
        let (value, matching) = fd.dist_matching_upto(k, &psi1, &psi2);
        let supply: Vec<Rational> = psi1.terms().iter().map(|(r, _)| r.clone()).collect();
        let demand: Vec<Rational> = psi2.terms().iter().map(|(r, _)| r.clone()).collect();
        let cost: Vec<Vec<Rational>> = psi1
            .terms()
            .iter()
            .map(|(_, f)| psi2.terms().iter().map(|(_, g)| fd.state_upto(k, f, g)).collect())
            .collect();
        prop_assert_eq!(&value, &transport_by_vertices(&supply, &demand, &cost));
        prop_assert_eq!(&fd.dist_upto(k, &psi1, &psi2), &value);
        prop_assert!(matching.is_matching_of(&psi1, &psi2));
    }
}

#[test]
fn state_formula_strategy_produces_variety() {
    // guards against a degenerate strategy silently weakening the suites
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strat = arb_formula(2, 3, 3);
    let depths: std::collections::BTreeSet<usize> = (0..200)
        .map(|_| mimicry_core::logic::modal_depth(&strat.new_tree(&mut runner).unwrap().current()))
        .collect();
    assert!(depths.len() >= 3, "{depths:?}");
}
