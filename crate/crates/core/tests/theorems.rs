//! Characterization results for mimicking and simulation characteristic
//! formulae, and agreement of the logical distance with the bisimilarity
//! metric, on random systems.

use mimicry_core::formula_metric::{logical_distance_table, logical_distance_table_upto};
use mimicry_core::logic::{l_equiv, modal_depth, Checker};
use mimicry_core::metrics::{bisimilarity_metric, upto_k_chain};
use mimicry_core::mimicking::{mimicking, sim_characteristic, Mimicker};
use mimicry_core::rational::ratio;
use mimicry_core::relations::{greatest_relation, upto_chain};
use mimicry_core::{Discount, Pts, RelationKind};
use mimicry_testkit::strategies::{arb_pts, config, PtsShape};
use proptest::prelude::*;

fn systems() -> impl Strategy<Value = Pts> {
    prop_oneof![
        3 => arb_pts(PtsShape {
            max_states: 8,
            max_actions: 2,
            min_fanout: 0,
            max_fanout: 2,
            max_support: 3,
            max_weight: 4,
            cyclic: false,
        }),
        1 => arb_pts(PtsShape { max_states: 5, cyclic: true, ..PtsShape::default() }),
    ]
}

fn acyclic() -> impl Strategy<Value = Pts> {
    arb_pts(PtsShape {
        max_states: 8,
        max_actions: 2,
        min_fanout: 1,
        max_fanout: 2,
        max_support: 3,
        max_weight: 4,
        cyclic: false,
    })
}

fn lambda() -> impl Strategy<Value = Discount> {
    prop_oneof![Just(ratio(1, 1)), Just(ratio(1, 2)), Just(ratio(3, 4))]
        .prop_map(|l| Discount::new(l).unwrap())
}

/// Levels worth checking: past the depth for finite systems, a few for
/// cyclic ones.
fn max_level(pts: &Pts) -> usize {
    pts.max_depth().map_or(4, |d| d + 2)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn mimicking_formulae_characterize_relations(pts in systems()) {
        let kmax = max_level(&pts);
        let sim = upto_chain(&pts, RelationKind::Simulation, kmax);
        let ready = upto_chain(&pts, RelationKind::ReadySimulation, kmax);
        let bisim = upto_chain(&pts, RelationKind::Bisimulation, kmax);
        let mut phi = Mimicker::mimicking(&pts);
        let mut theta = Mimicker::sim_characteristic(&pts);
        let mut checker = Checker::new(&pts);
        for k in 0..=kmax {
            for s in pts.processes() {
                let phi_s = phi.state(s, k).unwrap();
                let theta_s = theta.state(s, k).unwrap();
                prop_assert!(checker.state(s, &phi_s).unwrap());
                for t in pts.processes() {
                    let phi_t = phi.state(t, k).unwrap();
                    let t_phi = checker.state(t, &phi_s).unwrap();
                    prop_assert_eq!(l_equiv(&phi_s, &phi_t), bisim[k].contains(s, t));
                    prop_assert_eq!(t_phi, ready[k].contains(s, t));
                    prop_assert_eq!(checker.state(t, &theta_s).unwrap(), sim[k].contains(s, t));
                    prop_assert!(!t_phi || sim[k].contains(s, t));
                }
            }
        }
    }

    #[test]
    fn full_mimicking_formulae(pts in acyclic()) {
        let bisim = greatest_relation(&pts, RelationKind::Bisimulation);
        let sim = greatest_relation(&pts, RelationKind::Simulation);
        let ready = greatest_relation(&pts, RelationKind::ReadySimulation);
        let mut m = Mimicker::mimicking(&pts);
        let mut checker = Checker::new(&pts);
        for s in pts.processes() {
            let depth = pts.finite_depth(s).unwrap();
            let phi_s = mimicking(&pts, s).unwrap();
            let theta_s = sim_characteristic(&pts, s).unwrap();
            prop_assert_eq!(modal_depth(&phi_s), depth + 1);
            prop_assert_eq!(modal_depth(&phi_s), modal_depth(&theta_s) + 1);
            for k in depth + 1..depth + 4 {
                prop_assert_eq!(&m.state(s, k).unwrap(), &phi_s);
            }
            for t in pts.processes() {
                let phi_t = mimicking(&pts, t).unwrap();
                prop_assert_eq!(l_equiv(&phi_s, &phi_t), bisim.contains(s, t));
                prop_assert_eq!(checker.state(t, &phi_s).unwrap(), ready.contains(s, t));
                prop_assert_eq!(checker.state(t, &theta_s).unwrap(), sim.contains(s, t));
            }
        }
    }

    #[test]
    fn logical_distance_equals_bisimilarity_metric(pts in systems(), lambda in lambda()) {
        let kmax = max_level(&pts);
        let chain = upto_k_chain(&pts, &lambda, kmax);
        for (k, d) in chain.iter().enumerate() {
            prop_assert_eq!(&logical_distance_table_upto(&pts, &lambda, k), d, "k = {}", k);
        }
        if pts.first_infinite().is_none() {
            let ell = logical_distance_table(&pts, &lambda).unwrap();
            prop_assert_eq!(&ell, &bisimilarity_metric(&pts, &lambda).unwrap());
            let mut m = Mimicker::mimicking(&pts);
            for s in pts.processes() {
                for t in pts.processes() {
                    let fs = m.state(s, pts.finite_depth(s).unwrap() + 1).unwrap();
                    let ft = m.state(t, pts.finite_depth(t).unwrap() + 1).unwrap();
                    prop_assert_eq!(l_equiv(&fs, &ft), num_traits::Zero::is_zero(ell.get(s, t)));
                }
            }
        }
    }
}

#[test]
fn cyclic_processes_have_no_full_formula() {
    use mimicry_core::{Distribution, Error, PtsBuilder};
    let mut b = PtsBuilder::new();
    b.action("a").unwrap();
    let s = b.process("s").unwrap();
    b.transition(s, "a", Distribution::dirac(s)).unwrap();
    let pts = b.build().unwrap();
    assert!(matches!(mimicking(&pts, s), Err(Error::NotFiniteProcess(_))));
    assert!(matches!(sim_characteristic(&pts, s), Err(Error::NotFiniteProcess(_))));
    assert!(matches!(
        logical_distance_table(&pts, &Discount::one()),
        Err(Error::NotFiniteProcess(_))
    ));
    // finite unfoldings still exist
    let mut m = Mimicker::mimicking(&pts);
    assert_eq!(modal_depth(&m.state(s, 3).unwrap()), 3);
}
