//! Proptest strategies for systems and formulae.

use std::collections::BTreeMap;

use mimicry_core::logic::{DistFormula, StateFormula};
use mimicry_core::pts::{Distribution, Label, ProcessId, Pts, PtsBuilder};
use mimicry_core::rational::{ratio, Rational};
use proptest::prelude::*;

/// Shape bounds for [`arb_pts`].
#[derive(Clone, Copy, Debug)]
pub struct PtsShape {
    /// Number of processes, at least 1.
    pub max_states: usize,
    /// Alphabet size, at least 1. Every generated system declares all of
    /// them, so formulae over the same actions always type-check.
    pub max_actions: usize,
    /// Transitions per process that has somewhere to go.
    pub min_fanout: usize,
    /// Upper bound on transitions per process.
    pub max_fanout: usize,
    /// Support size of each distribution.
    pub max_support: usize,
    /// Raw integer weights are drawn from `1..=max_weight` and normalized.
    pub max_weight: u32,
    /// Allow transitions to any process, so cycles may appear.
    pub cyclic: bool,
}

impl Default for PtsShape {
    fn default() -> Self {
        PtsShape {
            max_states: 6,
            max_actions: 2,
            min_fanout: 0,
            max_fanout: 2,
            max_support: 2,
            max_weight: 3,
            cyclic: false,
        }
    }
}

type RawTransition = (usize, Vec<(usize, u32)>);

/// Random system. Unless `cyclic` is set, process `i` only moves to
/// processes with a smaller index, so every process has finite depth.
pub fn arb_pts(shape: PtsShape) -> impl Strategy<Value = Pts> {
    let raw_transition = (
        0..shape.max_actions,
        prop::collection::vec((0..64usize, 1..=shape.max_weight), 1..=shape.max_support),
    );
    (
        1..=shape.max_states,
        Just(shape.max_actions),
        prop::collection::vec(
            prop::collection::vec(raw_transition, shape.min_fanout..=shape.max_fanout),
            shape.max_states,
        ),
    )
        .prop_map(move |(n, actions, raw)| build(n, actions, &raw[..n], shape.cyclic))
}

fn build(n: usize, actions: usize, raw: &[Vec<RawTransition>], cyclic: bool) -> Pts {
    let mut b = PtsBuilder::new();
    let names: Vec<String> = (0..actions).map(action_name).collect();
    for a in &names {
        b.action(a).unwrap();
    }
    let ids: Vec<ProcessId> = (0..n).map(|i| b.process(&format!("p{i}")).unwrap()).collect();
    for (i, ts) in raw.iter().enumerate() {
        let targets = if cyclic { n } else { i };
        if targets == 0 {
            continue;
        }
        for (a, support) in ts {
            let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
            for (t, w) in support {
                *merged.entry(t % targets).or_default() += w;
            }
            let total: u32 = merged.values().sum();
            let dist = Distribution::new(
                merged
                    .into_iter()
                    .map(|(t, w)| (ids[t], ratio(w as i64, total as i64))),
            )
            .unwrap();
            b.transition(ids[i], &names[a % actions], dist).unwrap();
        }
    }
    b.build().unwrap()
}

/// Proptest configuration with `cases` cases and no failure files.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Name of the `i`-th generated action: `a`, `b`, `c`, ...
pub fn action_name(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

/// Random weights with denominators bounded by `count * max_weight`.
fn weights(raw: &[u32]) -> Vec<Rational> {
    let total: u32 = raw.iter().sum();
    raw.iter().map(|w| ratio(*w as i64, total as i64)).collect()
}

/// Random state formula over the first `actions` generated actions.
///
/// `depth` bounds constructor nesting; `width` bounds conjunction and term
/// counts.
pub fn arb_formula(actions: usize, depth: u32, width: usize) -> impl Strategy<Value = StateFormula> {
    let labels: Vec<Label> = (0..actions).map(|i| Label::new(&action_name(i)).unwrap()).collect();
    let leaf = Just(StateFormula::Top);
    leaf.prop_recursive(depth, 48, width as u32, move |inner| {
        let labels = labels.clone();
        prop_oneof![
            inner.clone().prop_map(StateFormula::not),
            prop::collection::vec(inner.clone(), 1..=width)
                .prop_map(|ms| StateFormula::and(ms).unwrap()),
            (
                0..labels.len(),
                prop::collection::vec((1..=3u32, inner), 1..=width)
            )
                .prop_map(move |(a, terms)| {
                    let raw: Vec<u32> = terms.iter().map(|(w, _)| *w).collect();
                    let psi = DistFormula::new(
                        weights(&raw)
                            .into_iter()
                            .zip(terms.into_iter().map(|(_, f)| f))
                            .collect(),
                    )
                    .unwrap();
                    StateFormula::diamond(labels[a].clone(), psi)
                }),
        ]
    })
}

/// Random distribution formula whose terms come from [`arb_formula`].
pub fn arb_dist_formula(actions: usize, depth: u32, width: usize) -> impl Strategy<Value = DistFormula> {
    prop::collection::vec((1..=3u32, arb_formula(actions, depth, width)), 1..=width).prop_map(|terms| {
        let raw: Vec<u32> = terms.iter().map(|(w, _)| *w).collect();
        DistFormula::new(
            weights(&raw)
                .into_iter()
                .zip(terms.into_iter().map(|(_, f)| f))
                .collect(),
        )
        .unwrap()
    })
}

/// A distribution over `0..n` with at most `max_support` points.
pub fn arb_distribution(n: usize, max_support: usize, max_weight: u32) -> impl Strategy<Value = Distribution> {
    prop::collection::vec((0..n, 1..=max_weight), 1..=max_support).prop_map(|raw| {
        let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
        for (s, w) in raw {
            *merged.entry(s).or_default() += w;
        }
        let total: u32 = merged.values().sum();
        Distribution::new(
            merged
                .into_iter()
                .map(|(s, w)| (ProcessId::new(s), ratio(w as i64, total as i64))),
        )
        .unwrap()
    })
}

/// A distribution over `0..n` with at most `max_support` points whose
/// weights share a denominator of at most `max_den`.
pub fn arb_bounded_distribution(n: usize, max_support: usize, max_den: usize) -> impl Strategy<Value = Distribution> {
    (1..=max_support.min(n).min(max_den))
        .prop_flat_map(move |k| (prop::sample::subsequence((0..n).collect::<Vec<_>>(), k), k..=max_den))
        .prop_flat_map(|(points, den)| {
            let k = points.len();
            (Just(points), Just(den), prop::sample::subsequence((1..den).collect::<Vec<_>>(), k - 1))
        })
        .prop_map(|(points, den, mut cuts)| {
            cuts.push(den);
            let mut prev = 0;
            Distribution::new(points.into_iter().zip(cuts).map(|(s, c)| {
                let w = ratio((c - prev) as i64, den as i64);
                prev = c;
                (ProcessId::new(s), w)
            }))
            .unwrap()
        })
}

/// Three mimicking formulae `φ_s^k`, `φ_t^k`, `φ_u^k` of one random
/// one-action system with at least four processes, with `2 ≤ k ≤ 4`.
/// Their distances are often strictly between 0 and 1.
pub fn arb_mimicking_triple() -> impl Strategy<Value = [StateFormula; 3]> {
    (
        arb_pts(PtsShape {
            max_states: 7,
            max_actions: 1,
            min_fanout: 1,
            max_fanout: 2,
            max_support: 3,
            max_weight: 3,
            cyclic: false,
        })
        .prop_filter("too few processes", |pts| pts.len() >= 4),
        [1..7usize, 1..7usize, 1..7usize],
        2..=4usize,
    )
        .prop_map(|(pts, picks, k)| {
            let mut m = mimicry_core::mimicking::Mimicker::mimicking(&pts);
            picks.map(|s| m.state(ProcessId::new(s % pts.len()), k).unwrap())
        })
}
