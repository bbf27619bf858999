//! Seeded random acyclic systems.
//!
//! States are assigned to depth strata first; a state on level `l > 0` gets
//! at least one transition reaching level `l - 1` and only ever reaches
//! lower levels, so the result is acyclic and every state's depth equals its
//! level.

use mimicry_core::rational::ratio;
use mimicry_core::{Distribution, ProcessId, Pts, PtsBuilder};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bounds for [`generate_random_pts`]. All fields must be positive except
/// `max_depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    /// Upper bound on the number of processes.
    pub max_states: usize,
    /// Upper bound on the depth of every process.
    pub max_depth: usize,
    /// Upper bound on outgoing transitions per process.
    pub max_fanout: usize,
    /// Upper bound on the support size of every distribution.
    pub max_support: usize,
    /// Upper bound on every weight's denominator.
    pub denominator_bound: usize,
    /// Size of the alphabet `a`, `b`, ...
    pub actions: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            max_states: 12,
            max_depth: 3,
            max_fanout: 2,
            max_support: 3,
            denominator_bound: 4,
            actions: 2,
        }
    }
}

/// Name of the `i`-th generated action.
fn action(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        char::from(letters[i]).to_string()
    } else {
        format!("a{i}")
    }
}

/// Builds the system for `seed`; equal seeds and params give equal systems.
pub fn generate_random_pts(seed: u64, params: &GeneratorParams) -> Pts {
    assert!(
        params.max_states > 0
            && params.max_fanout > 0
            && params.max_support > 0
            && params.denominator_bound > 0
            && params.actions > 0,
        "generator bounds must be positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=params.max_states);

    let mut levels = vec![0usize];
    let mut top = 0;
    for _ in 1..n {
        let l = rng.random_range(0..=params.max_depth.min(top + 1));
        top = top.max(l);
        levels.push(l);
    }

    let mut b = PtsBuilder::new();
    let actions: Vec<String> = (0..params.actions).map(action).collect();
    for a in &actions {
        b.action(a).expect("nonempty");
    }
    let ids: Vec<ProcessId> = (0..n).map(|i| b.process(&format!("p{i}")).expect("nonempty")).collect();

    for (i, &l) in levels.iter().enumerate() {
        if l == 0 {
            continue;
        }
        let below: Vec<usize> = (0..n).filter(|&j| levels[j] < l).collect();
        let just_below: Vec<usize> = (0..n).filter(|&j| levels[j] == l - 1).collect();
        let fanout = rng.random_range(1..=params.max_fanout);
        for k in 0..fanout {
            let a = &actions[rng.random_range(0..actions.len())];
            let size = rng
                .random_range(1..=params.max_support)
                .min(below.len())
                .min(params.denominator_bound);
            let mut targets: Vec<usize> = sample(&mut rng, below.len(), size)
                .into_iter()
                .map(|j| below[j])
                .collect();
            if k == 0 && !targets.iter().any(|&t| levels[t] == l - 1) {
                targets[0] = just_below[rng.random_range(0..just_below.len())];
            }
            let weights = composition(&mut rng, size, params.denominator_bound);
            let dist = Distribution::new(targets.iter().zip(weights).map(|(&t, w)| (ids[t], w)))
                .expect("targets are distinct and weights sum to one");
            b.transition(ids[i], a, dist).expect("action declared");
        }
    }
    b.build().expect("generated systems are well formed")
}

/// `parts` positive weights with a common denominator of at most `bound`
/// summing to one.
fn composition(rng: &mut ChaCha8Rng, parts: usize, bound: usize) -> Vec<mimicry_core::Rational> {
    let den = rng.random_range(parts..=bound);
    let mut cuts: Vec<usize> = sample(rng, den - 1, parts - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(den);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let w = ratio((c - prev) as i64, den as i64);
            prev = c;
            w
        })
        .collect()
}
