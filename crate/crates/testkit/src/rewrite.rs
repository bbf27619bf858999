//! Single-step rewrites generating structural equivalence, and a bounded
//! closure search built on them.
//!
//! The forward rules never grow a formula:
//!
//! * flatten a conjunct that is itself a conjunction;
//! * drop a conjunct that is a conjunction of other conjuncts;
//! * drop a repeated conjunct;
//! * swap two adjacent conjuncts;
//! * replace a one-member conjunction by its member;
//! * merge two terms of a distribution formula with identical formulae;
//! * swap two adjacent terms.
//!
//! Each applies at any position. The inverse rules used by
//! [`random_equivalent`] undo them.

use std::collections::{BTreeSet, VecDeque};

use mimicry_core::logic::{DistFormula, StateFormula};
use mimicry_core::rational::{ratio, Rational};
use proptest::test_runner::TestRng;
use rand::RngExt;

fn and(members: Vec<StateFormula>) -> StateFormula {
    StateFormula::and(members).expect("rewrites keep conjunctions nonempty")
}

fn dist(terms: Vec<(Rational, StateFormula)>) -> DistFormula {
    DistFormula::new(terms).expect("rewrites keep weights valid")
}

/// All formulae one forward rewrite away from `phi`.
pub fn forward(phi: &StateFormula) -> Vec<StateFormula> {
    let mut out = Vec::new();
    match phi {
        StateFormula::Top => {}
        StateFormula::Not(g) => {
            out.extend(forward(g).into_iter().map(StateFormula::not));
        }
        StateFormula::And(c) => {
            let ms = c.members();
            if ms.len() == 1 {
                out.push(ms[0].clone());
            }
            for i in 0..ms.len() {
                if let StateFormula::And(inner) = &ms[i] {
                    let mut v = ms[..i].to_vec();
                    v.extend(inner.members().iter().cloned());
                    v.extend(ms[i + 1..].iter().cloned());
                    out.push(and(v));
                    let others: Vec<&StateFormula> =
                        ms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m).collect();
                    if inner.members().iter().all(|x| others.contains(&x)) {
                        out.push(and(without(ms, i)));
                    }
                }
                if ms.len() > 1 && ms.iter().enumerate().any(|(j, m)| j != i && *m == ms[i]) {
                    out.push(and(without(ms, i)));
                }
                if i + 1 < ms.len() {
                    let mut v = ms.to_vec();
                    v.swap(i, i + 1);
                    out.push(and(v));
                }
                for g in forward(&ms[i]) {
                    let mut v = ms.to_vec();
                    v[i] = g;
                    out.push(and(v));
                }
            }
        }
        StateFormula::Diamond(a, psi) => {
            out.extend(
                forward_dist(psi)
                    .into_iter()
                    .map(|p| StateFormula::diamond(a.clone(), p)),
            );
        }
    }
    out
}

/// All distribution formulae one forward rewrite away from `psi`.
pub fn forward_dist(psi: &DistFormula) -> Vec<DistFormula> {
    let ts = psi.terms();
    let mut out = Vec::new();
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if ts[i].1 == ts[j].1 {
                let mut v = ts.to_vec();
                v[i].0 = &ts[i].0 + &ts[j].0;
                v.remove(j);
                out.push(dist(v));
            }
        }
        if i + 1 < ts.len() {
            let mut v = ts.to_vec();
            v.swap(i, i + 1);
            out.push(dist(v));
        }
        for g in forward(&ts[i].1) {
            let mut v = ts.to_vec();
            v[i].1 = g;
            out.push(dist(v));
        }
    }
    out
}

fn without(ms: &[StateFormula], i: usize) -> Vec<StateFormula> {
    ms.iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, m)| m.clone())
        .collect()
}

/// Everything reachable from `phi` by forward rewrites, or `None` once more
/// than `limit` formulae have been seen.
pub fn forward_closure(phi: &StateFormula, limit: usize) -> Option<BTreeSet<StateFormula>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(phi.clone());
    queue.push_back(phi.clone());
    while let Some(f) = queue.pop_front() {
        for g in forward(&f) {
            if seen.insert(g.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(g);
            }
        }
    }
    Some(seen)
}

/// Structural equivalence by closure search: the two forward closures meet.
/// `None` if either closure exceeds `limit`.
pub fn equivalent_by_search(x: &StateFormula, y: &StateFormula, limit: usize) -> Option<bool> {
    let cx = forward_closure(x, limit)?;
    let cy = forward_closure(y, limit)?;
    Some(cx.intersection(&cy).next().is_some())
}

/// Applies `steps` random rewrites, forward or inverse, each at a random
/// position. The result is structurally equivalent to `phi`.
pub fn random_equivalent(phi: &StateFormula, steps: usize, rng: &mut TestRng) -> StateFormula {
    let mut cur = phi.clone();
    for _ in 0..steps {
        if rng.random_bool(0.4) {
            let fw = forward(&cur);
            if !fw.is_empty() {
                cur = fw[rng.random_range(0..fw.len())].clone();
                continue;
            }
        }
        cur = inverse_at_random(&cur, rng);
    }
    cur
}

/// One inverse rewrite at a random position.
pub fn inverse_at_random(phi: &StateFormula, rng: &mut TestRng) -> StateFormula {
    // Descend with probability 1/2 when there is somewhere to go.
    match phi {
        StateFormula::Not(g) if rng.random_bool(0.5) => {
            return StateFormula::not(inverse_at_random(g, rng));
        }
        StateFormula::And(c) if rng.random_bool(0.5) => {
            let mut v = c.members().to_vec();
            let i = rng.random_range(0..v.len());
            v[i] = inverse_at_random(&v[i], rng);
            return and(v);
        }
        StateFormula::Diamond(a, psi) if rng.random_bool(0.5) => {
            let mut v = psi.terms().to_vec();
            let i = rng.random_range(0..v.len());
            if rng.random_bool(0.5) {
                // split a term's weight in two
                let half = &v[i].0 * ratio(1, 2);
                v[i].0 = half.clone();
                let f = v[i].1.clone();
                v.insert(i + 1, (half, f));
            } else {
                v[i].1 = inverse_at_random(&v[i].1, rng);
            }
            return StateFormula::diamond(a.clone(), dist(v));
        }
        _ => {}
    }
    match phi {
        StateFormula::And(c) if c.members().len() > 1 => {
            let ms = c.members();
            match rng.random_range(0..3) {
                0 => {
                    // duplicate a conjunct
                    let mut v = ms.to_vec();
                    let i = rng.random_range(0..v.len());
                    v.insert(rng.random_range(0..=v.len()), ms[i].clone());
                    and(v)
                }
                1 => {
                    // group a contiguous block into a nested conjunction
                    let i = rng.random_range(0..ms.len());
                    let j = rng.random_range(i + 1..=ms.len());
                    let mut v = ms[..i].to_vec();
                    v.push(and(ms[i..j].to_vec()));
                    v.extend(ms[j..].iter().cloned());
                    and(v)
                }
                _ => {
                    // add a conjunction of existing conjuncts
                    let mut v = ms.to_vec();
                    let picked: Vec<StateFormula> =
                        ms.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
                    if !picked.is_empty() {
                        v.push(and(picked));
                    }
                    v.reverse();
                    and(v)
                }
            }
        }
        _ => and(vec![phi.clone()]),
    }
}
