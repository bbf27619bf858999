//! Feasibility of couplings whose support is restricted to allowed cells.
//!
//! Both relation lifting and distribution-formula satisfaction reduce to the
//! same question: can mass `supply[i]` be routed to `demand[j]` using only
//! allowed `(i, j)` cells? Masses are scaled to integers by the lcm of their
//! denominators and an Edmonds-Karp max-flow decides the question exactly.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{common_denominator, scale_to_integers, sum, Rational};

/// Returns a coupling of `supply` and `demand` supported on allowed cells,
/// as `(row, column, mass)` triples with positive mass, or `None`.
pub(crate) fn restricted_coupling(
    supply: &[Rational],
    demand: &[Rational],
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize, Rational)>> {
    if sum(supply) != sum(demand) {
        return None;
    }
    let scale = common_denominator(supply.iter().chain(demand));
    let sup = scale_to_integers(supply, &scale);
    let dem = scale_to_integers(demand, &scale);
    let (m, n) = (sup.len(), dem.len());
    let source = 0;
    let sink = m + n + 1;
    let size = m + n + 2;

    let mut cap = vec![vec![BigInt::zero(); size]; size];
    for (i, q) in sup.iter().enumerate() {
        cap[source][1 + i] = q.clone();
    }
    for (j, q) in dem.iter().enumerate() {
        cap[1 + m + j][sink] = q.clone();
    }
    for i in 0..m {
        for j in 0..n {
            if allowed(i, j) {
                cap[1 + i][1 + m + j] = sup[i].clone().min(dem[j].clone());
            }
        }
    }
    let original = cap.clone();

    let total: BigInt = sup.iter().sum();
    let mut flow = BigInt::zero();
    while let Some(parent) = augmenting_path(&cap, source, sink) {
        let mut bottleneck: Option<BigInt> = None;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            let c = &cap[u][v];
            bottleneck = Some(match bottleneck {
                Some(b) if b <= *c => b,
                _ => c.clone(),
            });
            v = u;
        }
        let b = bottleneck.expect("path has at least one edge");
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= &b;
            cap[v][u] += &b;
            v = u;
        }
        flow += b;
    }
    if flow != total {
        return None;
    }

    let scale = Rational::from_integer(scale);
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let used = &original[1 + i][1 + m + j] - &cap[1 + i][1 + m + j];
            if used.is_positive() {
                cells.push((i, j, Rational::from_integer(used) / &scale));
            }
        }
    }
    Some(cells)
}

fn augmenting_path(cap: &[Vec<BigInt>], source: usize, sink: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; cap.len()];
    parent[source] = source;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for (v, c) in cap[u].iter().enumerate() {
            if parent[v] == usize::MAX && c.is_positive() {
                parent[v] = u;
                if v == sink {
                    return Some(parent);
                }
                queue.push_back(v);
            }
        }
    }
    None
}
