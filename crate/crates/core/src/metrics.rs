//! Kantorovich and Hausdorff liftings and the up-to-k and bisimilarity
//! pseudometrics on processes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pts::{Distribution, ProcessId, Pts};
use crate::rational::{is_probability, Rational};
use crate::transport;

/// Discount factor `λ ∈ (0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discount(Rational);

impl Discount {
    /// Rejects values outside `(0, 1]`.
    pub fn new(lambda: Rational) -> Result<Self> {
        if is_probability(&lambda) {
            Ok(Discount(lambda))
        } else {
            Err(Error::InvalidDiscount(format!("{lambda}")))
        }
    }

    /// The undiscounted case `λ = 1`.
    pub fn one() -> Self {
        Discount(Rational::one())
    }

    /// The underlying rational.
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for Discount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Square table of distances between the processes of one system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudometricTable {
    size: usize,
    cells: Vec<Rational>,
}

impl PseudometricTable {
    /// The constant zero function.
    pub fn zero(size: usize) -> Self {
        PseudometricTable {
            size,
            cells: vec![Rational::zero(); size * size],
        }
    }

    /// Tabulates `f` over all ordered pairs.
    pub fn from_fn(size: usize, mut f: impl FnMut(ProcessId, ProcessId) -> Rational) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                cells.push(f(ProcessId::new(i), ProcessId::new(j)));
            }
        }
        PseudometricTable { size, cells }
    }

    /// Number of processes.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `d(s, t)`.
    pub fn get(&self, s: ProcessId, t: ProcessId) -> &Rational {
        &self.cells[s.index() * self.size + t.index()]
    }

    /// Values in `[0, 1]`, zero diagonal, symmetric, triangle inequality.
    pub fn is_pseudometric(&self) -> bool {
        let n = self.size;
        let ids = || (0..n).map(ProcessId::new);
        let unit = self
            .cells
            .iter()
            .all(|d| !d.is_negative() && *d <= Rational::one());
        unit && ids().all(|s| self.get(s, s).is_zero())
            && ids().all(|s| ids().all(|t| self.get(s, t) == self.get(t, s)))
            && ids().all(|s| {
                ids().all(|t| ids().all(|u| *self.get(s, u) <= self.get(s, t) + self.get(t, u)))
            })
    }

    /// `d(s, t) <= e(s, t)` everywhere.
    pub fn le(&self, other: &Self) -> bool {
        self.size == other.size && self.cells.iter().zip(&other.cells).all(|(a, b)| a <= b)
    }

    /// The kernel `{(s, t) | d(s, t) = 0}` as pairs.
    pub fn kernel(&self) -> impl Iterator<Item = (ProcessId, ProcessId)> + '_ {
        let n = self.size;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_zero())
            .map(move |(k, _)| (ProcessId::new(k / n), ProcessId::new(k % n)))
    }
}

/// Optimal coupling returned by [`kantorovich`]: `(s, t, mass)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// Cells with positive mass.
    pub cells: Vec<(ProcessId, ProcessId, Rational)>,
}

impl Matching {
    /// Total cost of the matching under `d`.
    pub fn cost(&self, d: &PseudometricTable) -> Rational {
        self.cells
            .iter()
            .map(|(s, t, w)| w * d.get(*s, *t))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Whether the matching couples `pi` and `pi2` exactly.
    pub fn is_coupling_of(&self, pi: &Distribution, pi2: &Distribution) -> bool {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (s, t, w) in &self.cells {
            left.push((*s, w.clone()));
            right.push((*t, w.clone()));
        }
        marginal(left) == marginal(pi.iter().map(|(s, w)| (s, w.clone())))
            && marginal(right) == marginal(pi2.iter().map(|(s, w)| (s, w.clone())))
    }
}

fn marginal(
    items: impl IntoIterator<Item = (ProcessId, Rational)>,
) -> alloc::collections::BTreeMap<ProcessId, Rational> {
    let mut m = alloc::collections::BTreeMap::new();
    for (s, w) in items {
        *m.entry(s).or_insert_with(Rational::zero) += w;
    }
    m.retain(|_, w| !w.is_zero());
    m
}

/// `K(d)(pi, pi2)`: minimal expected distance over all couplings, together
/// with a coupling attaining it.
pub fn kantorovich(d: &PseudometricTable, pi: &Distribution, pi2: &Distribution) -> (Rational, Matching) {
    let (left, supply): (Vec<ProcessId>, Vec<Rational>) = pi.iter().map(|(s, w)| (s, w.clone())).unzip();
    let (right, demand): (Vec<ProcessId>, Vec<Rational>) =
        pi2.iter().map(|(s, w)| (s, w.clone())).unzip();
    let cost: Vec<Vec<Rational>> = left
        .iter()
        .map(|s| right.iter().map(|t| d.get(*s, *t).clone()).collect())
        .collect();
    let plan = transport::solve(&supply, &demand, &cost);
    let cells = plan
        .cells
        .into_iter()
        .map(|(i, j, w)| (left[i], right[j], w))
        .collect();
    (plan.cost, Matching { cells })
}

/// Hausdorff lifting of `dist` to finite sets, with `inf ∅ = 1` and
/// `sup ∅ = 0`.
///
/// Two empty sets are at distance 0; an empty and a nonempty set at 1.
pub fn hausdorff<T, U>(left: &[T], right: &[U], mut dist: impl FnMut(&T, &U) -> Rational) -> Rational {
    let table: Vec<Vec<Rational>> = left
        .iter()
        .map(|x| right.iter().map(|y| dist(x, y)).collect())
        .collect();
    let inf = |it: &mut dyn Iterator<Item = Rational>| it.min().unwrap_or_else(Rational::one);
    let sup = |it: &mut dyn Iterator<Item = Rational>| it.max().unwrap_or_else(Rational::zero);
    let forward = sup(&mut (0..left.len()).map(|i| inf(&mut table[i].iter().cloned())));
    let backward = sup(&mut (0..right.len()).map(|j| inf(&mut table.iter().map(|row| row[j].clone()))));
    forward.max(backward)
}

/// `B(d)(s, t) = max_a H(λ·K(d))(der(s, a), der(t, a))`, with `max ∅ = 0`.
pub fn metric_step(pts: &Pts, lambda: &Discount, d: &PseudometricTable) -> PseudometricTable {
    let n = pts.len();
    // K(d) is cached per pair of distributions within one step.
    // Keyed by address: every distribution here is owned by `pts`.
    let mut cache = alloc::collections::BTreeMap::<(usize, usize), Rational>::new();
    let mut kant = |p: &Distribution, q: &Distribution| -> Rational {
        let (x, y) = (p as *const Distribution as usize, q as *const Distribution as usize);
        let key = (x.min(y), x.max(y));
        if let Some(v) = cache.get(&key) {
            return v.clone();
        }
        let v = kantorovich(d, p, q).0;
        cache.insert(key, v.clone());
        v
    };
    let mut out = PseudometricTable::zero(n);
    for i in 0..n {
        for j in 0..n {
            let (s, t) = (ProcessId::new(i), ProcessId::new(j));
            let mut best = Rational::zero();
            for a in pts.alphabet() {
                let h = hausdorff(pts.der(s, a), pts.der(t, a), |p, q| {
                    lambda.value() * kant(p, q)
                });
                if h > best {
                    best = h;
                }
            }
            out.cells[i * n + j] = best;
        }
    }
    out
}

/// `d^k = B^k(0)`.
pub fn upto_k_metric(pts: &Pts, lambda: &Discount, k: usize) -> PseudometricTable {
    upto_k_chain(pts, lambda, k).pop().expect("chain is nonempty")
}

/// `[d^0, d^1, ..., d^k]`.
pub fn upto_k_chain(pts: &Pts, lambda: &Discount, k: usize) -> Vec<PseudometricTable> {
    let mut chain = Vec::with_capacity(k + 1);
    chain.push(PseudometricTable::zero(pts.len()));
    for i in 0..k {
        let next = metric_step(pts, lambda, &chain[i]);
        chain.push(next);
    }
    chain
}

/// The bisimilarity metric on a finite, acyclic system.
///
/// On such a system `d^k` is constant from `k = 1 + max depth` on; the
/// result is that value, checked against one further step.
pub fn bisimilarity_metric(pts: &Pts, lambda: &Discount) -> Result<PseudometricTable> {
    if let Some(s) = pts.first_infinite() {
        return Err(Error::NotFiniteProcess(pts.name(s).into()));
    }
    let k = pts.max_depth().unwrap_or(0) + 1;
    let d = upto_k_metric(pts, lambda, k);
    let next = metric_step(pts, lambda, &d);
    assert_eq!(next, d, "d^k failed to stabilize at 1 + max depth");
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pts::PtsBuilder;
    use crate::rational::{int, ratio};

    fn p(i: usize) -> ProcessId {
        ProcessId::new(i)
    }

    #[test]
    fn discount_range() {
        assert!(Discount::new(ratio(1, 2)).is_ok());
        assert!(Discount::new(int(1)).is_ok());
        assert!(Discount::new(int(0)).is_err());
        assert!(Discount::new(ratio(3, 2)).is_err());
    }

    #[test]
    fn hausdorff_conventions() {
        let none: [i64; 0] = [];
        let d = |x: &i64, y: &i64| ratio((x - y).abs(), 10);
        assert_eq!(hausdorff(&none, &none, d), int(0));
        assert_eq!(hausdorff(&[1], &none, d), int(1));
        assert_eq!(hausdorff(&none, &[1], d), int(1));
        assert_eq!(hausdorff(&[1, 5], &[2], d), ratio(3, 10));
    }

    #[test]
    fn kantorovich_discrete() {
        // discrete metric on three points
        let d = PseudometricTable::from_fn(3, |s, t| if s == t { int(0) } else { int(1) });
        let pi = Distribution::new([(p(0), ratio(1, 2)), (p(1), ratio(1, 2))]).unwrap();
        let pi2 = Distribution::new([(p(1), ratio(1, 4)), (p(2), ratio(3, 4))]).unwrap();
        let (v, m) = kantorovich(&d, &pi, &pi2);
        // total variation distance
        assert_eq!(v, ratio(3, 4));
        assert!(m.is_coupling_of(&pi, &pi2));
        assert_eq!(m.cost(&d), v);
    }

    #[test]
    fn cyclic_rejected() {
        let mut b = PtsBuilder::new();
        b.action("a").unwrap();
        let s = b.process("s").unwrap();
        b.transition(s, "a", Distribution::dirac(s)).unwrap();
        let pts = b.build().unwrap();
        assert!(matches!(
            bisimilarity_metric(&pts, &Discount::one()),
            Err(Error::NotFiniteProcess(_))
        ));
    }

    #[test]
    fn one_sided_action_is_at_distance_one() {
        let mut b = PtsBuilder::new();
        b.action("a").unwrap();
        let s = b.process("s").unwrap();
        let nil = b.process("nil").unwrap();
        b.transition(s, "a", Distribution::dirac(nil)).unwrap();
        let pts = b.build().unwrap();
        let lambda = Discount::new(ratio(1, 2)).unwrap();
        let d = bisimilarity_metric(&pts, &lambda).unwrap();
        assert_eq!(*d.get(s, nil), int(1));
        assert!(d.is_pseudometric());
    }
}
