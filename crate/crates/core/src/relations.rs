//! Relation lifting, up-to-k (ready) simulations and bisimulations, and their
//! greatest fixpoints.

use alloc::vec;
use alloc::vec::Vec;

use crate::flow::restricted_coupling;
use crate::pts::{Distribution, ProcessId, Pts};
use crate::rational::Rational;

/// Binary relation over the processes of one system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    bits: Vec<bool>,
}

impl Relation {
    /// The empty relation over `size` processes.
    pub fn empty(size: usize) -> Self {
        Relation {
            size,
            bits: vec![false; size * size],
        }
    }

    /// `S x S`.
    pub fn full(size: usize) -> Self {
        Relation {
            size,
            bits: vec![true; size * size],
        }
    }

    /// The identity relation.
    pub fn identity(size: usize) -> Self {
        let mut r = Self::empty(size);
        for i in 0..size {
            r.bits[i * size + i] = true;
        }
        r
    }

    /// Builds a relation from explicit pairs.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (ProcessId, ProcessId)>) -> Self {
        let mut r = Self::empty(size);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    /// Number of processes in the universe.
    pub fn universe(&self) -> usize {
        self.size
    }

    /// Membership test.
    pub fn contains(&self, s: ProcessId, t: ProcessId) -> bool {
        self.bits[s.index() * self.size + t.index()]
    }

    /// Adds a pair.
    pub fn insert(&mut self, s: ProcessId, t: ProcessId) {
        self.bits[s.index() * self.size + t.index()] = true;
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (ProcessId, ProcessId)> + '_ {
        let n = self.size;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(k, _)| (ProcessId::new(k / n), ProcessId::new(k % n)))
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// `true` iff no pair is related.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The converse relation.
    pub fn inverse(&self) -> Self {
        let mut r = Self::empty(self.size);
        for (s, t) in self.pairs() {
            r.insert(t, s);
        }
        r
    }

    /// Pairwise intersection. Panics on mismatched universes.
    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Relation {
            size: self.size,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.size == other.size && self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    /// `R ∩ R⁻¹`.
    pub fn kernel(&self) -> Self {
        self.intersection(&self.inverse())
    }

    /// Reflexive, symmetric and transitive.
    pub fn is_equivalence(&self) -> bool {
        let ids = || (0..self.size).map(ProcessId::new);
        ids().all(|s| self.contains(s, s))
            && self.pairs().all(|(s, t)| self.contains(t, s))
            && self
                .pairs()
                .all(|(s, t)| ids().all(|u| !self.contains(t, u) || self.contains(s, u)))
    }
}

/// The three behavioral relations computed here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// Probabilistic simulation `⊑`.
    Simulation,
    /// Probabilistic ready simulation `⊑^r`.
    ReadySimulation,
    /// Probabilistic bisimulation `∼`.
    Bisimulation,
}

/// Decides `pi R† pi'`: whether the two distributions decompose as
/// `sum p_i δ(s_i)` and `sum p_i δ(t_i)` with `s_i R t_i`.
///
/// Such a decomposition exists iff there is a coupling of `pi` and `pi'`
/// supported inside `R`, which is a max-flow feasibility question.
pub fn lift_check(r: &Relation, pi: &Distribution, pi2: &Distribution) -> bool {
    lift_witness(r, pi, pi2).is_some()
}

/// Like [`lift_check`], but returns the decomposition `(s_i, t_i, p_i)`.
pub fn lift_witness(
    r: &Relation,
    pi: &Distribution,
    pi2: &Distribution,
) -> Option<Vec<(ProcessId, ProcessId, Rational)>> {
    let (left, lw): (Vec<ProcessId>, Vec<Rational>) = pi.iter().map(|(s, w)| (s, w.clone())).unzip();
    let (right, rw): (Vec<ProcessId>, Vec<Rational>) =
        pi2.iter().map(|(s, w)| (s, w.clone())).unzip();
    let cells = restricted_coupling(&lw, &rw, |i, j| r.contains(left[i], right[j]))?;
    Some(
        cells
            .into_iter()
            .map(|(i, j, p)| (left[i], right[j], p))
            .collect(),
    )
}

/// One refinement round: keeps `(s, t)` iff every `s -a-> pi_s` is answered
/// by some `t -a-> pi_t` with `pi_s prev† pi_t`, plus the kind's extra clause.
pub fn refine(pts: &Pts, prev: &Relation, kind: RelationKind) -> Relation {
    let mut next = Relation::empty(pts.len());
    for s in pts.processes() {
        for t in pts.processes() {
            let keep = match kind {
                RelationKind::Simulation => simulates(pts, prev, s, t),
                RelationKind::ReadySimulation => {
                    simulates(pts, prev, s, t)
                        && pts.alphabet().iter().all(|a| pts.can(s, a) || !pts.can(t, a))
                }
                RelationKind::Bisimulation => {
                    simulates(pts, prev, s, t) && simulates(pts, &prev.inverse(), t, s)
                }
            };
            if keep {
                next.insert(s, t);
            }
        }
    }
    next
}

/// Every transition of `s` is matched by a transition of `t` up to `r†`.
fn simulates(pts: &Pts, r: &Relation, s: ProcessId, t: ProcessId) -> bool {
    pts.transitions(s).all(|(a, pi_s)| {
        pts.der(t, a).iter().any(|pi_t| lift_check(r, pi_s, pi_t))
    })
}

/// The first transition of `s` that `t` cannot answer up to `r†`.
pub fn unmatched_transition<'a>(
    pts: &'a Pts,
    r: &Relation,
    s: ProcessId,
    t: ProcessId,
) -> Option<(&'a crate::pts::Label, &'a Distribution)> {
    pts.transitions(s)
        .find(|(a, pi_s)| !pts.der(t, a).iter().any(|pi_t| lift_check(r, pi_s, pi_t)))
}

/// `[R_0, R_1, ..., R_k]` for the chosen kind, starting from `S x S`.
pub fn upto_chain(pts: &Pts, kind: RelationKind, k: usize) -> Vec<Relation> {
    let mut chain = Vec::with_capacity(k + 1);
    chain.push(Relation::full(pts.len()));
    for i in 0..k {
        let next = refine(pts, &chain[i], kind);
        chain.push(next);
    }
    chain
}

fn upto(pts: &Pts, kind: RelationKind, k: usize) -> Relation {
    let mut r = Relation::full(pts.len());
    for _ in 0..k {
        r = refine(pts, &r, kind);
    }
    r
}

/// `⊑_k`.
pub fn upto_simulation(pts: &Pts, k: usize) -> Relation {
    upto(pts, RelationKind::Simulation, k)
}

/// `⊑_k^r`.
pub fn upto_ready_simulation(pts: &Pts, k: usize) -> Relation {
    upto(pts, RelationKind::ReadySimulation, k)
}

/// `∼_k`: `∼_0 = S x S`, and `s ∼_{k+1} t` iff each of `s`, `t` answers
/// every transition of the other up to the lifting of `∼_k`.
///
/// This is an equivalence at every `k`. It can be strictly finer than the
/// kernel of `⊑_k`: `a.b + a` and `a.b` simulate each other without being
/// bisimilar.
pub fn upto_bisimulation(pts: &Pts, k: usize) -> Relation {
    upto(pts, RelationKind::Bisimulation, k)
}

/// Greatest (ready) simulation or bisimulation, by iterating the up-to-k
/// refinement from `S x S` until it stabilizes.
pub fn greatest_relation(pts: &Pts, kind: RelationKind) -> Relation {
    let n = pts.len();
    let bound = n * n + 1;
    let mut r = Relation::full(n);
    for _ in 0..=bound {
        let next = refine(pts, &r, kind);
        if next == r {
            return r;
        }
        r = next;
    }
    panic!("refinement did not stabilize within |S|^2 + 1 rounds");
}
