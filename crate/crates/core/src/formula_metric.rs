//! Distance between formulae and the logical distance between processes.
//!
//! `L^0 = 0`. For `k ≥ 1`, `L^k` is `0` on `⊤/⊤`, recurses at `k` under
//! two negations, is `λ·D^{k-1}(ψ, ψ')` on two diamonds with the same label,
//! is the Hausdorff lifting of `L^k` on conjunctions and `1` otherwise.
//! `D^k` is the optimal transport cost of `L^k` between the terms of two
//! distribution formulae.
//!
//! Conjunctions are compared through the set of their non-conjunction
//! members after flattening nested conjunctions, and a formula that is not
//! a conjunction counts as the one-member set `{φ}` against a conjunction.
//! This makes every distance invariant under `≡_L`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::logic::{dist_modal_depth, modal_depth, DistFormula, StateFormula};
use crate::metrics::{hausdorff, Discount, PseudometricTable};
use crate::mimicking::Mimicker;
use crate::pts::{ProcessId, Pts};
use crate::rational::Rational;
use crate::transport;

type Key = (u8, usize, usize);

/// Coupling of the terms of two distribution formulae, merged by formula pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalMatching {
    /// Positive mass per pair of state formulae.
    pub mass: BTreeMap<(StateFormula, StateFormula), Rational>,
}

impl LogicalMatching {
    /// Left marginal equals `ψ1`'s weights and right marginal `ψ2`'s, both
    /// summed per formula.
    pub fn is_matching_of(&self, psi1: &DistFormula, psi2: &DistFormula) -> bool {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for ((f, g), w) in &self.mass {
            if !(*w > Rational::zero()) {
                return false;
            }
            *left.entry(f.clone()).or_insert_with(Rational::zero) += w;
            *right.entry(g.clone()).or_insert_with(Rational::zero) += w;
        }
        left == weights_by_formula(psi1) && right == weights_by_formula(psi2)
    }
}

fn weights_by_formula(psi: &DistFormula) -> BTreeMap<StateFormula, Rational> {
    let mut out = BTreeMap::new();
    for (r, phi) in psi.terms() {
        *out.entry(phi.clone()).or_insert_with(Rational::zero) += r;
    }
    out
}

/// Evaluator for `L^k`, `D^k` and their limits at a fixed discount.
///
/// Results are memoized on subformula identity; every formula passed in is
/// retained so that the identities stay valid.
pub struct FormulaDistance {
    lambda: Discount,
    memo: BTreeMap<(usize, Key, Key), Rational>,
    pins: Vec<StateFormula>,
    dist_pins: Vec<DistFormula>,
}

impl FormulaDistance {
    /// New evaluator with discount `λ`.
    pub fn new(lambda: Discount) -> Self {
        FormulaDistance {
            lambda,
            memo: BTreeMap::new(),
            pins: Vec::new(),
            dist_pins: Vec::new(),
        }
    }

    /// The discount.
    pub fn discount(&self) -> &Discount {
        &self.lambda
    }

    /// `L^k(φ1, φ2)`.
    pub fn state_upto(&mut self, k: usize, phi1: &StateFormula, phi2: &StateFormula) -> Rational {
        self.pins.push(phi1.clone());
        self.pins.push(phi2.clone());
        self.ls(k, phi1, phi2)
    }

    /// `D^k(ψ1, ψ2)`.
    pub fn dist_upto(&mut self, k: usize, psi1: &DistFormula, psi2: &DistFormula) -> Rational {
        self.dist_matching_upto(k, psi1, psi2).0
    }

    /// `D^k(ψ1, ψ2)` with an optimal logical matching.
    pub fn dist_matching_upto(
        &mut self,
        k: usize,
        psi1: &DistFormula,
        psi2: &DistFormula,
    ) -> (Rational, LogicalMatching) {
        self.dist_pins.push(psi1.clone());
        self.dist_pins.push(psi2.clone());
        let plan = self.transport(k, psi1, psi2);
        let mut mass = BTreeMap::new();
        for (i, j, w) in plan.cells {
            let pair = (psi1.terms()[i].1.clone(), psi2.terms()[j].1.clone());
            *mass.entry(pair).or_insert_with(Rational::zero) += w;
        }
        (plan.cost, LogicalMatching { mass })
    }

    /// `L(φ1, φ2)`: the value at `k* = 1 + max modal depth`, checked to be
    /// unchanged at `k* + 1`.
    pub fn state(&mut self, phi1: &StateFormula, phi2: &StateFormula) -> Rational {
        let k = modal_depth(phi1).max(modal_depth(phi2)) + 1;
        let v = self.state_upto(k, phi1, phi2);
        assert_eq!(self.state_upto(k + 1, phi1, phi2), v, "L^k failed to stabilize");
        v
    }

    /// `D(ψ1, ψ2)`, as for [`FormulaDistance::state`].
    pub fn dist(&mut self, psi1: &DistFormula, psi2: &DistFormula) -> Rational {
        let k = dist_modal_depth(psi1).max(dist_modal_depth(psi2)) + 1;
        let v = self.dist_upto(k, psi1, psi2);
        assert_eq!(self.dist_upto(k + 1, psi1, psi2), v, "D^k failed to stabilize");
        v
    }

    fn ls(&mut self, k: usize, a: &StateFormula, b: &StateFormula) -> Rational {
        if k == 0 {
            return Rational::zero();
        }
        let (ka, kb) = (a.node_key(), b.node_key());
        if ka == kb {
            return Rational::zero();
        }
        let key = (k, ka.min(kb), ka.max(kb));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = match (a, b) {
            (StateFormula::And(_), _) | (_, StateFormula::And(_)) => {
                let (left, right) = (atoms(a), atoms(b));
                hausdorff(&left, &right, |x, y| self.ls(k, x, y))
            }
            (StateFormula::Top, StateFormula::Top) => Rational::zero(),
            (StateFormula::Not(f), StateFormula::Not(g)) => self.ls(k, f, g),
            (StateFormula::Diamond(x, psi1), StateFormula::Diamond(y, psi2)) if x == y => {
                let d = self.ld(k - 1, psi1, psi2);
                self.lambda.value() * d
            }
            _ => Rational::one(),
        };
        self.memo.insert(key, v.clone());
        v
    }

    fn ld(&mut self, k: usize, psi1: &DistFormula, psi2: &DistFormula) -> Rational {
        if k == 0 || psi1.addr() == psi2.addr() {
            return Rational::zero();
        }
        self.transport(k, psi1, psi2).cost
    }

    fn transport(&mut self, k: usize, psi1: &DistFormula, psi2: &DistFormula) -> transport::TransportPlan {
        let supply: Vec<Rational> = psi1.terms().iter().map(|(r, _)| r.clone()).collect();
        let demand: Vec<Rational> = psi2.terms().iter().map(|(r, _)| r.clone()).collect();
        let cost: Vec<Vec<Rational>> = psi1
            .terms()
            .iter()
            .map(|(_, f)| psi2.terms().iter().map(|(_, g)| self.ls(k, f, g)).collect())
            .collect();
        transport::solve(&supply, &demand, &cost)
    }
}

/// Non-conjunction members of `phi` after flattening, without repeated
/// identities.
fn atoms(phi: &StateFormula) -> Vec<&StateFormula> {
    let mut out = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut stack = alloc::vec![phi];
    while let Some(f) = stack.pop() {
        match f {
            StateFormula::And(c) => stack.extend(c.members().iter().rev()),
            other => {
                if seen.insert(other.node_key()) {
                    out.push(other);
                }
            }
        }
    }
    out
}

/// `L^k(φ1, φ2)` with a fresh evaluator.
pub fn state_distance_upto(lambda: &Discount, k: usize, phi1: &StateFormula, phi2: &StateFormula) -> Rational {
    FormulaDistance::new(lambda.clone()).state_upto(k, phi1, phi2)
}

/// `D^k(ψ1, ψ2)` with a fresh evaluator.
pub fn dist_distance_upto(lambda: &Discount, k: usize, psi1: &DistFormula, psi2: &DistFormula) -> Rational {
    FormulaDistance::new(lambda.clone()).dist_upto(k, psi1, psi2)
}

/// `L(φ1, φ2)` with a fresh evaluator.
pub fn state_distance(lambda: &Discount, phi1: &StateFormula, phi2: &StateFormula) -> Rational {
    FormulaDistance::new(lambda.clone()).state(phi1, phi2)
}

/// `D(ψ1, ψ2)` with a fresh evaluator.
pub fn dist_distance(lambda: &Discount, psi1: &DistFormula, psi2: &DistFormula) -> Rational {
    FormulaDistance::new(lambda.clone()).dist(psi1, psi2)
}

/// `ℓ^k(s, t) = L^k(φ_s^k, φ_t^k)`.
pub fn logical_distance_upto(pts: &Pts, lambda: &Discount, k: usize, s: ProcessId, t: ProcessId) -> Result<Rational> {
    let mut m = Mimicker::mimicking(pts);
    let (fs, ft) = (m.state(s, k)?, m.state(t, k)?);
    Ok(FormulaDistance::new(lambda.clone()).state_upto(k, &fs, &ft))
}

/// `ℓ(s, t) = L(φ_s, φ_t)`; both processes must have finite depth.
pub fn logical_distance(pts: &Pts, lambda: &Discount, s: ProcessId, t: ProcessId) -> Result<Rational> {
    let mut m = Mimicker::mimicking(pts);
    let fs = m.state(s, pts.finite_depth(s)? + 1)?;
    let ft = m.state(t, pts.finite_depth(t)? + 1)?;
    Ok(FormulaDistance::new(lambda.clone()).state(&fs, &ft))
}

/// `ℓ^k` over all pairs, sharing formulae and memo across pairs.
pub fn logical_distance_table_upto(pts: &Pts, lambda: &Discount, k: usize) -> PseudometricTable {
    let mut m = Mimicker::mimicking(pts);
    let formulas: Vec<StateFormula> = pts
        .processes()
        .map(|s| m.state(s, k).expect("own process"))
        .collect();
    let mut fd = FormulaDistance::new(lambda.clone());
    PseudometricTable::from_fn(pts.len(), |s, t| {
        fd.state_upto(k, &formulas[s.index()], &formulas[t.index()])
    })
}

/// `ℓ` over all pairs; fails if some process has infinite depth.
pub fn logical_distance_table(pts: &Pts, lambda: &Discount) -> Result<PseudometricTable> {
    let mut m = Mimicker::mimicking(pts);
    let mut formulas = Vec::with_capacity(pts.len());
    for s in pts.processes() {
        formulas.push(m.state(s, pts.finite_depth(s)? + 1)?);
    }
    let mut fd = FormulaDistance::new(lambda.clone());
    Ok(PseudometricTable::from_fn(pts.len(), |s, t| {
        fd.state(&formulas[s.index()], &formulas[t.index()])
    }))
}
