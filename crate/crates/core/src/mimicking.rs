//! Mimicking formulae `φ_s^k` and simulation characteristic formulae `θ_s^k`.
//!
//! `φ_s^0 = ⊤` and, for `k ≥ 1`, `φ_s^k` conjoins `⟨a⟩ψ_π^{k-1}` for every
//! transition `s -a-> π` with `¬⟨b⟩⊤` for every action `b` that `s` cannot
//! perform, where `ψ_π^k = ⊕_{t ∈ supp π} π(t) φ_t^k`. `θ_s^k` is the same
//! construction without the refusals. An empty conjunction is `⊤`.
//!
//! Diamonds appear sorted by action then distribution, refusals by action.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::logic::{DistFormula, StateFormula};
use crate::pts::{Distribution, Label, ProcessId, Pts};

/// Builder that shares subformulae across processes and levels.
pub struct Mimicker<'a> {
    pts: &'a Pts,
    with_refusals: bool,
    states: BTreeMap<(ProcessId, usize), StateFormula>,
    refusals: BTreeMap<Label, StateFormula>,
}

impl<'a> Mimicker<'a> {
    /// Builds mimicking formulae `φ`.
    pub fn mimicking(pts: &'a Pts) -> Self {
        Self::with(pts, true)
    }

    /// Builds simulation characteristic formulae `θ`.
    pub fn sim_characteristic(pts: &'a Pts) -> Self {
        Self::with(pts, false)
    }

    fn with(pts: &'a Pts, with_refusals: bool) -> Self {
        Mimicker {
            pts,
            with_refusals,
            states: BTreeMap::new(),
            refusals: BTreeMap::new(),
        }
    }

    /// The formula for `s` at level `k`.
    pub fn state(&mut self, s: ProcessId, k: usize) -> Result<StateFormula> {
        self.pts.check(s)?;
        Ok(self.build(s, k))
    }

    /// `ψ_π^k` (or `υ_π^k`).
    pub fn dist(&mut self, pi: &Distribution, k: usize) -> Result<DistFormula> {
        for s in pi.support() {
            self.pts.check(s)?;
        }
        Ok(self.build_dist(pi, k))
    }

    fn build(&mut self, s: ProcessId, k: usize) -> StateFormula {
        if k == 0 {
            return StateFormula::Top;
        }
        if let Some(f) = self.states.get(&(s, k)) {
            return f.clone();
        }
        let pts = self.pts;
        let mut conjuncts: Vec<StateFormula> = pts
            .transitions(s)
            .map(|(a, pi)| StateFormula::diamond(a.clone(), self.build_dist(pi, k - 1)))
            .collect();
        if self.with_refusals {
            for b in pts.alphabet() {
                if !pts.can(s, b) {
                    let refusal = self
                        .refusals
                        .entry(b.clone())
                        .or_insert_with(|| StateFormula::refusal(b.clone()))
                        .clone();
                    conjuncts.push(refusal);
                }
            }
        }
        let f = if conjuncts.is_empty() {
            StateFormula::Top
        } else {
            StateFormula::and(conjuncts).expect("nonempty")
        };
        self.states.insert((s, k), f.clone());
        f
    }

    fn build_dist(&mut self, pi: &Distribution, k: usize) -> DistFormula {
        DistFormula::new(pi.iter().map(|(t, w)| (w.clone(), self.build(t, k))).collect())
            .expect("distribution weights are valid formula weights")
    }
}

/// `φ_s^k`.
pub fn mimicking_upto(pts: &Pts, s: ProcessId, k: usize) -> Result<StateFormula> {
    Mimicker::mimicking(pts).state(s, k)
}

/// `φ_s = φ_s^{depth(s)+1}`; only for processes of finite depth.
pub fn mimicking(pts: &Pts, s: ProcessId) -> Result<StateFormula> {
    let depth = pts.finite_depth(s)?;
    mimicking_upto(pts, s, depth + 1)
}

/// `θ_s^k`.
pub fn sim_characteristic_upto(pts: &Pts, s: ProcessId, k: usize) -> Result<StateFormula> {
    Mimicker::sim_characteristic(pts).state(s, k)
}

/// `θ_s = θ_s^{depth(s)}`; only for processes of finite depth.
pub fn sim_characteristic(pts: &Pts, s: ProcessId) -> Result<StateFormula> {
    let depth = pts.finite_depth(s)?;
    sim_characteristic_upto(pts, s, depth)
}
