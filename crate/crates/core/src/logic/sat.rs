use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::flow::restricted_coupling;
use crate::pts::{Distribution, ProcessId, Pts};
use crate::rational::Rational;

use super::formula::{DistFormula, StateFormula};

/// Satisfaction checker for one system, memoizing per (process, subformula).
///
/// Formulae passed in are retained for the checker's lifetime so that the
/// memo's identity keys stay valid.
pub struct Checker<'a> {
    pts: &'a Pts,
    memo: BTreeMap<(ProcessId, (u8, usize, usize)), bool>,
    pins: Vec<StateFormula>,
    dist_pins: Vec<DistFormula>,
}

impl<'a> Checker<'a> {
    /// A fresh checker.
    pub fn new(pts: &'a Pts) -> Self {
        Checker {
            pts,
            memo: BTreeMap::new(),
            pins: Vec::new(),
            dist_pins: Vec::new(),
        }
    }

    /// `s ⊨ φ`.
    pub fn state(&mut self, s: ProcessId, phi: &StateFormula) -> Result<bool> {
        self.pts.check(s)?;
        for a in phi.actions() {
            self.pts.check_action(&a)?;
        }
        self.pins.push(phi.clone());
        Ok(self.sat_state(s, phi))
    }

    /// `π ⊨ ψ`.
    pub fn dist(&mut self, pi: &Distribution, psi: &DistFormula) -> Result<bool> {
        for s in pi.support() {
            self.pts.check(s)?;
        }
        for (_, phi) in psi.terms() {
            for a in phi.actions() {
                self.pts.check_action(&a)?;
            }
        }
        self.dist_pins.push(psi.clone());
        Ok(self.sat_dist(pi, psi))
    }

    fn sat_state(&mut self, s: ProcessId, phi: &StateFormula) -> bool {
        if let StateFormula::Top = phi {
            return true;
        }
        let key = (s, phi.node_key());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = match phi {
            StateFormula::Top => true,
            StateFormula::Not(g) => !self.sat_state(s, g),
            StateFormula::And(c) => c.members().iter().all(|g| self.sat_state(s, g)),
            StateFormula::Diamond(a, psi) => {
                let pts = self.pts;
                pts.der(s, a).iter().any(|pi| self.sat_dist(pi, psi))
            }
        };
        self.memo.insert(key, v);
        v
    }

    /// Decomposition of `π` into `Σ r_i π_i` with `supp(π_i) ⊨ φ_i` exists
    /// iff mass can flow from `π` to the weights along satisfied pairs.
    fn sat_dist(&mut self, pi: &Distribution, psi: &DistFormula) -> bool {
        let (states, supply): (Vec<ProcessId>, Vec<Rational>) =
            pi.iter().map(|(s, w)| (s, w.clone())).unzip();
        let demand: Vec<Rational> = psi.terms().iter().map(|(r, _)| r.clone()).collect();
        let allowed: Vec<Vec<bool>> = states
            .iter()
            .map(|&s| psi.terms().iter().map(|(_, g)| self.sat_state(s, g)).collect())
            .collect();
        restricted_coupling(&supply, &demand, |i, j| allowed[i][j]).is_some()
    }
}

/// `s ⊨ φ`.
pub fn satisfies_state(pts: &Pts, s: ProcessId, phi: &StateFormula) -> Result<bool> {
    Checker::new(pts).state(s, phi)
}

/// `π ⊨ ψ`.
pub fn satisfies_dist(pts: &Pts, pi: &Distribution, psi: &DistFormula) -> Result<bool> {
    Checker::new(pts).dist(pi, psi)
}
