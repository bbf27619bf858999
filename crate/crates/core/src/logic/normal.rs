use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;

use super::formula::{Conjunction, DistFormula, StateFormula};

type Memo = BTreeMap<(u8, usize, usize), StateFormula>;

/// Canonical representative of the `≡_L` class of `phi`.
///
/// Children are normalized first. Conjunctions are flattened into their
/// non-conjunction members, which are deduplicated and sorted; a
/// conjunction left with one member becomes that member. Distribution
/// formulae merge terms whose formulae normalize identically and sort
/// the result.
pub fn normalize(phi: &StateFormula) -> StateFormula {
    norm_state(phi, &mut Memo::new())
}

/// [`normalize`] for distribution formulae.
pub fn normalize_dist(psi: &DistFormula) -> DistFormula {
    norm_dist(psi, &mut Memo::new())
}

/// `φ ≡_L φ'`, decided on normal forms.
pub fn l_equiv(phi: &StateFormula, phi2: &StateFormula) -> bool {
    normalize(phi) == normalize(phi2)
}

/// `ψ ≡_L ψ'`, decided on normal forms.
pub fn l_equiv_dist(psi: &DistFormula, psi2: &DistFormula) -> bool {
    normalize_dist(psi) == normalize_dist(psi2)
}

fn norm_state(phi: &StateFormula, memo: &mut Memo) -> StateFormula {
    if let StateFormula::Top = phi {
        return StateFormula::Top;
    }
    let key = phi.node_key();
    if let Some(n) = memo.get(&key) {
        return n.clone();
    }
    let n = match phi {
        StateFormula::Top => StateFormula::Top,
        StateFormula::Not(g) => StateFormula::not(norm_state(g, memo)),
        StateFormula::And(c) => {
            let mut atoms = Vec::new();
            for m in c.members() {
                match norm_state(m, memo) {
                    StateFormula::And(inner) => atoms.extend(inner.members().iter().cloned()),
                    other => atoms.push(other),
                }
            }
            atoms.sort();
            atoms.dedup();
            if atoms.len() == 1 {
                atoms.pop().expect("one member")
            } else {
                StateFormula::And(Conjunction::new(atoms).expect("conjunction stays nonempty"))
            }
        }
        StateFormula::Diamond(a, psi) => StateFormula::diamond(a.clone(), norm_dist(psi, memo)),
    };
    memo.insert(key, n.clone());
    n
}

fn norm_dist(psi: &DistFormula, memo: &mut Memo) -> DistFormula {
    let mut merged: BTreeMap<StateFormula, Rational> = BTreeMap::new();
    for (r, phi) in psi.terms() {
        *merged.entry(norm_state(phi, memo)).or_insert_with(Rational::zero) += r;
    }
    DistFormula::new(merged.into_iter().map(|(phi, r)| (r, phi)).collect())
        .expect("merging preserves the weight sum")
}
