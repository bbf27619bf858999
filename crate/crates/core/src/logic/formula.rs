use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::pts::Label;
use crate::rational::{is_probability, sum, Rational};

/// State formula of the logic.
///
/// Children are reference counted so that formulae built from shared
/// subformulae (mimicking formulae of DAG-shaped systems) stay small.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateFormula {
    /// `⊤`.
    Top,
    /// `¬φ`.
    Not(Arc<StateFormula>),
    /// `∧ φ_j` over a nonempty finite family.
    And(Conjunction),
    /// `⟨a⟩ψ`.
    Diamond(Label, Arc<DistFormula>),
}

/// Nonempty list of conjuncts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conjunction(Arc<[StateFormula]>);

impl Conjunction {
    /// Fails with [`Error::EmptyConjunction`] on an empty list.
    pub fn new(members: Vec<StateFormula>) -> Result<Self> {
        if members.is_empty() {
            Err(Error::EmptyConjunction)
        } else {
            Ok(Conjunction(members.into()))
        }
    }

    /// The conjuncts in order.
    pub fn members(&self) -> &[StateFormula] {
        &self.0
    }

    pub(crate) fn addr(&self) -> usize {
        self.0.as_ptr() as usize
    }
}

/// Distribution formula `⊕ r_i φ_i`: weights in `(0, 1]` summing to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistFormula {
    terms: Arc<[(Rational, StateFormula)]>,
}

impl DistFormula {
    /// Validates the weights.
    pub fn new(terms: Vec<(Rational, StateFormula)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::CoefficientSum(String::from("no terms")));
        }
        if let Some((r, _)) = terms.iter().find(|(r, _)| !is_probability(r)) {
            return Err(Error::CoefficientSum(alloc::format!("weight {r} outside (0, 1]")));
        }
        let total = sum(terms.iter().map(|(r, _)| r));
        if !total.is_one() {
            return Err(Error::CoefficientSum(alloc::format!("weights sum to {total}")));
        }
        Ok(DistFormula { terms: terms.into() })
    }

    /// `1·φ`.
    pub fn single(phi: StateFormula) -> Self {
        DistFormula {
            terms: Arc::from([(Rational::one(), phi)]),
        }
    }

    /// The weighted terms in order.
    pub fn terms(&self) -> &[(Rational, StateFormula)] {
        &self.terms
    }

    pub(crate) fn addr(&self) -> usize {
        self.terms.as_ptr() as *const u8 as usize
    }
}

impl StateFormula {
    /// `¬φ`.
    pub fn not(phi: StateFormula) -> Self {
        StateFormula::Not(Arc::new(phi))
    }

    /// `∧ φ_j`; fails on an empty list.
    pub fn and(members: Vec<StateFormula>) -> Result<Self> {
        Ok(StateFormula::And(Conjunction::new(members)?))
    }

    /// `⟨a⟩ψ`.
    pub fn diamond(action: Label, psi: DistFormula) -> Self {
        StateFormula::Diamond(action, Arc::new(psi))
    }

    /// `⟨a⟩φ`, sugar for `⟨a⟩(1·φ)`.
    pub fn diamond_state(action: Label, phi: StateFormula) -> Self {
        Self::diamond(action, DistFormula::single(phi))
    }

    /// `¬⟨a⟩⊤`: the action `a` is refused.
    pub fn refusal(action: Label) -> Self {
        Self::not(Self::diamond_state(action, StateFormula::Top))
    }

    /// Identity of this node's shared content, valid while the node is
    /// alive. Equal keys imply structurally equal formulae.
    pub(crate) fn node_key(&self) -> (u8, usize, usize) {
        match self {
            StateFormula::Top => (0, 0, 0),
            StateFormula::Not(f) => (1, Arc::as_ptr(f) as usize, 0),
            StateFormula::And(c) => (2, c.addr(), 0),
            StateFormula::Diamond(a, psi) => (3, Arc::as_ptr(psi) as usize, a.as_str().as_ptr() as usize),
        }
    }

    /// Every action label occurring in the formula.
    pub fn actions(&self) -> alloc::collections::BTreeSet<Label> {
        let mut out = alloc::collections::BTreeSet::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                StateFormula::Top => {}
                StateFormula::Not(g) => stack.push(g),
                StateFormula::And(c) => stack.extend(c.members()),
                StateFormula::Diamond(a, psi) => {
                    out.insert(a.clone());
                    stack.extend(psi.terms().iter().map(|(_, g)| g));
                }
            }
        }
        out
    }
}

// Concrete syntax:
//   T | ~f | f & g & ... | <a>f | <a>(3/4 f (+) 1/4 g)
// A singleton conjunction prints as `&f`; nested conjunctions and
// conjunctions under a prefix operator are parenthesized.

impl StateFormula {
    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFormula::Top => f.write_str("T"),
            StateFormula::Not(g) => {
                f.write_str("~")?;
                g.fmt_unary(f)
            }
            StateFormula::And(c) if c.members().len() == 1 => {
                f.write_str("&")?;
                c.members()[0].fmt_unary(f)
            }
            StateFormula::And(_) => {
                f.write_str("(")?;
                fmt::Display::fmt(self, f)?;
                f.write_str(")")
            }
            StateFormula::Diamond(a, psi) => {
                write!(f, "<{a}>")?;
                fmt::Display::fmt(&**psi, f)
            }
        }
    }
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFormula::And(c) if c.members().len() > 1 => {
                for (i, m) in c.members().iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    m.fmt_unary(f)?;
                }
                Ok(())
            }
            _ => self.fmt_unary(f),
        }
    }
}

impl fmt::Display for DistFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms() {
            [(r, phi)] if r.is_one() => phi.fmt_unary(f),
            terms => {
                f.write_str("(")?;
                for (i, (r, phi)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" (+) ")?;
                    }
                    write!(f, "{r} ")?;
                    phi.fmt_unary(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Debug for DistFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Debug for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members()).finish()
    }
}

/// Modal depth: nesting of diamonds.
pub fn modal_depth(phi: &StateFormula) -> usize {
    let mut memo = alloc::collections::BTreeMap::new();
    depth_state(phi, &mut memo)
}

/// Modal depth of a distribution formula: the maximum over its terms.
pub fn dist_modal_depth(psi: &DistFormula) -> usize {
    let mut memo = alloc::collections::BTreeMap::new();
    depth_dist(psi, &mut memo)
}

type DepthMemo = alloc::collections::BTreeMap<(u8, usize, usize), usize>;

fn depth_state(phi: &StateFormula, memo: &mut DepthMemo) -> usize {
    if let StateFormula::Top = phi {
        return 0;
    }
    let key = phi.node_key();
    if let Some(d) = memo.get(&key) {
        return *d;
    }
    let d = match phi {
        StateFormula::Top => 0,
        StateFormula::Not(g) => depth_state(g, memo),
        StateFormula::And(c) => c.members().iter().map(|g| depth_state(g, memo)).max().unwrap_or(0),
        StateFormula::Diamond(_, psi) => 1 + depth_dist(psi, memo),
    };
    memo.insert(key, d);
    d
}

fn depth_dist(psi: &DistFormula, memo: &mut DepthMemo) -> usize {
    psi.terms()
        .iter()
        .map(|(_, g)| depth_state(g, memo))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::string::ToString;
    use alloc::vec;

    fn l(a: &str) -> Label {
        Label::new(a).unwrap()
    }

    #[test]
    fn display() {
        let b = StateFormula::diamond_state(l("b"), StateFormula::Top);
        let bb = StateFormula::and(vec![b.clone(), b.clone()]).unwrap();
        let psi = DistFormula::new(vec![(ratio(3, 4), bb), (ratio(1, 4), b.clone())]).unwrap();
        let phi = StateFormula::diamond(l("a"), psi);
        assert_eq!(phi.to_string(), "<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T)");
        let single = StateFormula::and(vec![StateFormula::refusal(l("c"))]).unwrap();
        assert_eq!(single.to_string(), "&~<c>T");
        let top = StateFormula::and(vec![phi, StateFormula::not(single)]).unwrap();
        assert_eq!(top.to_string(), "<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T) & ~&~<c>T");
    }

    #[test]
    fn validation() {
        assert_eq!(StateFormula::and(vec![]), Err(Error::EmptyConjunction));
        let t = StateFormula::Top;
        assert!(DistFormula::new(vec![(ratio(1, 2), t.clone())]).is_err());
        assert!(DistFormula::new(vec![(ratio(3, 2), t.clone()), (ratio(-1, 2), t.clone())]).is_err());
        assert!(DistFormula::new(vec![]).is_err());
        assert!(DistFormula::new(vec![(ratio(1, 2), t.clone()), (ratio(1, 2), t)]).is_ok());
    }

    #[test]
    fn depth() {
        assert_eq!(modal_depth(&StateFormula::Top), 0);
        let ab = StateFormula::diamond_state(
            l("a"),
            StateFormula::diamond_state(l("b"), StateFormula::Top),
        );
        assert_eq!(modal_depth(&ab), 2);
        let mixed = StateFormula::and(vec![StateFormula::refusal(l("c")), ab]).unwrap();
        assert_eq!(modal_depth(&StateFormula::not(mixed)), 2);
    }
}
