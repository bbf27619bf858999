//! Nondeterministic probabilistic labeled transition systems.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::{is_probability, sum, Rational};
use crate::{Error, Result};

/// Interned action label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    /// Creates a label; names must be nonempty.
    pub fn new(name: &str) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        Ok(Label(Arc::from(name)))
    }

    /// The label text.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Index of a process inside its [`Pts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProcessId(u32);

impl ProcessId {
    /// Wraps a raw index.
    pub fn new(index: usize) -> Self {
        ProcessId(u32::try_from(index).expect("process index overflows u32"))
    }

    /// The raw index.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite-support probability distribution over processes.
///
/// Every stored weight is strictly positive and the weights sum to exactly 1;
/// the support is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution {
    weights: BTreeMap<ProcessId, Rational>,
}

impl Distribution {
    /// Builds a distribution from `(process, weight)` pairs.
    ///
    /// Weights must be in (0,1], processes distinct, and the total exactly 1.
    pub fn new(pairs: impl IntoIterator<Item = (ProcessId, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (s, w) in pairs {
            if !is_probability(&w) {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "weight {w} of process #{} is not in (0,1]",
                    s.index()
                )));
            }
            if weights.insert(s, w).is_some() {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "process #{} listed twice",
                    s.index()
                )));
            }
        }
        let total = sum(weights.values());
        if !total.is_one() {
            return Err(Error::InvalidDistribution(alloc::format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Distribution { weights })
    }

    /// The Dirac distribution on `s`.
    pub fn dirac(s: ProcessId) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(s, Rational::one());
        Distribution { weights }
    }

    /// Convex combination `sum_i p_i * pi_i`.
    ///
    /// Coefficients must lie in (0,1] and sum to exactly 1.
    pub fn convex_combination<'a>(
        parts: impl IntoIterator<Item = (Rational, &'a Distribution)>,
    ) -> Result<Self> {
        let parts: Vec<_> = parts.into_iter().collect();
        let total = sum(parts.iter().map(|(p, _)| p));
        if parts.is_empty() || !total.is_one() || !parts.iter().all(|(p, _)| is_probability(p)) {
            return Err(Error::CoefficientSum(total.to_string()));
        }
        let mut weights: BTreeMap<ProcessId, Rational> = BTreeMap::new();
        for (p, pi) in parts {
            for (s, w) in &pi.weights {
                *weights.entry(*s).or_insert_with(Rational::zero) += &p * w;
            }
        }
        Ok(Distribution { weights })
    }

    /// Probability of `s` (zero outside the support).
    pub fn weight(&self, s: ProcessId) -> Rational {
        self.weights.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// The support, in increasing order.
    pub fn support(&self) -> impl ExactSizeIterator<Item = ProcessId> + '_ {
        self.weights.keys().copied()
    }

    /// `(process, weight)` pairs in support order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (ProcessId, &Rational)> + '_ {
        self.weights.iter().map(|(s, w)| (*s, w))
    }

    /// Size of the support.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// Always `false`: distributions have nonempty support.
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Depth of a process: the longest chain of transitions it can perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Depth {
    /// Every run stops after at most this many steps.
    Finite(usize),
    /// The process can reach a cycle.
    Infinite,
}

impl Depth {
    /// The finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(n) => Some(n),
            Depth::Infinite => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite PTS with a declared finite alphabet.
///
/// Processes are identified by [`ProcessId`]s handed out in declaration
/// order. The transition relation is a set: identical `(s, a, pi)` triples
/// are stored once, sorted by action and then distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pts {
    names: Vec<String>,
    index: BTreeMap<String, ProcessId>,
    alphabet: Vec<Label>,
    transitions: Vec<BTreeMap<Label, Vec<Distribution>>>,
    depths: Vec<Depth>,
}

impl Pts {
    /// Number of processes.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// `true` iff the system has no processes.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All process ids in declaration order.
    pub fn processes(&self) -> impl ExactSizeIterator<Item = ProcessId> + Clone {
        (0..self.names.len()).map(ProcessId::new)
    }

    /// Name of a process. Panics on a foreign id.
    pub fn name(&self, s: ProcessId) -> &str {
        &self.names[s.index()]
    }

    /// Looks a process up by name.
    pub fn lookup(&self, name: &str) -> Result<ProcessId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownProcess(name.into()))
    }

    /// The declared alphabet, sorted.
    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    /// Finds an alphabet label by name.
    pub fn action(&self, name: &str) -> Result<&Label> {
        self.alphabet
            .iter()
            .find(|a| a.as_str() == name)
            .ok_or_else(|| Error::UnknownAction(name.into()))
    }

    pub(crate) fn check(&self, s: ProcessId) -> Result<()> {
        if s.index() < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownProcess(alloc::format!("#{}", s.index())))
        }
    }

    pub(crate) fn check_action(&self, a: &Label) -> Result<()> {
        if self.alphabet.binary_search(a).is_ok() {
            Ok(())
        } else {
            Err(Error::UnknownAction(a.to_string()))
        }
    }

    /// All transitions of `s`, sorted by action then distribution.
    pub fn transitions(&self, s: ProcessId) -> impl Iterator<Item = (&Label, &Distribution)> + '_ {
        self.transitions[s.index()]
            .iter()
            .flat_map(|(a, ds)| ds.iter().map(move |d| (a, d)))
    }

    /// Number of transitions of `s`.
    pub fn transition_count(&self, s: ProcessId) -> usize {
        self.transitions[s.index()].values().map(Vec::len).sum()
    }

    /// `init(s)`: the actions `s` can perform.
    pub fn init_actions(&self, s: ProcessId) -> Result<BTreeSet<Label>> {
        self.check(s)?;
        Ok(self.transitions[s.index()].keys().cloned().collect())
    }

    pub(crate) fn can(&self, s: ProcessId, a: &Label) -> bool {
        self.transitions[s.index()].contains_key(a)
    }

    /// `der(s, a)`: distributions reachable from `s` by `a`.
    pub fn derivatives(&self, s: ProcessId, a: &Label) -> Result<&[Distribution]> {
        self.check(s)?;
        self.check_action(a)?;
        Ok(self.der(s, a))
    }

    pub(crate) fn der(&self, s: ProcessId, a: &Label) -> &[Distribution] {
        self.transitions[s.index()]
            .get(a)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Depth of `s`.
    pub fn depth(&self, s: ProcessId) -> Result<Depth> {
        self.check(s)?;
        Ok(self.depths[s.index()])
    }

    /// `true` iff `s` has finite depth (image-finiteness is structural here).
    pub fn is_finite_process(&self, s: ProcessId) -> Result<bool> {
        Ok(self.depth(s)? != Depth::Infinite)
    }

    /// Depth of `s`, or [`Error::NotFiniteProcess`].
    pub fn finite_depth(&self, s: ProcessId) -> Result<usize> {
        self.depth(s)?
            .finite()
            .ok_or_else(|| Error::NotFiniteProcess(self.name(s).into()))
    }

    /// Largest depth over all processes; `None` if some process is infinite.
    pub fn max_depth(&self) -> Option<usize> {
        self.depths
            .iter()
            .try_fold(0, |acc, d| d.finite().map(|n| acc.max(n)))
    }

    /// First process of infinite depth, if any.
    pub fn first_infinite(&self) -> Option<ProcessId> {
        self.processes().find(|s| self.depths[s.index()] == Depth::Infinite)
    }
}

/// Incremental construction of a [`Pts`].
#[derive(Clone, Debug, Default)]
pub struct PtsBuilder {
    names: Vec<String>,
    index: BTreeMap<String, ProcessId>,
    alphabet: BTreeSet<Label>,
    transitions: Vec<(ProcessId, Label, Distribution)>,
}

impl PtsBuilder {
    /// Empty builder.
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an action.
    pub fn action(&mut self, name: &str) -> Result<Label> {
        let label = Label::new(name)?;
        self.alphabet.insert(label.clone());
        Ok(label)
    }

    /// Declares (or finds) a process.
    pub fn process(&mut self, name: &str) -> Result<ProcessId> {
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if let Some(id) = self.index.get(name) {
            return Ok(*id);
        }
        let id = ProcessId::new(self.names.len());
        self.names.push(name.into());
        self.index.insert(name.into(), id);
        Ok(id)
    }

    /// Adds `from -action-> dist`. The action must be declared by the time
    /// [`build`](Self::build) runs.
    pub fn transition(&mut self, from: ProcessId, action: &str, dist: Distribution) -> Result<()> {
        self.transitions.push((from, Label::new(action)?, dist));
        Ok(())
    }

    /// Validates and freezes the system.
    pub fn build(self) -> Result<Pts> {
        let n = self.names.len();
        let mut transitions: Vec<BTreeMap<Label, Vec<Distribution>>> = alloc::vec![BTreeMap::new(); n];
        for (s, a, d) in self.transitions {
            if s.index() >= n {
                return Err(Error::UnknownProcess(alloc::format!("#{}", s.index())));
            }
            if !self.alphabet.contains(&a) {
                return Err(Error::UnknownAction(a.to_string()));
            }
            if let Some(t) = d.support().find(|t| t.index() >= n) {
                return Err(Error::UnknownProcess(alloc::format!("#{}", t.index())));
            }
            transitions[s.index()].entry(a).or_default().push(d);
        }
        for per_action in &mut transitions {
            for ds in per_action.values_mut() {
                ds.sort();
                ds.dedup();
            }
        }
        let depths = compute_depths(&transitions);
        Ok(Pts {
            names: self.names,
            index: self.index,
            alphabet: self.alphabet.into_iter().collect(),
            transitions,
            depths,
        })
    }
}

/// Depth of every process by iterative DFS; anything that reaches a cycle is
/// infinite.
fn compute_depths(transitions: &[BTreeMap<Label, Vec<Distribution>>]) -> Vec<Depth> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }

    let n = transitions.len();
    let succ: Vec<Vec<usize>> = transitions
        .iter()
        .map(|m| {
            let set: BTreeSet<usize> = m
                .values()
                .flatten()
                .flat_map(|d| d.support().map(ProcessId::index))
                .collect();
            set.into_iter().collect()
        })
        .collect();

    let mut mark = alloc::vec![Mark::White; n];
    let mut depth = alloc::vec![Depth::Finite(0); n];
    for root in 0..n {
        if mark[root] != Mark::White {
            continue;
        }
        let mut stack = alloc::vec![(root, 0usize)];
        mark[root] = Mark::Grey;
        while let Some(&mut (s, ref mut next)) = stack.last_mut() {
            if let Some(&t) = succ[s].get(*next) {
                *next += 1;
                match mark[t] {
                    Mark::White => {
                        mark[t] = Mark::Grey;
                        stack.push((t, 0));
                    }
                    // back edge: `s` sits on a cycle
                    Mark::Grey => depth[s] = Depth::Infinite,
                    Mark::Black => {}
                }
                continue;
            }
            stack.pop();
            mark[s] = Mark::Black;
            if depth[s] == Depth::Infinite || succ[s].is_empty() && transitions[s].is_empty() {
                continue;
            }
            let mut best = 0usize;
            let mut infinite = false;
            for &t in &succ[s] {
                match depth[t] {
                    Depth::Finite(d) => best = best.max(d),
                    Depth::Infinite => infinite = true,
                }
            }
            depth[s] = if infinite {
                Depth::Infinite
            } else {
                Depth::Finite(best + 1)
            };
        }
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn fig2() -> Pts {
        let mut b = PtsBuilder::new();
        for a in ["a", "b", "c"] {
            b.action(a).unwrap();
        }
        let [s, s1, nil, s2, s3, s4, s5, sp] =
            ["s", "s1", "nil", "s2", "s3", "s4", "s5", "s'"].map(|n| b.process(n).unwrap());
        b.transition(s, "a", Distribution::dirac(s1)).unwrap();
        b.transition(s1, "b", Distribution::dirac(nil)).unwrap();
        let pi1 = Distribution::new([(s2, ratio(3, 4)), (s3, ratio(1, 4))]).unwrap();
        let pi2 = Distribution::new([(s4, ratio(1, 2)), (s5, ratio(1, 2))]).unwrap();
        b.transition(sp, "a", pi1).unwrap();
        b.transition(sp, "a", pi2).unwrap();
        for (p, a) in [(s2, "b"), (s2, "c"), (s3, "b"), (s4, "b"), (s5, "c")] {
            b.transition(p, a, Distribution::dirac(nil)).unwrap();
        }
        b.build().unwrap()
    }

    fn label(s: &str) -> Label {
        Label::new(s).unwrap()
    }

    #[test]
    fn dirac_has_singleton_support() {
        let d = Distribution::dirac(ProcessId::new(3));
        assert_eq!(d.support().collect::<Vec<_>>(), [ProcessId::new(3)]);
        assert!(d.weight(ProcessId::new(3)).is_one());
    }

    #[test]
    fn convex_combination_examples() {
        let s1 = ProcessId::new(0);
        let d = Distribution::dirac(s1);
        let same =
            Distribution::convex_combination([(ratio(3, 4), &d), (ratio(1, 4), &d)]).unwrap();
        assert_eq!(same, d);
        assert_eq!(Distribution::convex_combination([(ratio(1, 1), &d)]).unwrap(), d);

        let a = Distribution::dirac(ProcessId::new(1));
        let b = Distribution::dirac(ProcessId::new(2));
        let half = Distribution::convex_combination([(ratio(1, 2), &a), (ratio(1, 2), &b)]).unwrap();
        assert_eq!(half.weight(ProcessId::new(1)), ratio(1, 2));
        assert_eq!(half.weight(ProcessId::new(2)), ratio(1, 2));

        assert!(matches!(
            Distribution::convex_combination([(ratio(1, 2), &a), (ratio(1, 3), &b)]),
            Err(Error::CoefficientSum(_))
        ));
    }

    #[test]
    fn distribution_rejects_bad_weights() {
        let p = ProcessId::new(0);
        let q = ProcessId::new(1);
        assert!(Distribution::new([(p, ratio(3, 4)), (q, ratio(1, 3))]).is_err());
        assert!(Distribution::new([(p, ratio(0, 1)), (q, ratio(1, 1))]).is_err());
        assert!(Distribution::new([(p, ratio(1, 2)), (p, ratio(1, 2))]).is_err());
        assert!(Distribution::new([]).is_err());
    }

    #[test]
    fn structural_queries_on_fig2() {
        let pts = fig2();
        let s = pts.lookup("s").unwrap();
        let sp = pts.lookup("s'").unwrap();
        let s2 = pts.lookup("s2").unwrap();
        let nil = pts.lookup("nil").unwrap();

        assert_eq!(pts.init_actions(s).unwrap(), [label("a")].into_iter().collect());
        assert_eq!(
            pts.init_actions(s2).unwrap(),
            [label("b"), label("c")].into_iter().collect()
        );
        assert!(pts.init_actions(nil).unwrap().is_empty());

        let der = pts.derivatives(sp, &label("a")).unwrap();
        assert_eq!(der.len(), 2);
        assert!(pts.derivatives(nil, &label("a")).unwrap().is_empty());
        assert!(pts.derivatives(s, &label("b")).unwrap().is_empty());
        assert!(matches!(
            pts.derivatives(s, &label("z")),
            Err(Error::UnknownAction(_))
        ));
        assert!(matches!(
            pts.depth(ProcessId::new(99)),
            Err(Error::UnknownProcess(_))
        ));

        assert_eq!(pts.depth(nil).unwrap(), Depth::Finite(0));
        assert_eq!(pts.depth(s).unwrap(), Depth::Finite(2));
        assert_eq!(pts.depth(sp).unwrap(), Depth::Finite(2));
        assert!(pts.processes().all(|p| pts.is_finite_process(p).unwrap()));
        assert_eq!(pts.max_depth(), Some(2));
    }

    #[test]
    fn cycles_have_infinite_depth() {
        let mut b = PtsBuilder::new();
        b.action("a").unwrap();
        let x = b.process("x").unwrap();
        let y = b.process("y").unwrap();
        let z = b.process("z").unwrap();
        let nil = b.process("nil").unwrap();
        b.transition(x, "a", Distribution::dirac(x)).unwrap();
        b.transition(y, "a", Distribution::dirac(x)).unwrap();
        b.transition(z, "a", Distribution::dirac(nil)).unwrap();
        let pts = b.build().unwrap();
        assert_eq!(pts.depth(x).unwrap(), Depth::Infinite);
        assert_eq!(pts.depth(y).unwrap(), Depth::Infinite);
        assert_eq!(pts.depth(z).unwrap(), Depth::Finite(1));
        assert!(!pts.is_finite_process(x).unwrap());
        assert!(pts.is_finite_process(nil).unwrap());
        assert_eq!(pts.max_depth(), None);
        assert_eq!(pts.first_infinite(), Some(x));
    }

    #[test]
    fn duplicate_transitions_collapse() {
        let mut b = PtsBuilder::new();
        b.action("b").unwrap();
        let t1 = b.process("t1").unwrap();
        let nil = b.process("nil").unwrap();
        b.transition(t1, "b", Distribution::dirac(nil)).unwrap();
        b.transition(t1, "b", Distribution::dirac(nil)).unwrap();
        let pts = b.build().unwrap();
        assert_eq!(pts.transition_count(t1), 1);
    }

    #[test]
    fn undeclared_action_is_rejected() {
        let mut b = PtsBuilder::new();
        b.action("a").unwrap();
        let s = b.process("s").unwrap();
        b.transition(s, "b", Distribution::dirac(s)).unwrap();
        assert_eq!(b.build(), Err(Error::UnknownAction("b".into())));
    }
}
