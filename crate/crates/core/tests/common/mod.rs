#![allow(dead_code)]

use mimicry_core::logic::{DistFormula, StateFormula};
use mimicry_core::pts::{Distribution, Label, ProcessId, Pts, PtsBuilder};
use mimicry_core::rational::{ratio, Rational};

pub fn label(a: &str) -> Label {
    Label::new(a).unwrap()
}

/// `¬⟨a⟩⊤`
pub fn bar(a: &str) -> StateFormula {
    StateFormula::refusal(label(a))
}

pub fn dia(a: &str, phi: StateFormula) -> StateFormula {
    StateFormula::diamond_state(label(a), phi)
}

pub fn dia_sum(a: &str, terms: Vec<(Rational, StateFormula)>) -> StateFormula {
    StateFormula::diamond(label(a), DistFormula::new(terms).unwrap())
}

pub fn and(members: Vec<StateFormula>) -> StateFormula {
    StateFormula::and(members).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

/// s -a-> s1 -b-> nil;  t -a-> {t1: 3/4, t2: 1/4}, t -a-> t3;  t1, t2, t3 -b-> nil.
pub fn fig1() -> Pts {
    let mut b = PtsBuilder::new();
    for a in ["a", "b", "c"] {
        b.action(a).unwrap();
    }
    let [s, s1, nil, t, t1, t2, t3] =
        ["s", "s1", "nil", "t", "t1", "t2", "t3"].map(|n| b.process(n).unwrap());
    b.transition(s, "a", Distribution::dirac(s1)).unwrap();
    b.transition(s1, "b", Distribution::dirac(nil)).unwrap();
    b.transition(t, "a", Distribution::new([(t1, q(3, 4)), (t2, q(1, 4))]).unwrap())
        .unwrap();
    b.transition(t, "a", Distribution::dirac(t3)).unwrap();
    for p in [t1, t1, t2, t3] {
        b.transition(p, "b", Distribution::dirac(nil)).unwrap();
    }
    b.build().unwrap()
}

/// s -a-> s1 -b-> nil;  s' -a-> {s2: 3/4, s3: 1/4}, s' -a-> {s4: 1/2, s5: 1/2};
/// s2 -b,c-> nil, s3 -b-> nil, s4 -b-> nil, s5 -c-> nil.
pub fn fig2() -> Pts {
    let mut b = PtsBuilder::new();
    for a in ["a", "b", "c"] {
        b.action(a).unwrap();
    }
    let [s, s1, nil, s2, s3, s4, s5, sp] =
        ["s", "s1", "nil", "s2", "s3", "s4", "s5", "s'"].map(|n| b.process(n).unwrap());
    b.transition(s, "a", Distribution::dirac(s1)).unwrap();
    b.transition(s1, "b", Distribution::dirac(nil)).unwrap();
    b.transition(sp, "a", Distribution::new([(s2, q(3, 4)), (s3, q(1, 4))]).unwrap())
        .unwrap();
    b.transition(sp, "a", Distribution::new([(s4, q(1, 2)), (s5, q(1, 2))]).unwrap())
        .unwrap();
    for (p, a) in [(s2, "b"), (s2, "c"), (s3, "b"), (s4, "b"), (s5, "c")] {
        b.transition(p, a, Distribution::dirac(nil)).unwrap();
    }
    b.build().unwrap()
}

pub fn id(pts: &Pts, name: &str) -> ProcessId {
    pts.lookup(name).unwrap()
}

/// `ā ∧ b̄ ∧ c̄`
pub fn nil_formula() -> StateFormula {
    and(vec![bar("a"), bar("b"), bar("c")])
}
