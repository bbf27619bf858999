//! Cross-checks of the theorem-level invariants on concrete systems.
//!
//! Every check is an exact comparison. A check that fails at least once
//! keeps the first counterexample found as its witness.

use std::collections::BTreeMap;
use std::fmt;

use mimicry_core::formula_metric::{logical_distance_table, logical_distance_table_upto};
use mimicry_core::logic::{l_equiv, Checker};
use mimicry_core::metrics::{bisimilarity_metric, upto_k_chain};
use mimicry_core::mimicking::Mimicker;
use mimicry_core::relations::{greatest_relation, upto_chain};
use mimicry_core::{Discount, Pts, RelationKind};
use rayon::prelude::*;
use serde::Serialize;

use crate::generator::{generate_random_pts, GeneratorParams};

/// Counterexample to a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Generator seed of the offending system, if it was generated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Discount factor in use.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    /// Level `k`, for up-to-k checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// First process.
    pub s: String,
    /// Second process, for checks on pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    /// The two sides that disagree.
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(seed) = self.seed {
            write!(f, "seed {seed}, ")?;
        }
        write!(f, "s = {}", self.s)?;
        if let Some(t) = &self.t {
            write!(f, ", t = {t}")?;
        }
        if let Some(k) = self.k {
            write!(f, ", k = {k}")?;
        }
        if let Some(l) = &self.lambda {
            write!(f, ", lambda = {l}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// No counterexample found.
    Pass,
    /// At least one counterexample.
    Fail,
}

/// One named check over all verified systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    /// Stable check identifier.
    pub name: &'static str,
    /// The property checked.
    pub description: &'static str,
    /// Pass or fail; fail iff `witness` is present.
    pub status: Status,
    /// Number of individual comparisons made.
    pub instances: u64,
    /// First counterexample, present exactly when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Results of every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Number of systems examined.
    pub systems: u64,
    /// One entry per check, in a fixed order.
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// True iff no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// The named check.
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "systems checked: {}", self.systems)?;
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "{status} {} ({} instances): {}", c.name, c.instances, c.description)?;
            if let Some(w) = &c.witness {
                write!(f, "\n     witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "some checks failed" })
    }
}

/// Check identifiers and descriptions, in report order.
pub const CHECKS: [(&str, &str); 10] = [
    ("sat-own-mimicking", "s satisfies its own up-to-k mimicking formula"),
    ("bisim-iff-equal-mimicking", "mimicking formulae are L-equivalent iff s ~_k t"),
    ("ready-sim-iff-sat-mimicking", "t satisfies the mimicking formula of s iff s is ready simulated by t up to k"),
    ("sim-iff-sat-characteristic", "t satisfies the simulation characteristic formula of s iff t simulates s up to k"),
    ("sat-mimicking-implies-sim", "t satisfies the mimicking formula of s only if t simulates s up to k"),
    ("logical-equals-metric-upto-k", "logical distance up to k equals the up-to-k bisimulation metric"),
    ("logical-equals-metric", "logical distance equals the bisimilarity metric"),
    ("metric-kernel-is-bisimilarity", "the bisimilarity metric is zero exactly on bisimilar pairs"),
    ("logical-distance-is-pseudometric", "the up-to-k logical distance is a 1-bounded pseudometric"),
    ("metric-monotone-in-k", "the up-to-k metrics increase with k"),
];

#[derive(Clone, Debug, Default)]
struct Tally {
    systems: u64,
    entries: BTreeMap<&'static str, (u64, Option<Witness>)>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, witness: impl FnOnce() -> Witness) {
        debug_assert!(CHECKS.iter().any(|(n, _)| *n == name));
        let entry = self.entries.entry(name).or_default();
        entry.0 += 1;
        if !ok && entry.1.is_none() {
            entry.1 = Some(witness());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.systems += other.systems;
        for (name, (n, w)) in other.entries {
            let entry = self.entries.entry(name).or_default();
            entry.0 += n;
            if entry.1.is_none() {
                entry.1 = w;
            }
        }
        self
    }

    fn report(mut self) -> VerificationReport {
        let checks = CHECKS
            .iter()
            .map(|&(name, description)| {
                let (instances, witness) = self.entries.remove(name).unwrap_or_default();
                let status = if witness.is_some() { Status::Fail } else { Status::Pass };
                CheckResult { name, description, status, instances, witness }
            })
            .collect();
        VerificationReport { systems: self.systems, checks }
    }
}

/// Highest level examined: two past the depth, or 4 on cyclic systems.
pub fn max_level(pts: &Pts) -> usize {
    pts.max_depth().map_or(4, |d| d + 2)
}

fn check_system(pts: &Pts, seed: Option<u64>, lambdas: &[Discount]) -> Tally {
    let mut tally = Tally { systems: 1, ..Tally::default() };
    let kmax = max_level(pts);
    let name = |s| pts.name(s).to_owned();
    let wit = |k: Option<usize>, lambda: Option<&Discount>, s, t: Option<_>, detail: String| Witness {
        seed,
        lambda: lambda.map(|l| l.value().to_string()),
        k,
        s: name(s),
        t: t.map(name),
        detail,
    };

    let sim = upto_chain(pts, RelationKind::Simulation, kmax);
    let ready = upto_chain(pts, RelationKind::ReadySimulation, kmax);
    let bisim = upto_chain(pts, RelationKind::Bisimulation, kmax);
    let mut phi = Mimicker::mimicking(pts);
    let mut theta = Mimicker::sim_characteristic(pts);
    let mut checker = Checker::new(pts);
    for k in 0..=kmax {
        let phis: Vec<_> = pts.processes().map(|s| phi.state(s, k).expect("own process")).collect();
        let thetas: Vec<_> = pts.processes().map(|s| theta.state(s, k).expect("own process")).collect();
        for s in pts.processes() {
            let phi_s = &phis[s.index()];
            let own = checker.state(s, phi_s).expect("formula over the alphabet");
            tally.record("sat-own-mimicking", own, || {
                wit(Some(k), None, s, None, format!("s does not satisfy {phi_s}"))
            });
            for t in pts.processes() {
                let phi_t = &phis[t.index()];
                let equiv = l_equiv(phi_s, phi_t);
                let bis = bisim[k].contains(s, t);
                tally.record("bisim-iff-equal-mimicking", equiv == bis, || {
                    wit(Some(k), None, s, Some(t), format!("L-equivalent: {equiv}, bisimilar: {bis}"))
                });
                let sat = checker.state(t, phi_s).expect("formula over the alphabet");
                let rs = ready[k].contains(s, t);
                tally.record("ready-sim-iff-sat-mimicking", sat == rs, || {
                    wit(Some(k), None, s, Some(t), format!("t satisfies {phi_s}: {sat}, ready simulated: {rs}"))
                });
                let theta_s = &thetas[s.index()];
                let sat_theta = checker.state(t, theta_s).expect("formula over the alphabet");
                let sm = sim[k].contains(s, t);
                tally.record("sim-iff-sat-characteristic", sat_theta == sm, || {
                    wit(Some(k), None, s, Some(t), format!("t satisfies {theta_s}: {sat_theta}, simulated: {sm}"))
                });
                tally.record("sat-mimicking-implies-sim", !sat || sm, || {
                    wit(Some(k), None, s, Some(t), format!("t satisfies {phi_s} but does not simulate s"))
                });
            }
        }
    }

    let finite = pts.first_infinite().is_none();
    let bisimilar = finite.then(|| greatest_relation(pts, RelationKind::Bisimulation));
    for lambda in lambdas {
        let chain = upto_k_chain(pts, lambda, kmax);
        for k in 0..=kmax {
            let ell = logical_distance_table_upto(pts, lambda, k);
            for s in pts.processes() {
                for t in pts.processes() {
                    let (l, d) = (ell.get(s, t), chain[k].get(s, t));
                    tally.record("logical-equals-metric-upto-k", l == d, || {
                        wit(Some(k), Some(lambda), s, Some(t), format!("logical {l}, metric {d}"))
                    });
                }
            }
            let ok = ell.is_pseudometric();
            tally.record("logical-distance-is-pseudometric", ok, || {
                let s = pts.processes().next().expect("nonempty");
                wit(Some(k), Some(lambda), s, None, "table violates a pseudometric axiom".into())
            });
            if k < kmax {
                let ok = chain[k].le(&chain[k + 1]);
                tally.record("metric-monotone-in-k", ok, || {
                    let s = pts.processes().next().expect("nonempty");
                    wit(Some(k), Some(lambda), s, None, "d^k exceeds d^(k+1) somewhere".into())
                });
            }
        }
        if let Some(bisimilar) = &bisimilar {
            let ell = logical_distance_table(pts, lambda).expect("finite system");
            let d = bisimilarity_metric(pts, lambda).expect("finite system");
            for s in pts.processes() {
                for t in pts.processes() {
                    let (l, m) = (ell.get(s, t), d.get(s, t));
                    tally.record("logical-equals-metric", l == m, || {
                        wit(None, Some(lambda), s, Some(t), format!("logical {l}, metric {m}"))
                    });
                    let zero = num_traits::Zero::is_zero(m);
                    let bis = bisimilar.contains(s, t);
                    tally.record("metric-kernel-is-bisimilarity", zero == bis, || {
                        wit(None, Some(lambda), s, Some(t), format!("distance {m}, bisimilar: {bis}"))
                    });
                }
            }
        }
    }
    tally
}

/// Runs every check on one system.
pub fn verify_pts(pts: &Pts, lambdas: &[Discount]) -> VerificationReport {
    check_system(pts, None, lambdas).report()
}

/// Runs every check on the generated systems for `seeds`, in parallel.
pub fn verify_random(
    seeds: impl IntoIterator<Item = u64>,
    params: &GeneratorParams,
    lambdas: &[Discount],
) -> VerificationReport {
    let seeds: Vec<u64> = seeds.into_iter().collect();
    let tallies: Vec<Tally> = seeds
        .par_iter()
        .map(|&seed| check_system(&generate_random_pts(seed, params), Some(seed), lambdas))
        .collect();
    tallies.into_iter().fold(Tally::default(), Tally::merge).report()
}

/// The discount factors verified by default: 1, 1/2 and 3/4.
pub fn default_lambdas() -> Vec<Discount> {
    [(1, 1), (1, 2), (3, 4)]
        .into_iter()
        .map(|(n, d)| Discount::new(mimicry_core::rational::ratio(n, d)).expect("in (0,1]"))
        .collect()
}
