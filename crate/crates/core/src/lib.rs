//! Exact behavioral relations and metrics for finite nondeterministic
//! probabilistic transition systems, together with the probabilistic modal
//! logic whose mimicking formulae characterize them.
//!
//! Everything is computed in exact rational arithmetic:
//!
//! * [`pts`]: systems, distributions, `init`/`der`/depth queries.
//! * [`relations`]: relation lifting, up-to-k (ready) simulations and
//!   bisimulations and their greatest fixpoints.
//! * [`metrics`]: Kantorovich and Hausdorff liftings and the bisimilarity
//!   metric.
//! * [`logic`]: formulae, satisfaction, modal depth and structural equivalence.
//! * [`mimicking`]: mimicking and simulation characteristic formulae.
//! * [`formula_metric`]: the distance between formulae and the logical
//!   distance between processes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod flow;
pub mod formula_metric;
pub mod logic;
pub mod metrics;
pub mod mimicking;
pub mod pts;
pub mod rational;
pub mod relations;
pub mod transport;

pub use error::{Error, Result};
pub use formula_metric::FormulaDistance;
pub use logic::{DistFormula, StateFormula};
pub use metrics::{Discount, PseudometricTable};
pub use pts::{Depth, Distribution, Label, ProcessId, Pts, PtsBuilder};
pub use rational::Rational;
pub use relations::{Relation, RelationKind};
