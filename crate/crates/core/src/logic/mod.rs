//! The probabilistic modal logic: formulae, satisfaction, modal depth and
//! structural equivalence `≡_L`.

mod formula;
mod normal;
mod sat;

pub use formula::{dist_modal_depth, modal_depth, Conjunction, DistFormula, StateFormula};
pub use normal::{l_equiv, l_equiv_dist, normalize, normalize_dist};
pub use sat::{satisfies_dist, satisfies_state, Checker};
