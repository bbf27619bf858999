//! Independent brute-force oracles and proptest strategies for
//! cross-checking `mimicry-core`.
//!
//! Nothing here is fast; every oracle is meant for instances with a handful
//! of states, terms or cells.

pub mod oracles;
pub mod rewrite;
pub mod strategies;
