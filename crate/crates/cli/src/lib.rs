//! Text formats, random system generation, verification reports and the
//! `mimicry` command line on top of `mimicry-core`.

pub mod app;
mod cursor;
pub mod dot;
pub mod formula_syntax;
pub mod generator;
pub mod pts_format;
pub mod verify;

pub use app::run_cli;
pub use cursor::ParseError;
pub use formula_syntax::parse_formula;
pub use generator::{generate_random_pts, GeneratorParams};
pub use pts_format::{parse_pts, serialize_pts, PtsFormatError};
pub use verify::{verify_pts, verify_random, VerificationReport};
