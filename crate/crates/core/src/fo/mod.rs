//! First-order logic over automatic structures.

mod compile;
mod formula;
mod parse;
mod structure;

pub use compile::{compile, decide};
pub use formula::Formula;
pub use parse::parse_formula;
pub use structure::AutomaticStructure;
