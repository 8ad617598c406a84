//! Finite automata over indexed alphabets.

pub mod dfa;
pub mod dot;
pub mod nfa;
pub mod text;

pub use dfa::Dfa;
pub use nfa::{Limit, Nfa};

/// State index.
pub type StateId = u32;
