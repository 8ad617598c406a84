//! Automatic structures and graph automatic groups.
//!
//! Regular relations are stored as deterministic automata over padded
//! convolution alphabets. On top of that sit a first-order compiler, an
//! integer arithmetic backend, group presentation builders and decision
//! procedures for the word and conjugacy problems.

pub mod alphabet;
pub mod decide;
pub mod error;
pub mod fa;
pub mod fo;
pub mod groups;
pub mod io;
pub mod limits;
pub mod par;
pub mod presburger;
pub mod relation;

pub use alphabet::{Alphabet, Sym, Word};
pub use error::{Error, Result};
pub use fa::{Dfa, Limit, Nfa, StateId};
pub use relation::RegularRelation;
