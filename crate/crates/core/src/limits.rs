//! Process-wide guard against automaton blowup.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

static MAX_STATES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_STATES);

/// Abort constructions that would exceed `n` product states.
pub fn set_max_states(n: usize) {
    MAX_STATES.store(n.max(1), Ordering::Relaxed);
}

pub fn max_states() -> usize {
    MAX_STATES.load(Ordering::Relaxed)
}

pub(crate) fn check_states(n: usize) -> Result<()> {
    let m = max_states();
    if n > m {
        Err(Error::TooManyStates(m))
    } else {
        Ok(())
    }
}
