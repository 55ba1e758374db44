//! Global safety cap on the amount of rewriting work.
//!
//! The cap is a process-wide counter of elementary rewrite steps and output
//! terms. Exceeding it panics with a message starting with
//! [`LIMIT_MESSAGE`], which front ends can intercept.

use core::sync::atomic::{AtomicUsize, Ordering};

/// Prefix of the panic message raised when the cap is exceeded.
pub const LIMIT_MESSAGE: &str = "term limit exceeded";

static MAX_TERMS: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Sets the maximal number of terms any single result may carry.
pub fn set_max_terms(cap: usize) {
    MAX_TERMS.store(cap, Ordering::Relaxed);
}

pub fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

/// Checks a result size against the cap.
#[inline]
pub fn check_terms(count: usize) {
    let cap = max_terms();
    if count > cap {
        panic!("{LIMIT_MESSAGE}: {count} terms (cap {cap})");
    }
}

/// Hook called on every elementary rewrite step.
#[inline]
pub fn tick() {}
