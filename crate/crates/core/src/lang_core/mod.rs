//! Exact regular-language values and the algebra every closure operator and
//! solver is built from: boolean operations, concatenation, Kleene star,
//! prefix closure, right quotient, natural projection and its inverse, exact
//! comparison, bounded enumeration, and bounded trace closure.

use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

mod alphabet;
mod dfa;
mod lang;
mod trace;

pub use alphabet::{Alphabet, IndependenceRelation, SymbolId, Word};
pub use lang::{Lang, SetRelation};
pub use trace::trace_closure_bounded;

/// Default cap on constructed recognizer states before an operation aborts
/// with [`LangError::StateBudgetExceeded`].
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

static STATE_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_STATE_BUDGET);

/// Global cap on states produced by a single determinization or product.
/// This is a desk-scale tool: pathological blowups fail loudly instead of
/// thrashing.
pub fn state_budget() -> usize {
    STATE_BUDGET.load(Ordering::Relaxed)
}

/// Reconfigures the global state budget (process-wide).
pub fn set_state_budget(limit: usize) {
    STATE_BUDGET.store(limit.max(1), Ordering::Relaxed);
}

/// Errors from language construction and algebra.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LangError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),
    #[error("independence relation is irreflexive; ({0},{0}) rejected")]
    ReflexivePair(String),
    #[error("state budget of {limit} states exceeded")]
    StateBudgetExceeded { limit: usize },
}
