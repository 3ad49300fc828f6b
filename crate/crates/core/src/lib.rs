//! Supremal sublanguage computation for supervisory control of discrete-event
//! systems.
//!
//! The crate is organized in layers:
//!
//! * [`lang_core`]: exact regular-language values (canonical minimized
//!   complete DFAs) and the algebra on them;
//! * [`topology`]: semi-topological closure operators, axiom checking,
//!   interior dualization and clopen detection;
//! * [`operators`]: the concrete closure operators used in synthesis
//!   (normality, L-closedness, controllability variants, trace closure,
//!   prefix closure and its dual);
//! * [`solvers`]: the fixed-point iteration schemes and supremal
//!   sublanguage solvers built on top;
//! * [`oracle`]: independent string-level brute-force verification on
//!   bounded universes;
//! * [`random`]: seeded random generation of languages and synthesis
//!   problems for validation.

pub mod lang_core;
pub mod topology;
pub mod operators;
pub mod solvers;
pub mod oracle;
pub mod random;

pub use lang_core::{Alphabet, IndependenceRelation, Lang, LangError, SetRelation, SymbolId, Word};
