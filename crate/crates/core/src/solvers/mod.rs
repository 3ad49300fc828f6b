//! Fixed-point iteration schemes over language lattices and the supremal
//! sublanguage solvers built from them.
//!
//! Four generic schemes are provided:
//!
//! * [`sup_single`]: the supremal open subset under one operator, i.e. the
//!   interior (stabilizes after one application);
//! * [`sup_system`]: composed interiors `K ← K°¹…°ⁿ` for a system of
//!   topologized equations;
//! * [`sup_relaxed`]: search-space relaxation for equations phrased about
//!   K□ (e.g. about the prefix closure K̄) rather than K itself; the outer
//!   operator must carry a registered dual;
//! * [`sup_mixed`]: a block sequence of relaxed single-equation solves.
//!
//! On top of these sit the named synthesis entry points: supremal normal,
//! L-closed, prefix-closed controllable, controllable, controllable-and-
//! normal, and bounded trace-closed sublanguages.

use thiserror::Error;

use crate::lang_core::{Alphabet, IndependenceRelation, Lang, LangError};
use crate::operators::OperatorError;
use crate::topology::TopologyError;

mod schemes;
mod synthesis;

pub use schemes::{sup_mixed, sup_relaxed, sup_single, sup_system};
pub use synthesis::{
    sup_controllable, sup_controllable_normal, sup_l_closed, sup_normal,
    sup_prefix_closed_controllable, sup_trace_closed_bounded,
};

/// Default cap on outer and inner fixed-point iterations.
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Error)]
pub enum SolverError {
    /// The iteration budget ran out before a fixed point was confirmed. The
    /// weakly decreasing chain computed so far is carried along.
    #[error("{scheme}: no fixed point within {iterations} iterations")]
    NonConvergence { scheme: String, iterations: usize, chain: Vec<Lang> },
    #[error("rejected input: {0}")]
    RejectedInput(String),
    #[error("rejected configuration: {0}")]
    RejectedConfiguration(String),
    /// A theorem-level identity failed to hold; this traps implementation
    /// bugs, not user errors.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

impl From<OperatorError> for SolverError {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::RejectedConfiguration { operator, reason } => {
                SolverError::RejectedConfiguration(format!("{operator}: {reason}"))
            }
            OperatorError::Topology(t) => SolverError::Topology(t),
            OperatorError::Lang(l) => SolverError::Lang(l),
        }
    }
}

/// A plant–specification bundle: closed behavior L(G), marked behavior
/// Lm(G), the specification E, and optional trace data.
///
/// The plant pair is deliberately loose: Lm(G) ⊆ L(G) is not imposed here;
/// individual solvers normalize the containments they rely on and record a
/// warning when they shrink the specification.
#[derive(Clone, Debug)]
pub struct SynthesisProblem {
    alphabet: Alphabet,
    plant_closed: Lang,
    plant_marked: Lang,
    spec: Lang,
    independence: Option<IndependenceRelation>,
    bound: Option<usize>,
}

impl SynthesisProblem {
    /// Validates that all languages share `alphabet` and that the closed
    /// plant behavior is prefix-closed.
    pub fn new(
        alphabet: Alphabet,
        plant_closed: Lang,
        plant_marked: Lang,
        spec: Lang,
        independence: Option<IndependenceRelation>,
        bound: Option<usize>,
    ) -> Result<SynthesisProblem, SolverError> {
        if alphabet.is_empty() {
            return Err(SolverError::RejectedInput(
                "synthesis problems need a non-empty alphabet".to_string(),
            ));
        }
        for (label, lang) in
            [("plant_closed", &plant_closed), ("plant_marked", &plant_marked), ("spec", &spec)]
        {
            if lang.alphabet() != &alphabet {
                return Err(SolverError::RejectedInput(format!(
                    "{label} is declared over {} instead of {}",
                    lang.alphabet(),
                    alphabet
                )));
            }
        }
        if let Some(rel) = &independence {
            if rel.alphabet() != &alphabet {
                return Err(SolverError::RejectedInput(
                    "independence relation uses a different alphabet".to_string(),
                ));
            }
        }
        if plant_closed != plant_closed.prefix_closure() {
            return Err(SolverError::RejectedInput(
                "plant_closed must be prefix-closed".to_string(),
            ));
        }
        Ok(SynthesisProblem { alphabet, plant_closed, plant_marked, spec, independence, bound })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn plant_closed(&self) -> &Lang {
        &self.plant_closed
    }

    pub fn plant_marked(&self) -> &Lang {
        &self.plant_marked
    }

    pub fn spec(&self) -> &Lang {
        &self.spec
    }

    pub fn independence(&self) -> Option<&IndependenceRelation> {
        self.independence.as_ref()
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }
}

/// Iteration budgets and cross-checking for one solve.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Budget for the top-level scheme loop.
    pub max_iterations: usize,
    /// Budget for nested loops (the Γ-system solves and the inner
    /// relaxation loops).
    pub max_inner_iterations: usize,
    /// Re-derive the answer through the alternative schemes where one
    /// exists and assert agreement.
    pub cross_check: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            max_inner_iterations: DEFAULT_MAX_ITERATIONS,
            cross_check: true,
        }
    }
}

/// A solved supremal language together with its iteration trace.
///
/// The chain is the weakly ⊆-decreasing sequence of iterates including the
/// starting language; on convergence the final two entries are equal (the
/// confirming application is part of the record).
#[derive(Clone, Debug)]
pub struct SolverResult {
    pub supremal: Lang,
    pub chain: Vec<Lang>,
    pub iterations: usize,
    pub converged: bool,
    /// Recognizer state counts per iterate.
    pub stats: Vec<usize>,
    /// Normalization records (e.g. the specification was intersected with a
    /// plant language to establish a containment the scheme assumes).
    pub warnings: Vec<String>,
}

impl SolverResult {
    pub(crate) fn from_chain(chain: Vec<Lang>, warnings: Vec<String>) -> SolverResult {
        let supremal = chain.last().expect("chains are never empty").clone();
        let stats = chain.iter().map(Lang::num_states).collect();
        SolverResult {
            iterations: chain.len() - 1,
            converged: true,
            supremal,
            stats,
            chain,
            warnings,
        }
    }
}

/// Runs `step` from `start` until two consecutive iterates are equal,
/// keeping the whole chain. Exceeding `budget` is a hard error carrying the
/// partial chain.
pub(crate) fn run_chain(
    scheme: &str,
    start: Lang,
    mut step: impl FnMut(&Lang) -> Result<Lang, SolverError>,
    budget: usize,
) -> Result<Vec<Lang>, SolverError> {
    let mut chain = vec![start];
    for _ in 0..budget {
        let current = chain.last().expect("chain is non-empty");
        let next = step(current)?;
        let fixed = next == *current;
        chain.push(next);
        if fixed {
            return Ok(chain);
        }
    }
    Err(SolverError::NonConvergence {
        scheme: scheme.to_string(),
        iterations: budget,
        chain,
    })
}

/// Intersects `spec` with each language in `within`, recording a warning for
/// every containment that had to be established.
pub(crate) fn normalize_spec(
    spec: &Lang,
    within: &[(&str, &Lang)],
    warnings: &mut Vec<String>,
) -> Result<Lang, SolverError> {
    let mut e = spec.clone();
    for (label, bound) in within {
        if !e.is_subset_of(bound)? {
            e = e.intersect(bound)?;
            warnings.push(format!("specification not contained in {label}; intersected"));
        }
    }
    Ok(e)
}
