//! The JSON problem-file format: one document declaring the alphabet, the
//! three automata, optional trace data, the selected solver and options.
//!
//! Automata may be given as transition tables (partial tables are completed
//! with a non-accepting sink on load) or as explicit finite word lists.
//! Canonical serialization always emits full tables over the canonical state
//! numbering, so load → serialize → load is byte-stable.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use suprema_core::solvers::{
    SolverOptions, SynthesisProblem, DEFAULT_MAX_ITERATIONS,
};
use suprema_core::{Alphabet, IndependenceRelation, Lang, LangError};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("invalid problem: {0}")]
    Lang(#[from] LangError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphabetFile {
    pub symbols: Vec<String>,
    #[serde(default)]
    pub observable: Vec<String>,
    #[serde(default)]
    pub uncontrollable: Vec<String>,
}

/// An automaton, either as a (possibly partial) transition table or as an
/// explicit finite list of words.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomatonFile {
    Table {
        states: Vec<String>,
        initial: String,
        accepting: Vec<String>,
        transitions: Vec<(String, String, String)>,
    },
    Words {
        words: Vec<String>,
    },
}

/// Budgets and flags as written in the file. Unset fields fall back to the
/// `SUPREMA_MAX_ITER` environment default and then to the built-in default,
/// resolved at dispatch time so canonical serialization stays independent of
/// the environment.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct OptionsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_inner_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<bool>,
}

impl OptionsFile {
    pub fn resolve(&self, flag_max_iter: Option<usize>, env_max_iter: Option<usize>) -> SolverOptions {
        let max_iterations = flag_max_iter
            .or(self.max_iterations)
            .or(env_max_iter)
            .unwrap_or(DEFAULT_MAX_ITERATIONS);
        let max_inner_iterations = flag_max_iter
            .or(self.max_inner_iterations)
            .or(env_max_iter)
            .unwrap_or(DEFAULT_MAX_ITERATIONS);
        SolverOptions {
            max_iterations,
            max_inner_iterations,
            cross_check: self.cross_check.unwrap_or(true),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Normal,
    Lclosed,
    PrefixClosedControllable,
    Controllable,
    ControllableNormal,
    TraceClosed,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::Normal => "normal",
            SolverKind::Lclosed => "lclosed",
            SolverKind::PrefixClosedControllable => "prefix_closed_controllable",
            SolverKind::Controllable => "controllable",
            SolverKind::ControllableNormal => "controllable_normal",
            SolverKind::TraceClosed => "trace_closed",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub alphabet: AlphabetFile,
    pub plant_closed: AutomatonFile,
    pub plant_marked: AutomatonFile,
    pub spec: AutomatonFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub solver: SolverKind,
    #[serde(default)]
    pub options: OptionsFile,
}

/// A fully validated problem: core languages plus the file-level selections.
pub struct LoadedProblem {
    pub problem: SynthesisProblem,
    pub solver: SolverKind,
    pub options: OptionsFile,
    pub file_bound: Option<usize>,
}

fn build_lang(alphabet: &Alphabet, auto: &AutomatonFile) -> Result<Lang, ProblemError> {
    match auto {
        AutomatonFile::Words { words } => Ok(Lang::from_strs(alphabet, words)?),
        AutomatonFile::Table { states, initial, accepting, transitions } => {
            if states.is_empty() {
                return Err(ProblemError::Invalid("automaton needs at least one state".into()));
            }
            let state_id = |name: &str| -> Result<usize, ProblemError> {
                states
                    .iter()
                    .position(|s| s == name)
                    .ok_or_else(|| ProblemError::Invalid(format!("unknown state {name}")))
            };
            for (i, s) in states.iter().enumerate() {
                if states[..i].contains(s) {
                    return Err(ProblemError::Invalid(format!("duplicate state {s}")));
                }
            }
            let n = states.len();
            let syms = alphabet.len();
            // Sink-completed table: the sink is state n.
            let mut table = vec![n; (n + 1) * syms];
            let mut seen = vec![false; n * syms];
            for (from, sym, to) in transitions {
                let f = state_id(from)?;
                let s = alphabet
                    .symbol_id(sym)
                    .ok_or_else(|| ProblemError::Invalid(format!("unknown symbol {sym}")))?;
                let t = state_id(to)?;
                if seen[f * syms + s] {
                    return Err(ProblemError::Invalid(format!(
                        "duplicate transition from {from} on {sym}"
                    )));
                }
                seen[f * syms + s] = true;
                table[f * syms + s] = t;
            }
            let mut accepting_mask = vec![false; n + 1];
            for name in accepting {
                accepting_mask[state_id(name)?] = true;
            }
            let init = state_id(initial)?;
            // Rotate so the declared initial state is index 0, as
            // `from_raw_table` requires.
            if init != 0 {
                let perm: Vec<usize> =
                    (0..=n).map(|i| if i == 0 { init } else if i == init { 0 } else { i }).collect();
                let inv = |i: usize| if i == 0 { init } else if i == init { 0 } else { i };
                let mut rotated = vec![0usize; (n + 1) * syms];
                let mut rotated_acc = vec![false; n + 1];
                for (new_idx, &old_idx) in perm.iter().enumerate() {
                    rotated_acc[new_idx] = accepting_mask[old_idx];
                    for s in 0..syms {
                        rotated[new_idx * syms + s] = inv(table[old_idx * syms + s]);
                    }
                }
                // The inverse of this swap permutation is itself.
                return Ok(Lang::from_raw_table(alphabet, rotated_acc, rotated));
            }
            Ok(Lang::from_raw_table(alphabet, accepting_mask, table))
        }
    }
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<ProblemFile, ProblemError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ProblemError::Io { path: path.display().to_string(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Builds the validated core problem.
    pub fn realize(&self) -> Result<LoadedProblem, ProblemError> {
        let alphabet =
            Alphabet::new(&self.alphabet.symbols, &self.alphabet.observable, &self.alphabet.uncontrollable)?;
        let plant_closed = build_lang(&alphabet, &self.plant_closed)?;
        let plant_marked = build_lang(&alphabet, &self.plant_marked)?;
        let spec = build_lang(&alphabet, &self.spec)?;
        let independence = match &self.independence {
            None => None,
            Some(pairs) => {
                let borrowed: Vec<(&str, &str)> =
                    pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                Some(IndependenceRelation::new(&alphabet, &borrowed)?)
            }
        };
        let problem = SynthesisProblem::new(
            alphabet,
            plant_closed,
            plant_marked,
            spec,
            independence,
            self.bound,
        )
        .map_err(|e| ProblemError::Invalid(e.to_string()))?;
        Ok(LoadedProblem {
            problem,
            solver: self.solver,
            options: self.options.clone(),
            file_bound: self.bound,
        })
    }

    /// The canonical re-serialization: automata emitted as full tables over
    /// canonical state numbering. Loading the output reproduces it byte for
    /// byte.
    pub fn canonical(&self) -> Result<ProblemFile, ProblemError> {
        let loaded = self.realize()?;
        let p = &loaded.problem;
        Ok(ProblemFile {
            alphabet: AlphabetFile {
                symbols: p.alphabet().symbols().map(str::to_string).collect(),
                observable: p
                    .alphabet()
                    .observable()
                    .iter()
                    .map(|&i| p.alphabet().symbol_name(i).to_string())
                    .collect(),
                uncontrollable: p
                    .alphabet()
                    .uncontrollable()
                    .iter()
                    .map(|&i| p.alphabet().symbol_name(i).to_string())
                    .collect(),
            },
            plant_closed: automaton_file(p.plant_closed()),
            plant_marked: automaton_file(p.plant_marked()),
            spec: automaton_file(p.spec()),
            independence: p.independence().map(|rel| {
                rel.pairs()
                    .map(|(a, b)| {
                        (
                            p.alphabet().symbol_name(a).to_string(),
                            p.alphabet().symbol_name(b).to_string(),
                        )
                    })
                    .collect()
            }),
            bound: self.bound,
            solver: self.solver,
            options: self.options.clone(),
        })
    }
}

/// Renders a canonical language as a full transition table with states
/// `s0..sN` in canonical order.
pub fn automaton_file(lang: &Lang) -> AutomatonFile {
    let alphabet = lang.alphabet();
    let states: Vec<String> = (0..lang.num_states()).map(|i| format!("s{i}")).collect();
    let accepting: Vec<String> =
        (0..lang.num_states()).filter(|&i| lang.is_accepting_state(i)).map(|i| format!("s{i}")).collect();
    let mut transitions = Vec::new();
    for s in 0..lang.num_states() {
        for sym in 0..alphabet.len() {
            transitions.push((
                format!("s{s}"),
                alphabet.symbol_name(sym).to_string(),
                format!("s{}", lang.transition(s, sym)),
            ));
        }
    }
    AutomatonFile::Table {
        states,
        initial: "s0".to_string(),
        accepting,
        transitions,
    }
}

/// Stable pretty JSON used for every emitted document.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    out.push('\n');
    out
}

/// Restriction of the spec language for the trace solver: it must already be
/// a finite language within the declared bound.
pub fn spec_words_within_bound(
    problem: &SynthesisProblem,
    bound: usize,
) -> Result<BTreeSet<suprema_core::Word>, ProblemError> {
    let spec = problem.spec();
    if !spec.is_finite() {
        return Err(ProblemError::Invalid(
            "trace_closed needs a finite specification language".to_string(),
        ));
    }
    let horizon = Lang::up_to_length(problem.alphabet(), bound);
    if !spec.is_subset_of(&horizon).map_err(ProblemError::Lang)? {
        return Err(ProblemError::Invalid(format!(
            "trace_closed specification has words longer than the bound {bound}"
        )));
    }
    Ok(spec.enumerate(bound).into_iter().collect())
}
