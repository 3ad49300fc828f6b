//! `suprema`: batch synthesis of supremal sublanguages from JSON problem
//! files.
//!
//! Exit codes: 0 success; 1 a definition check or axiom claim failed;
//! 2 malformed input; 3 iteration budget exhausted; 4 state budget
//! exhausted; 70 internal invariant violation.

mod dot;
mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use suprema_core::lang_core::{set_state_budget, LangError, DEFAULT_STATE_BUDGET};
use suprema_core::operators::{make_operator, OperatorError, OperatorKind};
use suprema_core::oracle::{brute_force_supremal, check_definition, BoundedUniverse, Property};
use suprema_core::random::axiom_samples;
use suprema_core::solvers::{
    sup_controllable, sup_controllable_normal, sup_l_closed, sup_normal,
    sup_prefix_closed_controllable, sup_trace_closed_bounded, SolverError, SolverResult,
};
use suprema_core::topology::{check_axioms, check_clopen, Axiom, TopologyError, Verdict};
use suprema_core::{IndependenceRelation, Lang};

use problem::{
    automaton_file, spec_words_within_bound, to_canonical_json, AutomatonFile, LoadedProblem,
    ProblemError, ProblemFile, SolverKind,
};

#[derive(Parser)]
#[command(name = "suprema", version, about = "Supremal sublanguage synthesis for supervisory control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Iteration budget override (outer and inner loops).
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Recognizer state budget override.
    #[arg(long, global = true)]
    max_states: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run the problem file's selected solver and emit the result.
    Synth {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Check a language definition on a bounded universe; exits 1 with a
    /// witness when it fails.
    Check {
        file: PathBuf,
        /// normal | controllable | l_closed | prefix_closed | trace_closed | prefix_normal
        #[arg(long)]
        property: String,
        /// spec | plant_closed | plant_marked
        #[arg(long, default_value = "spec")]
        lang: String,
        /// Universe length bound (defaults to the file's bound).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Sampled S1–S4 axiom report plus clopen check for one operator kind.
    Axioms {
        file: PathBuf,
        /// normal | lclosed | prefix | prefix_closure | prefix_dual |
        /// controllable_c | controllable_o | controllable_normal_a |
        /// trace_bounded
        #[arg(long)]
        operator: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest recognizer used when sampling languages.
        #[arg(long, default_value_t = 6)]
        max_sample_states: usize,
        #[arg(long, default_value_t = 0xACCE55)]
        seed: u64,
    },
    /// List the members of one of the file's languages up to a bound.
    Enum {
        file: PathBuf,
        /// spec | plant_closed | plant_marked
        #[arg(long, default_value = "spec")]
        lang: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Brute-force the supremal sublanguage for the file's solver on a
    /// bounded universe (the independent oracle).
    Oracle {
        file: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Re-emit the problem in canonical form (full tables, canonical state
    /// numbering). Canonical output reloads byte-identically.
    Canon { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_max_iter = read_env_usize("SUPREMA_MAX_ITER");
    let state_budget = cli
        .max_states
        .or_else(|| read_env_usize("SUPREMA_MAX_STATES"))
        .unwrap_or(DEFAULT_STATE_BUDGET);
    set_state_budget(state_budget);

    match run(cli.command, cli.max_iter, env_max_iter) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Oracle(#[from] suprema_core::oracle::OracleError),
    #[error("{0}")]
    Usage(String),
}

fn lang_is_resource(e: &LangError) -> bool {
    matches!(e, LangError::StateBudgetExceeded { .. })
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Problem(ProblemError::Lang(l)) if lang_is_resource(l) => 4,
            CliError::Problem(_) | CliError::Usage(_) | CliError::Oracle(_) => 2,
            CliError::Operator(OperatorError::Lang(l)) if lang_is_resource(l) => 4,
            CliError::Operator(OperatorError::Topology(TopologyError::Lang(l)))
                if lang_is_resource(l) =>
            {
                4
            }
            CliError::Operator(_) => 2,
            CliError::Solver(e) => match e {
                SolverError::NonConvergence { .. } => 3,
                SolverError::Lang(l) if lang_is_resource(l) => 4,
                SolverError::Topology(TopologyError::Lang(l)) if lang_is_resource(l) => 4,
                SolverError::InternalInvariant(_) => 70,
                _ => 2,
            },
        }
    }
}

fn run(command: Command, flag_max_iter: Option<usize>, env_max_iter: Option<usize>) -> Result<ExitCode, CliError> {
    match command {
        Command::Synth { file, emit } => synth(&file, emit, flag_max_iter, env_max_iter),
        Command::Check { file, property, lang, bound } => check(&file, &property, &lang, bound),
        Command::Axioms { file, operator, samples, max_sample_states, seed } => {
            axioms(&file, &operator, samples, max_sample_states, seed)
        }
        Command::Enum { file, lang, bound } => enumerate(&file, &lang, bound),
        Command::Oracle { file, bound } => oracle(&file, bound),
        Command::Canon { file } => {
            let canonical = ProblemFile::load(&file)?.canonical()?;
            print!("{}", to_canonical_json(&canonical));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &Path) -> Result<LoadedProblem, CliError> {
    Ok(ProblemFile::load(path)?.realize()?)
}

fn pick_lang<'a>(loaded: &'a LoadedProblem, which: &str) -> Result<&'a Lang, CliError> {
    match which {
        "spec" => Ok(loaded.problem.spec()),
        "plant_closed" => Ok(loaded.problem.plant_closed()),
        "plant_marked" => Ok(loaded.problem.plant_marked()),
        other => Err(CliError::Usage(format!(
            "unknown language selector {other}; use spec, plant_closed or plant_marked"
        ))),
    }
}

fn require_bound(flag: Option<usize>, file_bound: Option<usize>) -> Result<usize, CliError> {
    flag.or(file_bound).ok_or_else(|| {
        CliError::Usage("no bound given: pass --bound or set \"bound\" in the file".to_string())
    })
}

#[derive(Serialize)]
struct SynthRecord {
    solver: &'static str,
    converged: bool,
    iterations: usize,
    chain_state_counts: Vec<usize>,
    warnings: Vec<String>,
    supremal: AutomatonFile,
}

#[derive(Serialize)]
struct NonConvergenceRecord {
    solver: &'static str,
    error: &'static str,
    message: String,
    iterations: usize,
    chain_state_counts: Vec<usize>,
    chain: Vec<AutomatonFile>,
}

fn synth(
    path: &Path,
    emit: Emit,
    flag_max_iter: Option<usize>,
    env_max_iter: Option<usize>,
) -> Result<ExitCode, CliError> {
    let loaded = load(path)?;
    let options = loaded.options.resolve(flag_max_iter, env_max_iter);
    let solver_name = loaded.solver.name();
    let result: Result<SolverResult, SolverError> = match loaded.solver {
        SolverKind::Normal => sup_normal(&loaded.problem, &options),
        SolverKind::Lclosed => sup_l_closed(&loaded.problem, &options),
        SolverKind::PrefixClosedControllable => {
            sup_prefix_closed_controllable(&loaded.problem, &options)
        }
        SolverKind::Controllable => sup_controllable(&loaded.problem, &options),
        SolverKind::ControllableNormal => sup_controllable_normal(&loaded.problem, &options),
        SolverKind::TraceClosed => trace_closed_result(&loaded),
    };
    match result {
        Ok(result) => {
            let record = SynthRecord {
                solver: solver_name,
                converged: result.converged,
                iterations: result.iterations,
                chain_state_counts: result.stats.clone(),
                warnings: result.warnings.clone(),
                supremal: automaton_file(&result.supremal),
            };
            match emit {
                Emit::Json => print!("{}", to_canonical_json(&record)),
                Emit::Dot => print!("{}", dot::render(&result.supremal, "supremal")),
                Emit::Both => {
                    print!("{}", to_canonical_json(&record));
                    print!("{}", dot::render(&result.supremal, "supremal"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(SolverError::NonConvergence { scheme, iterations, chain }) => {
            let record = NonConvergenceRecord {
                solver: solver_name,
                error: "non_convergence",
                message: format!("{scheme}: no fixed point within {iterations} iterations"),
                iterations,
                chain_state_counts: chain.iter().map(Lang::num_states).collect(),
                chain: chain.iter().map(automaton_file).collect(),
            };
            print!("{}", to_canonical_json(&record));
            Ok(ExitCode::from(3))
        }
        Err(other) => Err(other.into()),
    }
}

/// The trace solver works on explicit word sets; its closed-form answer is
/// wrapped as a one-step result for uniform reporting.
fn trace_closed_result(loaded: &LoadedProblem) -> Result<SolverResult, SolverError> {
    let bound = loaded.file_bound.ok_or_else(|| {
        SolverError::RejectedInput("trace_closed needs a \"bound\" in the problem file".to_string())
    })?;
    let problem = &loaded.problem;
    let relation = problem
        .independence()
        .cloned()
        .unwrap_or_else(|| IndependenceRelation::empty(problem.alphabet()));
    let words = spec_words_within_bound(problem, bound)
        .map_err(|e| SolverError::RejectedInput(e.to_string()))?;
    let supremal_words = sup_trace_closed_bounded(&words, &relation, bound)?;
    let supremal = Lang::from_words(problem.alphabet(), supremal_words)?;
    let chain = vec![problem.spec().clone(), supremal];
    Ok(SolverResult {
        supremal: chain[1].clone(),
        stats: chain.iter().map(Lang::num_states).collect(),
        iterations: 1,
        converged: true,
        chain,
        warnings: Vec::new(),
    })
}

#[derive(Serialize)]
struct CheckRecord {
    property: &'static str,
    lang: String,
    bound: usize,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn check(path: &Path, property: &str, which: &str, bound: Option<usize>) -> Result<ExitCode, CliError> {
    let loaded = load(path)?;
    let property = Property::from_name(property).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown property {property}; use normal, controllable, l_closed, prefix_closed, trace_closed or prefix_normal"
        ))
    })?;
    let bound = require_bound(bound, loaded.file_bound)?;
    let target = pick_lang(&loaded, which)?;
    let universe = BoundedUniverse::new(loaded.problem.alphabet(), bound);
    let words = universe.restrict(target);
    let verdict = check_definition(&words, &loaded.problem, property, &universe)?;
    let record = CheckRecord {
        property: property.name(),
        lang: which.to_string(),
        bound,
        holds: verdict.holds,
        witness: verdict
            .witness
            .as_ref()
            .map(|w| loaded.problem.alphabet().format_word(w)),
    };
    print!("{}", to_canonical_json(&record));
    Ok(if verdict.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct AxiomEntry {
    axiom: String,
    pass: bool,
    informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<CounterexampleRecord>,
}

#[derive(Serialize)]
struct CounterexampleRecord {
    witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<Vec<String>>,
}

#[derive(Serialize)]
struct AxiomsRecord {
    operator: String,
    samples: usize,
    claimed_clopen: bool,
    axioms: Vec<AxiomEntry>,
    clopen: AxiomEntry,
    conforms: bool,
}

fn sample_strings(lang: &Lang) -> Vec<String> {
    lang.enumerate_strings(lang.num_states() + 2)
}

fn axiom_entry(axiom: Axiom, verdict: &Verdict) -> AxiomEntry {
    let counterexample = match verdict {
        Verdict::Pass => None,
        Verdict::Fail { witness, partner } => Some(CounterexampleRecord {
            witness: sample_strings(witness),
            partner: partner.as_ref().map(sample_strings),
        }),
    };
    AxiomEntry {
        axiom: axiom.to_string(),
        pass: verdict.passed(),
        informational: axiom == Axiom::UnionEquality,
        counterexample,
    }
}

fn axioms(
    path: &Path,
    operator: &str,
    samples: usize,
    max_sample_states: usize,
    seed: u64,
) -> Result<ExitCode, CliError> {
    let loaded = load(path)?;
    let problem = &loaded.problem;
    let alphabet = problem.alphabet().clone();
    let kind = match operator {
        "normal" => OperatorKind::Normal { marked: problem.plant_marked().clone() },
        "lclosed" => OperatorKind::LClosed { marked: problem.plant_marked().clone() },
        "prefix" => OperatorKind::Prefix { alphabet },
        "prefix_closure" => OperatorKind::PrefixClosure { alphabet },
        "prefix_dual" => OperatorKind::PrefixDual { alphabet },
        "controllable_c" => OperatorKind::ControllableC { closed: problem.plant_closed().clone() },
        "controllable_o" => OperatorKind::ControllableO { closed: problem.plant_closed().clone() },
        "controllable_normal_a" => {
            OperatorKind::ControllableNormalA { closed: problem.plant_closed().clone() }
        }
        "trace_bounded" => {
            let bound = loaded.file_bound.ok_or_else(|| {
                CliError::Usage("trace_bounded needs a \"bound\" in the problem file".to_string())
            })?;
            OperatorKind::TraceBounded {
                alphabet: alphabet.clone(),
                independence: problem
                    .independence()
                    .cloned()
                    .unwrap_or_else(|| IndependenceRelation::empty(&alphabet)),
                bound,
            }
        }
        other => {
            return Err(CliError::Usage(format!("unknown operator kind {other}")));
        }
    };
    let op = make_operator(kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sample_langs, pairs) = axiom_samples(&mut rng, op.carrier(), samples, max_sample_states);
    let report = check_axioms(&op, &sample_langs, &pairs).map_err(OperatorError::from)?;
    let clopen_report = check_clopen(&op, &sample_langs).map_err(OperatorError::from)?;

    let axioms: Vec<AxiomEntry> =
        report.checks.iter().map(|c| axiom_entry(c.axiom, &c.verdict)).collect();
    let clopen_check = &clopen_report.checks[0];
    let clopen = axiom_entry(clopen_check.axiom, &clopen_check.verdict);
    let axioms_ok = axioms.iter().all(|a| a.pass || a.informational);
    let conforms = axioms_ok && (!op.claimed_clopen() || clopen.pass);
    let record = AxiomsRecord {
        operator: op.name().to_string(),
        samples: sample_langs.len(),
        claimed_clopen: op.claimed_clopen(),
        axioms,
        clopen,
        conforms,
    };
    print!("{}", to_canonical_json(&record));
    Ok(if record.conforms { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct EnumRecord {
    lang: String,
    bound: usize,
    count: usize,
    strings: Vec<String>,
}

fn enumerate(path: &Path, which: &str, bound: Option<usize>) -> Result<ExitCode, CliError> {
    let loaded = load(path)?;
    let bound = require_bound(bound, loaded.file_bound)?;
    let target = pick_lang(&loaded, which)?;
    let strings = target.enumerate_strings(bound);
    let record =
        EnumRecord { lang: which.to_string(), bound, count: strings.len(), strings };
    print!("{}", to_canonical_json(&record));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OracleRecord {
    solver: &'static str,
    bound: usize,
    properties: Vec<&'static str>,
    count: usize,
    strings: Vec<String>,
}

fn solver_properties(kind: SolverKind) -> Vec<Property> {
    match kind {
        SolverKind::Normal => vec![Property::Normal],
        SolverKind::Lclosed => vec![Property::LClosed],
        SolverKind::PrefixClosedControllable => {
            vec![Property::PrefixClosed, Property::Controllable]
        }
        SolverKind::Controllable => vec![Property::Controllable],
        SolverKind::ControllableNormal => {
            vec![Property::Controllable, Property::Normal, Property::PrefixNormal]
        }
        SolverKind::TraceClosed => vec![Property::TraceClosed],
    }
}

fn oracle(path: &Path, bound: Option<usize>) -> Result<ExitCode, CliError> {
    let loaded = load(path)?;
    let bound = require_bound(bound, loaded.file_bound)?;
    let universe = BoundedUniverse::new(loaded.problem.alphabet(), bound);
    let e = universe.restrict(loaded.problem.spec());
    let properties = solver_properties(loaded.solver);
    let supremal = brute_force_supremal(&e, &loaded.problem, &properties, &universe)?;
    let alphabet = loaded.problem.alphabet();
    let mut words: Vec<_> = supremal.into_iter().collect();
    words.sort_by_key(|w| (w.len(), w.clone()));
    let strings: Vec<String> = words.iter().map(|w| alphabet.format_word(w)).collect();
    let record = OracleRecord {
        solver: loaded.solver.name(),
        bound,
        properties: properties.iter().map(|p| p.name()).collect(),
        count: strings.len(),
        strings,
    };
    print!("{}", to_canonical_json(&record));
    Ok(ExitCode::SUCCESS)
}
