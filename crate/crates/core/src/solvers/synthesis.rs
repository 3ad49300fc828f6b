//! The named supremal sublanguage solvers. Each one normalizes the
//! containments its scheme assumes (recording a warning when it shrinks the
//! specification), runs the dedicated iteration or closed form, and then
//! re-checks the defining equations of its solution family directly on the
//! answer; a failed re-check is an internal invariant violation, not a user
//! error.

use std::collections::BTreeSet;

use crate::lang_core::{trace_closure_bounded, IndependenceRelation, Lang, Word};
use crate::operators::{inverse_projection_of_projection, make_operator, OperatorKind};
use crate::topology::ClosureOperator;

use super::{
    normalize_spec, run_chain, sup_mixed, sup_relaxed, sup_single, sup_system, SolverError,
    SolverOptions, SolverResult, SynthesisProblem,
};

fn assert_equal(label: &str, left: &Lang, right: &Lang) -> Result<(), SolverError> {
    if left == right {
        Ok(())
    } else {
        Err(SolverError::InternalInvariant(format!("{label} disagree")))
    }
}

/// Supremal normal sublanguage of E w.r.t. (Lm(G), Σo).
///
/// Computed as the interior of E under the normality closure and
/// cross-checked against both closed forms: the carrier difference
/// `Lm \ P⁻¹P(Lm \ E)` and the E-anchored form `E \ P⁻¹P(Lm \ E)`.
pub fn sup_normal(
    problem: &SynthesisProblem,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    let marked = problem.plant_marked();
    let mut warnings = Vec::new();
    let e = normalize_spec(problem.spec(), &[("plant_marked", marked)], &mut warnings)?;

    let op = make_operator(OperatorKind::Normal { marked: marked.clone() })?;
    let mut result = sup_single(&e, &op, options)?;

    let escape =
        inverse_projection_of_projection(&marked.difference(&e)?, problem.alphabet().observable())?;
    let carrier_form = marked.difference(&escape)?;
    let lin_brandt = e.difference(&escape)?;
    assert_equal("normality closed forms", &carrier_form, &lin_brandt)?;
    assert_equal("normality interior and closed form", &result.supremal, &carrier_form)?;

    result.warnings = warnings;
    Ok(result)
}

/// Supremal Lm(G)-closed sublanguage of E. With Lm(G) = Σ* this is the
/// supremal prefix-closed sublanguage.
pub fn sup_l_closed(
    problem: &SynthesisProblem,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    let marked = problem.plant_marked();
    let mut warnings = Vec::new();
    let e = normalize_spec(problem.spec(), &[("plant_marked", marked)], &mut warnings)?;

    let op = make_operator(OperatorKind::LClosed { marked: marked.clone() })?;
    let mut result = sup_single(&e, &op, options)?;

    let sigma_star = Lang::universe(problem.alphabet());
    let closed_form = marked.difference(&marked.difference(&e)?.concat(&sigma_star)?)?;
    assert_equal("L-closedness interior and closed form", &result.supremal, &closed_form)?;

    result.warnings = warnings;
    Ok(result)
}

/// Supremal prefix-closed controllable sublanguage of a prefix-closed E
/// w.r.t. (L(G), Σuc).
///
/// The primary route is the optimized one-shot topology (interior under
/// `controllable_o`); the closed form `L(G) \ ((L(G)\E)/Σuc*)Σ*` and its
/// E-anchored variant `E \ ((L(G)\E)/Σuc*)Σ*` are always asserted, and in
/// cross-check mode the generic two-operator system over `controllable_c`
/// and the prefix extension is solved as well; all routes must agree.
pub fn sup_prefix_closed_controllable(
    problem: &SynthesisProblem,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    if *problem.spec() != problem.spec().prefix_closure() {
        return Err(SolverError::RejectedInput(
            "specification must be prefix-closed for prefix-closed controllability".to_string(),
        ));
    }
    let closed = problem.plant_closed();
    let mut warnings = Vec::new();
    let e = normalize_spec(problem.spec(), &[("plant_closed", closed)], &mut warnings)?;

    let op_o = make_operator(OperatorKind::ControllableO { closed: closed.clone() })?;
    let mut result = sup_single(&e, &op_o, options)?;

    let uc = problem.alphabet().uncontrollable();
    let sigma_star = Lang::universe(problem.alphabet());
    let escape = closed.difference(&e)?.right_quotient_star(uc)?.concat(&sigma_star)?;
    let closed_form = closed.difference(&escape)?;
    let from_spec = e.difference(&escape)?;
    assert_equal("prefix-closed controllability closed forms", &closed_form, &from_spec)?;
    assert_equal(
        "prefix-closed controllability interior and closed form",
        &result.supremal,
        &closed_form,
    )?;

    if options.cross_check {
        let op_c = make_operator(OperatorKind::ControllableC { closed: closed.clone() })?;
        let op_p = make_operator(OperatorKind::Prefix { alphabet: problem.alphabet().clone() })?;
        let system = sup_system(&e, &[op_c, op_p], options)?;
        assert_equal(
            "prefix-closed controllability system scheme",
            &system.supremal,
            &result.supremal,
        )?;
    }

    result.warnings = warnings;
    Ok(result)
}

/// Supremal controllable (not necessarily closed) sublanguage of E w.r.t.
/// (L(G), Σuc), by the constrained relaxation iterate
/// `K ← K \ ((L(G) \ K̄)/Σuc*)Σ*`.
pub fn sup_controllable(
    problem: &SynthesisProblem,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    let closed = problem.plant_closed();
    let mut warnings = Vec::new();
    let e = normalize_spec(problem.spec(), &[("plant_closed", closed)], &mut warnings)?;

    let uc = problem.alphabet().uncontrollable().clone();
    let sigma_star = Lang::universe(problem.alphabet());
    let chain = run_chain(
        "controllable",
        e.clone(),
        |k| {
            let escape =
                closed.difference(&k.prefix_closure())?.right_quotient_star(&uc)?.concat(&sigma_star)?;
            Ok(k.difference(&escape)?)
        },
        options.max_iterations,
    )?;
    let result = SolverResult::from_chain(chain, warnings);

    let kbar = result.supremal.prefix_closure();
    let uc_star = Lang::star_of_symbols(problem.alphabet(), &uc)?;
    let reclosed = kbar.concat(&uc_star)?.intersect(closed)?;
    assert_equal("controllability of the result", &reclosed, &kbar)?;

    if options.cross_check {
        let prefix =
            make_operator(OperatorKind::PrefixClosure { alphabet: problem.alphabet().clone() })?;
        let op_o = make_operator(OperatorKind::ControllableO { closed: closed.clone() })?;
        let relaxed = sup_relaxed(&e, &prefix, std::slice::from_ref(&op_o), options)?;
        assert_equal("controllability relaxed scheme", &relaxed.supremal, &result.supremal)?;
    }

    Ok(result)
}

/// Supremal controllable-and-normal sublanguage of E, under Σc ⊆ Σo.
///
/// Nested iteration: the outer round replaces K by the normality interior of
/// K^◇, where K^◇ is the inner fixed point of
/// `L ← L \ P⁻¹P((L(G) \ L̄)/Σuc*)Σ*`. The three defining equations
/// (controllability of K̄, normality of K̄ in L(G), normality of K in Lm(G))
/// are re-checked on the answer.
pub fn sup_controllable_normal(
    problem: &SynthesisProblem,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    if !problem.alphabet().controllable_is_observable() {
        return Err(SolverError::RejectedConfiguration(
            "supremal controllable-and-normal requires every controllable symbol to be observable"
                .to_string(),
        ));
    }
    let closed = problem.plant_closed();
    let marked = problem.plant_marked();
    let mut warnings = Vec::new();
    let e = normalize_spec(
        problem.spec(),
        &[("plant_marked", marked), ("plant_closed", closed)],
        &mut warnings,
    )?;

    let uc = problem.alphabet().uncontrollable().clone();
    let obs = problem.alphabet().observable().clone();
    let sigma_star = Lang::universe(problem.alphabet());

    let relax_controllable_normal = |k: &Lang| -> Result<Lang, SolverError> {
        let inner = run_chain(
            "controllable-normal-inner",
            k.clone(),
            |l| {
                let quotient = closed.difference(&l.prefix_closure())?.right_quotient_star(&uc)?;
                let escape =
                    inverse_projection_of_projection(&quotient, &obs)?.concat(&sigma_star)?;
                Ok(l.difference(&escape)?)
            },
            options.max_inner_iterations,
        )?;
        Ok(inner.last().expect("inner chains are never empty").clone())
    };
    let chain = run_chain(
        "controllable-normal",
        e.clone(),
        |k| {
            // Normality interior of the relaxed iterate: Lm \ P⁻¹P(Lm \ K^◇),
            // contractive since K^◇ ⊆ Lm.
            let relaxed = relax_controllable_normal(k)?;
            let escape = inverse_projection_of_projection(&marked.difference(&relaxed)?, &obs)?;
            Ok(marked.difference(&escape)?)
        },
        options.max_iterations,
    )?;
    let result = SolverResult::from_chain(chain, warnings);

    let supremal = &result.supremal;
    let sbar = supremal.prefix_closure();
    let uc_star = Lang::star_of_symbols(problem.alphabet(), &uc)?;
    let controllable = sbar.concat(&uc_star)?.intersect(closed)?;
    assert_equal("controllability of the result's closure", &controllable, &sbar)?;
    let closure_normal = inverse_projection_of_projection(&sbar, &obs)?.intersect(closed)?;
    assert_equal("normality of the result's closure", &closure_normal, &sbar)?;
    let spec_normal = inverse_projection_of_projection(supremal, &obs)?.intersect(marked)?;
    assert_equal("normality of the result", &spec_normal, supremal)?;

    if options.cross_check {
        let prefix =
            make_operator(OperatorKind::PrefixClosure { alphabet: problem.alphabet().clone() })?;
        let op_a = make_operator(OperatorKind::ControllableNormalA { closed: closed.clone() })?;
        let op_n = make_operator(OperatorKind::Normal { marked: marked.clone() })?;
        let identity = ClosureOperator::identity(marked.clone());
        let mixed = sup_mixed(&e, &[(prefix, op_a), (identity, op_n)], options)?;
        assert_equal("controllable-and-normal mixed scheme", &mixed.supremal, &result.supremal)?;
    }

    Ok(result)
}

/// Supremal trace-closed subset of an explicit finite word set, computed
/// exactly within the finite universe Σ^{≤bound} as
/// `Σ^{≤bound} \ [Σ^{≤bound} \ e]_I` (trace closure preserves word length,
/// so the bounded complement is exact).
pub fn sup_trace_closed_bounded(
    e: &BTreeSet<Word>,
    relation: &IndependenceRelation,
    bound: usize,
) -> Result<BTreeSet<Word>, SolverError> {
    if let Some(long) = e.iter().find(|w| w.len() > bound) {
        return Err(SolverError::RejectedInput(format!(
            "word {} is longer than the bound {bound}",
            relation.alphabet().format_word(long)
        )));
    }
    let alphabet = relation.alphabet();
    let mut universe: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for sym in 0..alphabet.len() {
                let mut v = w.clone();
                v.push(sym);
                next.push(v);
            }
        }
        universe.extend(next.iter().cloned());
        layer = next;
    }
    let complement: BTreeSet<Word> = universe.iter().filter(|w| !e.contains(*w)).cloned().collect();
    let closed = trace_closure_bounded(&complement, relation, bound);
    Ok(universe.into_iter().filter(|w| !closed.contains(w)).collect())
}
