//! The four generic fixed-point schemes. Each one returns the full iterate
//! chain; fixed points are detected by exact language equality of canonical
//! recognizers, never by state-count heuristics.

use crate::lang_core::Lang;
use crate::topology::{interior, ClosureOperator};

use super::{run_chain, SolverError, SolverOptions, SolverResult};

fn require_carrier(e: &Lang, op: &ClosureOperator) -> Result<(), SolverError> {
    if !e.is_subset_of(op.carrier())? {
        return Err(SolverError::RejectedInput(format!(
            "language is not contained in the carrier of operator {}",
            op.name()
        )));
    }
    Ok(())
}

/// Supremal solution of the single topologized equation
/// `K = M \ (M \ K)□`, i.e. the interior of `e`. The scheme stabilizes
/// after one application (idempotence); the confirming second application
/// is kept in the chain, so the result provably satisfies its own equation.
pub fn sup_single(
    e: &Lang,
    op: &ClosureOperator,
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    require_carrier(e, op)?;
    let chain = run_chain(
        "single",
        e.clone(),
        |k| Ok(interior(op, k)?),
        options.max_iterations,
    )?;
    Ok(SolverResult::from_chain(chain, Vec::new()))
}

/// Supremal solution of a system of topologized equations, one per operator,
/// via the composed-interior scheme `K ← K°¹°²…°ⁿ` (interiors applied in
/// list order). An empty system degenerates to the identity.
pub fn sup_system(
    e: &Lang,
    ops: &[ClosureOperator],
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    for op in ops {
        require_carrier(e, op)?;
    }
    let chain = run_chain(
        "system",
        e.clone(),
        |k| {
            let mut current = k.clone();
            for op in ops {
                current = interior(op, &current)?;
            }
            Ok(current)
        },
        options.max_iterations,
    )?;
    Ok(SolverResult::from_chain(chain, Vec::new()))
}

/// Supremal K ⊆ e whose image K□ under `outer` solves every inner
/// topologized equation (search-space relaxation).
///
/// Each round closes the current iterate under `outer`, solves the relaxed
/// system for the largest conforming X inside that closure (interiors of
/// the inner operators in list order, then the interior of the registered
/// dual), and constrains back with `K ← K ∩ X`.
pub fn sup_relaxed(
    e: &Lang,
    outer: &ClosureOperator,
    inner: &[ClosureOperator],
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    let dual = outer.dual().ok_or_else(|| {
        SolverError::RejectedConfiguration(format!(
            "operator {} has no registered dual",
            outer.name()
        ))
    })?;
    require_carrier(e, outer)?;
    let boxed = outer.apply(e)?;
    for op in inner {
        if !boxed.is_subset_of(op.carrier())? {
            return Err(SolverError::RejectedInput(format!(
                "closure of the specification under {} escapes the carrier of {}",
                outer.name(),
                op.name()
            )));
        }
    }
    let chain = run_chain(
        "relaxed",
        e.clone(),
        |k| {
            let start = outer.apply(k)?;
            let gamma = run_chain(
                "relaxed-inner",
                start,
                |l| {
                    let mut current = l.clone();
                    for op in inner {
                        current = interior(op, &current)?;
                    }
                    Ok(interior(dual, &current)?)
                },
                options.max_inner_iterations,
            )?;
            let solution = gamma.last().expect("inner chains are never empty");
            Ok(k.intersect(solution)?)
        },
        options.max_iterations,
    )?;
    Ok(SolverResult::from_chain(chain, Vec::new()))
}

/// Supremal solution of a mixed system: each block (outer with dual, inner)
/// contributes one equation about K^{outer}, solved per round by a relaxed
/// single-equation pass, blocks taken in order.
pub fn sup_mixed(
    e: &Lang,
    blocks: &[(ClosureOperator, ClosureOperator)],
    options: &SolverOptions,
) -> Result<SolverResult, SolverError> {
    for (outer, inner) in blocks {
        if outer.dual().is_none() {
            return Err(SolverError::RejectedConfiguration(format!(
                "operator {} has no registered dual",
                outer.name()
            )));
        }
        require_carrier(e, outer)?;
        let boxed = outer.apply(e)?;
        if !boxed.is_subset_of(inner.carrier())? {
            return Err(SolverError::RejectedInput(format!(
                "closure of the specification under {} escapes the carrier of {}",
                outer.name(),
                inner.name()
            )));
        }
    }
    let block_options = SolverOptions {
        max_iterations: options.max_inner_iterations,
        max_inner_iterations: options.max_inner_iterations,
        cross_check: false,
    };
    let chain = run_chain(
        "mixed",
        e.clone(),
        |k| {
            let mut current = k.clone();
            for (outer, inner) in blocks {
                let solved =
                    sup_relaxed(&current, outer, std::slice::from_ref(inner), &block_options)?;
                current = solved.supremal;
            }
            Ok(current)
        },
        options.max_iterations,
    )?;
    Ok(SolverResult::from_chain(chain, Vec::new()))
}
