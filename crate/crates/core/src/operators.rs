//! The concrete closure operators used for supremal sublanguage synthesis,
//! each packaged as a [`ClosureOperator`] with its carrier and clopen claim.
//!
//! | kind                    | carrier | K□                                  |
//! |-------------------------|---------|-------------------------------------|
//! | `normal`                | Lm(G)   | P⁻¹P(K) ∩ Lm(G)                     |
//! | `lclosed`               | Lm(G)   | KΣ* ∩ Lm(G)                         |
//! | `prefix` (□_P)          | Σ*      | KΣ*                                 |
//! | `prefix_closure`        | Σ*      | prefix closure of K                 |
//! | `prefix_dual`           | Σ*      | KΣ* (the registered dual of above)  |
//! | `controllable_c`        | L(G)    | K/Σuc* ∩ L(G)                       |
//! | `controllable_o`        | L(G)    | (K/Σuc*)Σ* ∩ L(G)                   |
//! | `controllable_normal_a` | L(G)    | P⁻¹P(K/Σuc*) ∩ L(G), needs Σc ⊆ Σo  |
//! | `trace_bounded`         | Σ^{≤n}  | trace closure \[K\]_I               |
//!
//! Clopen flags are hard-coded per claim (`normal` and `trace_bounded` are
//! clopen) and re-validated by the test suite rather than inferred.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lang_core::{
    trace_closure_bounded, Alphabet, IndependenceRelation, Lang, LangError, Word,
};
use crate::topology::{ClosureOperator, TopologyError};

#[derive(Debug, Clone, Error)]
pub enum OperatorError {
    #[error("operator {operator} rejected: {reason}")]
    RejectedConfiguration { operator: String, reason: String },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// Selects and parameterizes one concrete closure operator.
#[derive(Clone, Debug)]
pub enum OperatorKind {
    /// □_N on Lm(G): K ↦ P⁻¹P(K) ∩ Lm(G). Observation comes from the
    /// alphabet of `marked`.
    Normal { marked: Lang },
    /// □_L on Lm(G): K ↦ KΣ* ∩ Lm(G).
    LClosed { marked: Lang },
    /// □_P on Σ*: K ↦ KΣ*.
    Prefix { alphabet: Alphabet },
    /// Prefix closure on Σ*: K ↦ K̄. Its registered dual is `PrefixDual`.
    PrefixClosure { alphabet: Alphabet },
    /// The dual of prefix closure on Σ*: K ↦ KΣ*.
    PrefixDual { alphabet: Alphabet },
    /// □_C on L(G): K ↦ K/Σuc* ∩ L(G).
    ControllableC { closed: Lang },
    /// □_O on L(G): K ↦ (K/Σuc*)Σ* ∩ L(G). The one-shot optimized topology
    /// for prefix-closed controllability.
    ControllableO { closed: Lang },
    /// □_A on L(G): K ↦ P⁻¹P(K/Σuc*) ∩ L(G). Requires Σc ⊆ Σo.
    ControllableNormalA { closed: Lang },
    /// Bounded trace closure on the finite carrier Σ^{≤bound}. Trace closure
    /// does not preserve regularity, so it is only realized over an explicit
    /// finite universe.
    TraceBounded { alphabet: Alphabet, independence: IndependenceRelation, bound: usize },
}

impl OperatorKind {
    /// The interface name of this kind, as used in problem files.
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::Normal { .. } => "normal",
            OperatorKind::LClosed { .. } => "lclosed",
            OperatorKind::Prefix { .. } => "prefix",
            OperatorKind::PrefixClosure { .. } => "prefix_closure",
            OperatorKind::PrefixDual { .. } => "prefix_dual",
            OperatorKind::ControllableC { .. } => "controllable_c",
            OperatorKind::ControllableO { .. } => "controllable_o",
            OperatorKind::ControllableNormalA { .. } => "controllable_normal_a",
            OperatorKind::TraceBounded { .. } => "trace_bounded",
        }
    }
}

/// Erase-and-reinsert helper: P⁻¹P(K) over `onto` back into K's alphabet.
pub(crate) fn inverse_projection_of_projection(
    k: &Lang,
    onto: &BTreeSet<usize>,
) -> Result<Lang, TopologyError> {
    let alphabet = k.alphabet().clone();
    let projected = k.project(onto)?;
    Ok(projected.inverse_project(&alphabet)?)
}

/// Builds the [`ClosureOperator`] for `kind`, attaching the duals exhibited
/// for it: `prefix_closure` gets `prefix_dual`, and the clopen kinds are
/// their own duals.
pub fn make_operator(kind: OperatorKind) -> Result<ClosureOperator, OperatorError> {
    let name = kind.name();
    let op = match kind {
        OperatorKind::Normal { marked } => {
            let obs = marked.alphabet().observable().clone();
            let carrier = marked.clone();
            let base = ClosureOperator::new(name, carrier, true, move |k: &Lang| {
                let widened = inverse_projection_of_projection(k, &obs)?;
                Ok(widened.intersect(&marked)?)
            });
            let dual = base.clone();
            base.with_dual_unchecked(dual)
        }
        OperatorKind::LClosed { marked } => {
            let sigma_star = Lang::universe(marked.alphabet());
            let carrier = marked.clone();
            ClosureOperator::new(name, carrier, false, move |k: &Lang| {
                Ok(k.concat(&sigma_star)?.intersect(&marked)?)
            })
        }
        OperatorKind::Prefix { alphabet } | OperatorKind::PrefixDual { alphabet } => {
            let sigma_star = Lang::universe(&alphabet);
            ClosureOperator::new(name, sigma_star.clone(), false, move |k: &Lang| {
                Ok(k.concat(&sigma_star)?)
            })
        }
        OperatorKind::PrefixClosure { alphabet } => {
            let base = ClosureOperator::new(
                name,
                Lang::universe(&alphabet),
                false,
                |k: &Lang| Ok(k.prefix_closure()),
            );
            let dual = make_operator(OperatorKind::PrefixDual { alphabet })?;
            base.with_dual_unchecked(dual)
        }
        OperatorKind::ControllableC { closed } => {
            let uc = closed.alphabet().uncontrollable().clone();
            let carrier = closed.clone();
            ClosureOperator::new(name, carrier, false, move |k: &Lang| {
                Ok(k.right_quotient_star(&uc)?.intersect(&closed)?)
            })
        }
        OperatorKind::ControllableO { closed } => {
            let uc = closed.alphabet().uncontrollable().clone();
            let sigma_star = Lang::universe(closed.alphabet());
            let carrier = closed.clone();
            ClosureOperator::new(name, carrier, false, move |k: &Lang| {
                Ok(k.right_quotient_star(&uc)?.concat(&sigma_star)?.intersect(&closed)?)
            })
        }
        OperatorKind::ControllableNormalA { closed } => {
            if !closed.alphabet().controllable_is_observable() {
                return Err(OperatorError::RejectedConfiguration {
                    operator: name.to_string(),
                    reason: "requires every controllable symbol to be observable".to_string(),
                });
            }
            let uc = closed.alphabet().uncontrollable().clone();
            let obs = closed.alphabet().observable().clone();
            let carrier = closed.clone();
            ClosureOperator::new(name, carrier, false, move |k: &Lang| {
                let quotient = k.right_quotient_star(&uc)?;
                let widened = inverse_projection_of_projection(&quotient, &obs)?;
                Ok(widened.intersect(&closed)?)
            })
        }
        OperatorKind::TraceBounded { alphabet, independence, bound } => {
            let carrier = Lang::up_to_length(&alphabet, bound);
            let alphabet_for_apply = alphabet.clone();
            let base = ClosureOperator::new(name, carrier, true, move |k: &Lang| {
                if !k.is_finite() {
                    return Err(TopologyError::Unsupported {
                        operator: "trace_bounded".to_string(),
                        reason: "trace closure is only realized on finite languages".to_string(),
                    });
                }
                let words: BTreeSet<Word> = k.enumerate(bound).into_iter().collect();
                let closed = trace_closure_bounded(&words, &independence, bound);
                Ok(Lang::from_words(&alphabet_for_apply, closed)?)
            });
            let dual = base.clone();
            base.with_dual_unchecked(dual)
        }
    };
    Ok(op)
}

/// Attaches `dual` to `op` after checking that they share a carrier. The
/// relaxed solver requires its outer operator to carry a dual.
pub fn register_dual(
    op: ClosureOperator,
    dual: ClosureOperator,
) -> Result<ClosureOperator, OperatorError> {
    if op.carrier() != dual.carrier() {
        return Err(OperatorError::Topology(TopologyError::CarrierMismatch {
            left: op.name().to_string(),
            right: dual.name().to_string(),
        }));
    }
    Ok(op.with_dual_unchecked(dual))
}
