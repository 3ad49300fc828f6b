//! Semi-topological closure operators on a carrier language, their dual
//! interior operators, and sampled validation of the defining axioms.
//!
//! A closure operator □ on a carrier M claims, for all A, B ⊆ M:
//!
//! * S1 (extensive):        A ⊆ A□
//! * S2 (idempotent):       (A□)□ = A□
//! * S3 (sub-union):        A□ ∪ B□ ⊆ (A ∪ B)□
//! * S4 (preserves empty):  ∅□ = ∅
//!
//! The interior dual is K° = M \ (M \ K)□; it is the largest open subset of
//! K, and it is the supremal-solution machinery the solvers run on. An
//! operator is *clopen* when its open and closed set families coincide.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lang_core::{Lang, LangError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("argument is not contained in the carrier of operator {operator}")]
    CarrierViolation { operator: String },
    #[error("operators {left} and {right} have different carriers")]
    CarrierMismatch { left: String, right: String },
    #[error("operator {operator}: {reason}")]
    Unsupported { operator: String, reason: String },
    #[error(transparent)]
    Lang(#[from] LangError),
}

type ApplyFn = dyn Fn(&Lang) -> Result<Lang, TopologyError> + Send + Sync;

/// A named self-map on sublanguages of a carrier, claiming axioms S1–S4.
///
/// The claims are validated by [`check_axioms`] on sampled languages rather
/// than proven. An operator may carry a registered dual □' such that
/// X = X□ iff X = M \ (M \ X)□'; the relaxed solver requires one.
#[derive(Clone)]
pub struct ClosureOperator {
    name: String,
    carrier: Lang,
    claimed_clopen: bool,
    dual: Option<Arc<ClosureOperator>>,
    apply_fn: Arc<ApplyFn>,
}

impl ClosureOperator {
    pub fn new(
        name: impl Into<String>,
        carrier: Lang,
        claimed_clopen: bool,
        apply: impl Fn(&Lang) -> Result<Lang, TopologyError> + Send + Sync + 'static,
    ) -> ClosureOperator {
        ClosureOperator {
            name: name.into(),
            carrier,
            claimed_clopen,
            dual: None,
            apply_fn: Arc::new(apply),
        }
    }

    /// The identity operator on `carrier`. It is clopen and its own dual.
    pub fn identity(carrier: Lang) -> ClosureOperator {
        let base = ClosureOperator::new("identity", carrier, true, |k| Ok(k.clone()));
        let dual = base.clone();
        ClosureOperator { dual: Some(Arc::new(dual)), ..base }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Lang {
        &self.carrier
    }

    pub fn claimed_clopen(&self) -> bool {
        self.claimed_clopen
    }

    pub fn dual(&self) -> Option<&ClosureOperator> {
        self.dual.as_deref()
    }

    /// Attaches a dual without validating carrier agreement; use
    /// [`crate::operators::register_dual`] for the checked form.
    pub(crate) fn with_dual_unchecked(mut self, dual: ClosureOperator) -> ClosureOperator {
        self.dual = Some(Arc::new(dual));
        self
    }

    /// Applies the closure after checking the carrier precondition.
    pub fn apply(&self, k: &Lang) -> Result<Lang, TopologyError> {
        if !k.is_subset_of(&self.carrier)? {
            return Err(TopologyError::CarrierViolation { operator: self.name.clone() });
        }
        (self.apply_fn)(k)
    }
}

impl fmt::Debug for ClosureOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureOperator")
            .field("name", &self.name)
            .field("claimed_clopen", &self.claimed_clopen)
            .field("has_dual", &self.dual.is_some())
            .finish()
    }
}

/// The closure K□ of `k` within the operator's carrier.
pub fn closure(op: &ClosureOperator, k: &Lang) -> Result<Lang, TopologyError> {
    op.apply(k)
}

/// The interior K° = M \ (M \ K)□: the largest open subset of `k`.
pub fn interior(op: &ClosureOperator, k: &Lang) -> Result<Lang, TopologyError> {
    if !k.is_subset_of(op.carrier())? {
        return Err(TopologyError::CarrierViolation { operator: op.name().to_string() });
    }
    let outside = op.carrier().difference(k)?;
    let closed = op.apply(&outside)?;
    Ok(op.carrier().difference(&closed)?)
}

/// The axioms and derived properties a report can speak about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// S1: A ⊆ A□.
    Extensive,
    /// S2: (A□)□ = A□.
    Idempotent,
    /// S3 in the weak form the operators claim: A□ ∪ B□ ⊆ (A ∪ B)□.
    SubUnionDistributive,
    /// S4: ∅□ = ∅.
    PreservesEmpty,
    /// Informational only: whether Kuratowski equality A□ ∪ B□ = (A ∪ B)□
    /// happened to hold on all samples. Not part of the S1–S4 claim.
    UnionEquality,
    /// Property (*): every closure image is open.
    Clopen,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Extensive => "S1 (extensive)",
            Axiom::Idempotent => "S2 (idempotent)",
            Axiom::SubUnionDistributive => "S3 (sub-union-distributive)",
            Axiom::PreservesEmpty => "S4 (preserves empty)",
            Axiom::UnionEquality => "S3= (union equality, informational)",
            Axiom::Clopen => "clopen (*)",
        };
        f.write_str(s)
    }
}

/// Outcome of checking one axiom over the samples.
#[derive(Clone, Debug)]
pub enum Verdict {
    Pass,
    /// The sample (and partner, for the binary axiom) that broke the axiom.
    Fail { witness: Lang, partner: Option<Lang> },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub verdict: Verdict,
}

impl AxiomCheck {
    /// Re-runs the failed axiom on the stored counterexample; a genuine
    /// counterexample fails again.
    pub fn replays(&self, op: &ClosureOperator) -> Result<bool, TopologyError> {
        match &self.verdict {
            Verdict::Pass => Ok(false),
            Verdict::Fail { witness, partner } => {
                Ok(!axiom_holds_on(op, self.axiom, witness, partner.as_ref())?)
            }
        }
    }
}

/// Per-axiom verdicts for one operator over a sample set.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub operator: String,
    pub sample_count: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed())
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.axiom == axiom).map(|c| &c.verdict)
    }
}

/// Whether `axiom` holds for the specific sample(s); used both by the
/// checkers and by counterexample replay.
pub fn axiom_holds_on(
    op: &ClosureOperator,
    axiom: Axiom,
    k: &Lang,
    partner: Option<&Lang>,
) -> Result<bool, TopologyError> {
    match axiom {
        Axiom::Extensive => {
            let closed = op.apply(k)?;
            Ok(k.is_subset_of(&closed)?)
        }
        Axiom::Idempotent => {
            let once = op.apply(k)?;
            let twice = op.apply(&once)?;
            Ok(once == twice)
        }
        Axiom::SubUnionDistributive => {
            let b = partner.expect("S3 needs a pair");
            let lhs = op.apply(k)?.union(&op.apply(b)?)?;
            let rhs = op.apply(&k.union(b)?)?;
            Ok(lhs.is_subset_of(&rhs)?)
        }
        Axiom::UnionEquality => {
            let b = partner.expect("union equality needs a pair");
            let lhs = op.apply(k)?.union(&op.apply(b)?)?;
            let rhs = op.apply(&k.union(b)?)?;
            Ok(lhs == rhs)
        }
        Axiom::PreservesEmpty => {
            let empty = Lang::empty(k.alphabet());
            Ok(op.apply(&empty)?.is_empty())
        }
        Axiom::Clopen => {
            let closed = op.apply(k)?;
            Ok(closed == interior(op, &closed)?)
        }
    }
}

/// Validates S1–S4 on the given samples (S4 always runs on ∅, S3 on the
/// pairs). Axiom failures are reported, never thrown. The informational
/// union-equality check is appended so reports record whether the operator
/// happened to be fully Kuratowski on these samples.
pub fn check_axioms(
    op: &ClosureOperator,
    samples: &[Lang],
    pair_samples: &[(Lang, Lang)],
) -> Result<AxiomReport, TopologyError> {
    let mut checks = Vec::new();

    for axiom in [Axiom::Extensive, Axiom::Idempotent] {
        let mut verdict = Verdict::Pass;
        for k in samples {
            if !axiom_holds_on(op, axiom, k, None)? {
                verdict = Verdict::Fail { witness: k.clone(), partner: None };
                break;
            }
        }
        checks.push(AxiomCheck { axiom, verdict });
    }

    for axiom in [Axiom::SubUnionDistributive, Axiom::UnionEquality] {
        let mut verdict = Verdict::Pass;
        for (a, b) in pair_samples {
            if !axiom_holds_on(op, axiom, a, Some(b))? {
                verdict = Verdict::Fail { witness: a.clone(), partner: Some(b.clone()) };
                break;
            }
        }
        checks.push(AxiomCheck { axiom, verdict });
    }

    let empty = Lang::empty(op.carrier().alphabet());
    let verdict = if axiom_holds_on(op, Axiom::PreservesEmpty, &empty, None)? {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: empty, partner: None }
    };
    checks.push(AxiomCheck { axiom: Axiom::PreservesEmpty, verdict });

    Ok(AxiomReport { operator: op.name().to_string(), sample_count: samples.len(), checks })
}

/// Tests property (*) on closure images: for each sample K, the closed set
/// K□ must equal its own interior. Closure images generate the closed
/// family, so checking them covers the property at sample scale.
pub fn check_clopen(op: &ClosureOperator, samples: &[Lang]) -> Result<AxiomReport, TopologyError> {
    let mut verdict = Verdict::Pass;
    for k in samples {
        if !axiom_holds_on(op, Axiom::Clopen, k, None)? {
            verdict = Verdict::Fail { witness: k.clone(), partner: None };
            break;
        }
    }
    Ok(AxiomReport {
        operator: op.name().to_string(),
        sample_count: samples.len(),
        checks: vec![AxiomCheck { axiom: Axiom::Clopen, verdict }],
    })
}
