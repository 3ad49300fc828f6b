//! Independent string-level brute-force verification on bounded universes.
//!
//! Everything here works on explicit word sets: prefixes, projections,
//! quotient extensions and trace swaps are computed directly on strings.
//! Recognizers are consulted for membership only, so oracle verdicts do not
//! depend on the automata algebra they are used to check.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::lang_core::{Alphabet, Lang, Word};
use crate::solvers::SynthesisProblem;

/// Hard cap on the subset enumeration: 2^20 subsets.
pub const SUBSET_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, Error)]
pub enum OracleError {
    #[error("word {0} lies outside the bounded universe")]
    OutsideUniverse(String),
    #[error("subset enumeration capped at 2^{SUBSET_ENUMERATION_CAP}; got {0} candidate words")]
    SizeCapExceeded(usize),
}

/// The explicit word set Σ^{≤ max_len} in length-then-lexicographic order.
#[derive(Clone, Debug)]
pub struct BoundedUniverse {
    alphabet: Alphabet,
    max_len: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl BoundedUniverse {
    pub fn new(alphabet: &Alphabet, max_len: usize) -> BoundedUniverse {
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for sym in 0..alphabet.len() {
                    let mut v = w.clone();
                    v.push(sym);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        BoundedUniverse { alphabet: alphabet.clone(), max_len, words, index }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &Word) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Membership-restricts a recognizer to this universe.
    pub fn restrict(&self, lang: &Lang) -> BTreeSet<Word> {
        self.words.iter().filter(|w| lang.contains(w)).cloned().collect()
    }

    fn to_indices(&self, words: &BTreeSet<Word>) -> Result<Vec<usize>, OracleError> {
        words
            .iter()
            .map(|w| {
                self.index_of(w)
                    .ok_or_else(|| OracleError::OutsideUniverse(self.alphabet.format_word(w)))
            })
            .collect()
    }
}

/// The language properties the oracle can decide by definition unfolding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// K = P⁻¹P(K) ∩ Lm(G).
    Normal,
    /// K̄Σuc* ∩ L(G) = K̄.
    Controllable,
    /// K = K̄ ∩ Lm(G).
    LClosed,
    /// K = K̄.
    PrefixClosed,
    /// K = \[K\]_I.
    TraceClosed,
    /// K̄ = P⁻¹P(K̄) ∩ L(G): normality of the prefix closure within the
    /// closed plant behavior. Needed to state the controllable-and-normal
    /// family; not implied by `Controllable` plus `Normal`.
    PrefixNormal,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Normal => "normal",
            Property::Controllable => "controllable",
            Property::LClosed => "l_closed",
            Property::PrefixClosed => "prefix_closed",
            Property::TraceClosed => "trace_closed",
            Property::PrefixNormal => "prefix_normal",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        match name {
            "normal" => Some(Property::Normal),
            "controllable" => Some(Property::Controllable),
            "l_closed" | "lclosed" => Some(Property::LClosed),
            "prefix_closed" => Some(Property::PrefixClosed),
            "trace_closed" => Some(Property::TraceClosed),
            "prefix_normal" => Some(Property::PrefixNormal),
            _ => None,
        }
    }
}

/// Outcome of a definition check: holds, or a violating word.
#[derive(Clone, Debug)]
pub struct DefinitionVerdict {
    pub holds: bool,
    pub witness: Option<Word>,
}

/// Per-problem data the property checks run on, all precomputed on strings.
struct Context {
    universe_len: usize,
    /// Indices of L(G) ∩ universe and Lm(G) ∩ universe.
    plant_closed: Vec<bool>,
    plant_marked: Vec<bool>,
    /// Projection of each universe word onto the observable symbols.
    projections: Vec<Word>,
    /// For each word, the index of its parent prefix (length - 1).
    parent: Vec<Option<usize>>,
    /// One-step uncontrollable extensions staying inside the universe.
    uc_successors: Vec<Vec<usize>>,
    /// Adjacent-independent-swap neighbors, when a relation is declared.
    swap_neighbors: Vec<Vec<usize>>,
}

impl Context {
    fn new(problem: &SynthesisProblem, universe: &BoundedUniverse) -> Context {
        let alphabet = universe.alphabet();
        let obs = alphabet.observable();
        let projections = universe
            .words()
            .iter()
            .map(|w| w.iter().copied().filter(|s| obs.contains(s)).collect())
            .collect();
        let parent = universe
            .words()
            .iter()
            .map(|w| {
                if w.is_empty() {
                    None
                } else {
                    universe.index_of(&w[..w.len() - 1].to_vec())
                }
            })
            .collect();
        let uc_successors = universe
            .words()
            .iter()
            .map(|w| {
                alphabet
                    .uncontrollable()
                    .iter()
                    .filter_map(|&sym| {
                        let mut v = w.clone();
                        v.push(sym);
                        universe.index_of(&v)
                    })
                    .collect()
            })
            .collect();
        let swap_neighbors = universe
            .words()
            .iter()
            .map(|w| match problem.independence() {
                None => Vec::new(),
                Some(rel) => (0..w.len().saturating_sub(1))
                    .filter(|&i| rel.independent(w[i], w[i + 1]))
                    .filter_map(|i| {
                        let mut v = w.clone();
                        v.swap(i, i + 1);
                        universe.index_of(&v)
                    })
                    .collect(),
            })
            .collect();
        Context {
            universe_len: universe.len(),
            plant_closed: membership_mask(problem.plant_closed(), universe),
            plant_marked: membership_mask(problem.plant_marked(), universe),
            projections,
            parent,
            uc_successors,
            swap_neighbors,
        }
    }

    fn prefix_set(&self, k: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.universe_len];
        for idx in (0..self.universe_len).filter(|&i| k[i]) {
            let mut at = Some(idx);
            while let Some(i) = at {
                if out[i] {
                    break;
                }
                out[i] = true;
                at = self.parent[i];
            }
        }
        out
    }

    /// K̄Σuc* ∩ L(G), grown one uncontrollable step at a time. The closed
    /// plant behavior is prefix-closed, so staying inside it never cuts a
    /// path to a longer member.
    fn uncontrollable_reach(&self, kbar: &[bool]) -> Vec<bool> {
        let mut out: Vec<bool> =
            (0..self.universe_len).map(|i| kbar[i] && self.plant_closed[i]).collect();
        let mut stack: Vec<usize> = (0..self.universe_len).filter(|&i| out[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &self.uc_successors[i] {
                if self.plant_closed[j] && !out[j] {
                    out[j] = true;
                    stack.push(j);
                }
            }
        }
        out
    }

    /// {w ∈ within : P(w) ∈ P(K)}.
    fn inverse_projection_image(&self, k: &[bool], within: &[bool]) -> Vec<bool> {
        let projected: HashSet<&Word> =
            (0..self.universe_len).filter(|&i| k[i]).map(|i| &self.projections[i]).collect();
        (0..self.universe_len)
            .map(|i| within[i] && projected.contains(&self.projections[i]))
            .collect()
    }

    fn trace_closure(&self, k: &[bool]) -> Vec<bool> {
        let mut out = k.to_vec();
        let mut stack: Vec<usize> = (0..self.universe_len).filter(|&i| out[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &self.swap_neighbors[i] {
                if !out[j] {
                    out[j] = true;
                    stack.push(j);
                }
            }
        }
        out
    }

    fn check(&self, k: &[bool], property: Property) -> Option<usize> {
        match property {
            Property::Normal => {
                let image = self.inverse_projection_image(k, &self.plant_marked);
                first_difference(k, &image)
            }
            Property::Controllable => {
                let kbar = self.prefix_set(k);
                let reach = self.uncontrollable_reach(&kbar);
                first_difference(&kbar, &reach)
            }
            Property::LClosed => {
                let kbar = self.prefix_set(k);
                let closed: Vec<bool> =
                    (0..self.universe_len).map(|i| kbar[i] && self.plant_marked[i]).collect();
                first_difference(k, &closed)
            }
            Property::PrefixClosed => {
                let kbar = self.prefix_set(k);
                first_difference(k, &kbar)
            }
            Property::TraceClosed => {
                let closed = self.trace_closure(k);
                first_difference(k, &closed)
            }
            Property::PrefixNormal => {
                let kbar = self.prefix_set(k);
                let image = self.inverse_projection_image(&kbar, &self.plant_closed);
                first_difference(&kbar, &image)
            }
        }
    }
}

fn membership_mask(lang: &Lang, universe: &BoundedUniverse) -> Vec<bool> {
    universe.words().iter().map(|w| lang.contains(w)).collect()
}

fn first_difference(a: &[bool], b: &[bool]) -> Option<usize> {
    (0..a.len()).find(|&i| a[i] != b[i])
}

/// Decides `property` for the explicit word set `k` by unfolding the
/// defining language equation inside `universe`. On failure the witness is
/// the first (shortest, then lexicographically smallest) violating word.
pub fn check_definition(
    k: &BTreeSet<Word>,
    problem: &SynthesisProblem,
    property: Property,
    universe: &BoundedUniverse,
) -> Result<DefinitionVerdict, OracleError> {
    let indices = universe.to_indices(k)?;
    let ctx = Context::new(problem, universe);
    let mut mask = vec![false; universe.len()];
    for i in indices {
        mask[i] = true;
    }
    Ok(match ctx.check(&mask, property) {
        None => DefinitionVerdict { holds: true, witness: None },
        Some(i) => DefinitionVerdict { holds: false, witness: Some(universe.words()[i].clone()) },
    })
}

/// The union of all subsets of `e` satisfying every requested property.
/// Each property family is union-closed, so the union is the supremal
/// element.
///
/// Subsets already inside the running union are skipped (they cannot enlarge
/// it); enumeration is capped at 2^20 subsets.
pub fn brute_force_supremal(
    e: &BTreeSet<Word>,
    problem: &SynthesisProblem,
    properties: &[Property],
    universe: &BoundedUniverse,
) -> Result<BTreeSet<Word>, OracleError> {
    if e.len() > SUBSET_ENUMERATION_CAP {
        return Err(OracleError::SizeCapExceeded(e.len()));
    }
    let members = universe.to_indices(e)?;
    let ctx = Context::new(problem, universe);
    let n = members.len();
    let mut union_mask: u32 = 0;
    let mut scratch = vec![false; universe.len()];
    // Descending order tries large subsets first, which makes the
    // union-subsumption skip effective when the supremal is large.
    for subset in (0u32..(1u32 << n)).rev() {
        if subset & !union_mask == 0 {
            continue;
        }
        scratch.iter_mut().for_each(|b| *b = false);
        for (bit, &word_idx) in members.iter().enumerate() {
            if subset & (1 << bit) != 0 {
                scratch[word_idx] = true;
            }
        }
        if properties.iter().all(|&p| ctx.check(&scratch, p).is_none()) {
            union_mask |= subset;
        }
    }
    Ok(members
        .iter()
        .enumerate()
        .filter(|(bit, _)| union_mask & (1 << bit) != 0)
        .map(|(_, &idx)| universe.words()[idx].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang_core::IndependenceRelation;

    fn lang(alphabet: &Alphabet, words: &[&str]) -> Lang {
        Lang::from_strs(alphabet, words).unwrap()
    }

    fn words(alphabet: &Alphabet, strs: &[&str]) -> BTreeSet<Word> {
        strs.iter().map(|s| alphabet.parse_word(s).unwrap()).collect()
    }

    fn controllable_problem() -> (Alphabet, SynthesisProblem, BoundedUniverse) {
        let a = Alphabet::new(&["a", "u"], &["a", "u"], &["u"]).unwrap();
        let plant = lang(&a, &["", "a", "u", "au"]);
        let p = SynthesisProblem::new(
            a.clone(),
            plant.clone(),
            plant,
            lang(&a, &["", "a"]),
            None,
            None,
        )
        .unwrap();
        let u = BoundedUniverse::new(&a, 2);
        (a, p, u)
    }

    #[test]
    fn universe_size_is_exact() {
        let a = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let u = BoundedUniverse::new(&a, 3);
        assert_eq!(u.len(), 1 + 3 + 9 + 27);
    }

    #[test]
    fn controllability_verdicts_and_witness() {
        let (a, p, u) = controllable_problem();
        let bad = check_definition(&words(&a, &["", "a"]), &p, Property::Controllable, &u).unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.witness, Some(a.parse_word("u").unwrap()));
        let good = check_definition(&words(&a, &[]), &p, Property::Controllable, &u).unwrap();
        assert!(good.holds);
    }

    #[test]
    fn worked_controllable_pair_is_controllable() {
        let a = Alphabet::new(&["a", "b", "u"], &["a", "b", "u"], &["u"]).unwrap();
        let plant = lang(&a, &["", "a", "b", "ab", "au"]);
        let p = SynthesisProblem::new(
            a.clone(),
            plant.clone(),
            plant,
            lang(&a, &["", "b"]),
            None,
            None,
        )
        .unwrap();
        let u = BoundedUniverse::new(&a, 2);
        let v = check_definition(&words(&a, &["", "b"]), &p, Property::Controllable, &u).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn prefix_closed_check() {
        let (a, p, u) = controllable_problem();
        assert!(
            check_definition(&words(&a, &["", "a"]), &p, Property::PrefixClosed, &u)
                .unwrap()
                .holds
        );
        assert!(
            !check_definition(&words(&a, &["a"]), &p, Property::PrefixClosed, &u).unwrap().holds
        );
    }

    #[test]
    fn brute_force_normal_instance() {
        let a = Alphabet::new(&["a", "b"], &["a"], &[]).unwrap();
        let p = SynthesisProblem::new(
            a.clone(),
            lang(&a, &["", "a", "b", "ab"]),
            lang(&a, &["a", "b", "ab"]),
            lang(&a, &["a", "b"]),
            None,
            None,
        )
        .unwrap();
        let u = BoundedUniverse::new(&a, 2);
        let sup =
            brute_force_supremal(&words(&a, &["a", "b"]), &p, &[Property::Normal], &u).unwrap();
        assert_eq!(sup, words(&a, &["b"]));
    }

    #[test]
    fn brute_force_degenerate_cases() {
        let (a, p, u) = controllable_problem();
        let e = words(&a, &["", "a"]);
        assert_eq!(brute_force_supremal(&e, &p, &[], &u).unwrap(), e);
        assert_eq!(
            brute_force_supremal(&BTreeSet::new(), &p, &[Property::Controllable], &u).unwrap(),
            BTreeSet::new()
        );
    }

    #[test]
    fn size_cap_is_enforced() {
        let a = Alphabet::uniform(&["a", "b"]).unwrap();
        let u = BoundedUniverse::new(&a, 5);
        let plant = Lang::universe(&a);
        let p = SynthesisProblem::new(
            a.clone(),
            plant.clone(),
            plant.clone(),
            plant,
            None,
            None,
        )
        .unwrap();
        let too_big: BTreeSet<Word> = u.words().iter().take(21).cloned().collect();
        assert!(matches!(
            brute_force_supremal(&too_big, &p, &[], &u),
            Err(OracleError::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn trace_closed_check_uses_relation() {
        let a = Alphabet::uniform(&["a", "b"]).unwrap();
        let rel = IndependenceRelation::new(&a, &[("a", "b")]).unwrap();
        let plant = Lang::universe(&a);
        let p = SynthesisProblem::new(
            a.clone(),
            plant.clone(),
            plant.clone(),
            plant,
            Some(rel),
            Some(2),
        )
        .unwrap();
        let u = BoundedUniverse::new(&a, 2);
        assert!(
            !check_definition(&words(&a, &["ab"]), &p, Property::TraceClosed, &u).unwrap().holds
        );
        assert!(
            check_definition(&words(&a, &["ab", "ba"]), &p, Property::TraceClosed, &u)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn words_outside_universe_are_rejected() {
        let (a, p, u) = controllable_problem();
        let long = words(&a, &["aaa"]);
        assert!(matches!(
            check_definition(&long, &p, Property::PrefixClosed, &u),
            Err(OracleError::OutsideUniverse(_))
        ));
    }
}
