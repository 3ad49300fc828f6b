use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::alphabet::{Alphabet, SymbolId, Word};
use super::dfa::{Dfa, Nfa};
use super::LangError;

/// How two languages over the same alphabet relate as sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRelation {
    Equal,
    /// Strictly contained in the other language.
    Subset,
    /// Strictly contains the other language.
    Superset,
    Incomparable,
}

/// A regular language value: a minimized, complete deterministic recognizer
/// over a declared alphabet, stored in canonical form.
///
/// Canonicality makes language equality a structural comparison, which is
/// what every fixed-point detection in the solvers relies on. All operations
/// are pure; values are immutable and cheap to share across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lang {
    alphabet: Arc<Alphabet>,
    dfa: Dfa,
}

impl Lang {
    fn wrap(alphabet: Arc<Alphabet>, dfa: Dfa) -> Lang {
        Lang { alphabet, dfa }
    }

    fn check_same_alphabet(&self, other: &Lang) -> Result<(), LangError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(LangError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            })
        }
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Lang {
        Lang::wrap(Arc::new(alphabet.clone()), Dfa::trivial(alphabet.len(), false))
    }

    /// The language containing only the empty word.
    pub fn epsilon(alphabet: &Alphabet) -> Lang {
        Lang::from_words(alphabet, std::iter::once(Vec::new())).expect("epsilon is always valid")
    }

    /// The full word set Σ*.
    pub fn universe(alphabet: &Alphabet) -> Lang {
        Lang::wrap(Arc::new(alphabet.clone()), Dfa::trivial(alphabet.len(), true))
    }

    /// The finite language of all words of length at most `n`.
    pub fn up_to_length(alphabet: &Alphabet, n: usize) -> Lang {
        Lang::wrap(Arc::new(alphabet.clone()), Dfa::up_to_length(alphabet.len(), n))
    }

    /// The finite language holding exactly `words`.
    pub fn from_words<I: IntoIterator<Item = Word>>(
        alphabet: &Alphabet,
        words: I,
    ) -> Result<Lang, LangError> {
        let words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if let Some(&bad) = w.iter().find(|&&s| s >= alphabet.len()) {
                return Err(LangError::UnknownSymbol(format!("#{bad}")));
            }
        }
        let dfa = Dfa::from_words(alphabet.len(), words.iter().map(|w| w.as_slice()));
        Ok(Lang::wrap(Arc::new(alphabet.clone()), dfa))
    }

    /// Convenience constructor parsing each word with
    /// [`Alphabet::parse_word`].
    pub fn from_strs<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<Lang, LangError> {
        let parsed: Result<Vec<Word>, _> =
            words.iter().map(|s| alphabet.parse_word(s.as_ref())).collect();
        Lang::from_words(alphabet, parsed?)
    }

    /// Builds a language from a raw complete transition table with initial
    /// state 0; `table[state * |Σ| + symbol]` is the successor. The table is
    /// canonicalized on entry. Panics on malformed dimensions.
    pub fn from_raw_table(alphabet: &Alphabet, accepting: Vec<bool>, table: Vec<usize>) -> Lang {
        let states = accepting.len();
        assert!(states > 0, "a complete recognizer needs at least one state");
        assert_eq!(table.len(), states * alphabet.len(), "table dimensions mismatch");
        assert!(table.iter().all(|&t| t < states), "transition target out of range");
        let dfa = Dfa { num_symbols: alphabet.len(), initial: 0, accepting, next: table };
        Lang::wrap(Arc::new(alphabet.clone()), dfa.canonicalize())
    }

    /// The Kleene star of the single-symbol language over `symbols`, i.e.
    /// all words using only those symbols (houses Σ_uc* and friends).
    pub fn star_of_symbols(alphabet: &Alphabet, symbols: &BTreeSet<SymbolId>) -> Result<Lang, LangError> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet.len()) {
            return Err(LangError::UnknownSymbol(format!("#{bad}")));
        }
        let singles: Vec<Word> = symbols.iter().map(|&s| vec![s]).collect();
        Lang::from_words(alphabet, singles)?.kleene_star()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    pub fn initial_state(&self) -> usize {
        self.dfa.initial
    }

    pub fn is_accepting_state(&self, state: usize) -> bool {
        self.dfa.accepting[state]
    }

    pub fn transition(&self, state: usize, symbol: SymbolId) -> usize {
        self.dfa.step(state, symbol)
    }

    pub fn contains(&self, word: &[SymbolId]) -> bool {
        debug_assert!(word.iter().all(|&s| s < self.alphabet.len()));
        self.dfa.accepts(word)
    }

    pub fn contains_str(&self, word: &str) -> Result<bool, LangError> {
        Ok(self.contains(&self.alphabet.parse_word(word)?))
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty_lang()
    }

    pub fn is_finite(&self) -> bool {
        self.dfa.is_finite_lang()
    }

    pub fn union(&self, other: &Lang) -> Result<Lang, LangError> {
        self.check_same_alphabet(other)?;
        Ok(Lang::wrap(self.alphabet.clone(), self.dfa.product(&other.dfa, |a, b| a || b)?))
    }

    pub fn intersect(&self, other: &Lang) -> Result<Lang, LangError> {
        self.check_same_alphabet(other)?;
        Ok(Lang::wrap(self.alphabet.clone(), self.dfa.product(&other.dfa, |a, b| a && b)?))
    }

    /// Set-theoretic difference `self \ other`.
    pub fn difference(&self, other: &Lang) -> Result<Lang, LangError> {
        self.check_same_alphabet(other)?;
        Ok(Lang::wrap(self.alphabet.clone(), self.dfa.product(&other.dfa, |a, b| a && !b)?))
    }

    /// Complement relative to Σ*.
    pub fn complement(&self) -> Lang {
        Lang::wrap(self.alphabet.clone(), self.dfa.complemented())
    }

    /// Language concatenation `{st | s ∈ self, t ∈ other}`.
    pub fn concat(&self, other: &Lang) -> Result<Lang, LangError> {
        self.check_same_alphabet(other)?;
        let n = self.dfa.num_states();
        let m = other.dfa.num_states();
        let mut nfa = Nfa::with_states(self.alphabet.len(), n + m);
        nfa.initials.push(self.dfa.initial);
        for s in 0..n {
            for sym in 0..self.alphabet.len() {
                nfa.moves[s][sym].push(self.dfa.step(s, sym));
            }
            if self.dfa.accepting[s] {
                nfa.eps[s].push(n + other.dfa.initial);
            }
        }
        for s in 0..m {
            nfa.accepting[n + s] = other.dfa.accepting[s];
            for sym in 0..self.alphabet.len() {
                nfa.moves[n + s][sym].push(n + other.dfa.step(s, sym));
            }
        }
        Ok(Lang::wrap(self.alphabet.clone(), nfa.determinize()?))
    }

    /// Smallest star-closed language containing this one and ε.
    pub fn kleene_star(&self) -> Result<Lang, LangError> {
        let n = self.dfa.num_states();
        let mut nfa = Nfa::with_states(self.alphabet.len(), n + 1);
        nfa.initials.push(n);
        nfa.accepting[n] = true;
        nfa.eps[n].push(self.dfa.initial);
        for s in 0..n {
            nfa.accepting[s] = self.dfa.accepting[s];
            for sym in 0..self.alphabet.len() {
                nfa.moves[s][sym].push(self.dfa.step(s, sym));
            }
            if self.dfa.accepting[s] {
                nfa.eps[s].push(self.dfa.initial);
            }
        }
        Ok(Lang::wrap(self.alphabet.clone(), nfa.determinize()?))
    }

    /// All prefixes of members: every state that can still reach an
    /// accepting one becomes accepting.
    pub fn prefix_closure(&self) -> Lang {
        let mut dfa = self.dfa.clone();
        dfa.accepting = dfa.co_reachable(None);
        Lang::wrap(self.alphabet.clone(), dfa.canonicalize())
    }

    /// Right quotient by `suffixes*`: the words extendable into the language
    /// by a (possibly empty) suffix drawn from the given symbols. Realized by
    /// accepting every state that reaches an accepting one through
    /// suffix-only transitions.
    pub fn right_quotient_star(&self, suffixes: &BTreeSet<SymbolId>) -> Result<Lang, LangError> {
        if let Some(&bad) = suffixes.iter().find(|&&s| s >= self.alphabet.len()) {
            return Err(LangError::UnknownSymbol(format!("#{bad}")));
        }
        let mask: Vec<bool> = (0..self.alphabet.len()).map(|s| suffixes.contains(&s)).collect();
        let mut dfa = self.dfa.clone();
        dfa.accepting = dfa.co_reachable(Some(&mask));
        Ok(Lang::wrap(self.alphabet.clone(), dfa.canonicalize()))
    }

    /// Natural projection: erase every symbol outside `onto`. The result
    /// lives over the projected alphabet (see [`Alphabet::project_onto`]).
    pub fn project(&self, onto: &BTreeSet<SymbolId>) -> Result<Lang, LangError> {
        let target = self.alphabet.project_onto(onto)?;
        let kept: Vec<SymbolId> =
            (0..self.alphabet.len()).filter(|id| onto.contains(id)).collect();
        let n = self.dfa.num_states();
        let mut nfa = Nfa::with_states(kept.len(), n);
        nfa.initials.push(self.dfa.initial);
        for s in 0..n {
            nfa.accepting[s] = self.dfa.accepting[s];
            for (new_sym, &old_sym) in kept.iter().enumerate() {
                nfa.moves[s][new_sym].push(self.dfa.step(s, old_sym));
            }
            for erased in (0..self.alphabet.len()).filter(|id| !onto.contains(id)) {
                nfa.eps[s].push(self.dfa.step(s, erased));
            }
        }
        Ok(Lang::wrap(Arc::new(target), nfa.determinize()?))
    }

    /// Inverse projection into `into`: all words over the full alphabet whose
    /// projection onto `into.observable()` lies in this language. Requires
    /// this language's alphabet to be exactly the observable part of `into`.
    /// Realized by adding self-loops on every unobservable symbol.
    pub fn inverse_project(&self, into: &Alphabet) -> Result<Lang, LangError> {
        let expected: Vec<&str> =
            into.observable().iter().map(|&id| into.symbol_name(id)).collect();
        let actual: Vec<&str> = self.alphabet.symbols().collect();
        if expected != actual {
            return Err(LangError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: format!("observable part of {into}"),
            });
        }
        let obs: Vec<SymbolId> = into.observable().iter().copied().collect();
        let n = self.dfa.num_states();
        let mut next = Vec::with_capacity(n * into.len());
        for s in 0..n {
            for sym in 0..into.len() {
                match obs.iter().position(|&o| o == sym) {
                    Some(small) => next.push(self.dfa.step(s, small)),
                    None => next.push(s),
                }
            }
        }
        let dfa = Dfa {
            num_symbols: into.len(),
            initial: self.dfa.initial,
            accepting: self.dfa.accepting.clone(),
            next,
        };
        Ok(Lang::wrap(Arc::new(into.clone()), dfa.canonicalize()))
    }

    /// Exact set comparison via product-automaton emptiness.
    pub fn compare(&self, other: &Lang) -> Result<SetRelation, LangError> {
        self.check_same_alphabet(other)?;
        let left_extra = !self.difference(other)?.is_empty();
        let right_extra = !other.difference(self)?.is_empty();
        Ok(match (left_extra, right_extra) {
            (false, false) => SetRelation::Equal,
            (false, true) => SetRelation::Subset,
            (true, false) => SetRelation::Superset,
            (true, true) => SetRelation::Incomparable,
        })
    }

    /// Non-strict inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Lang) -> Result<bool, LangError> {
        self.check_same_alphabet(other)?;
        Ok(self.difference(other)?.is_empty())
    }

    /// All members of length at most `max_len`, in length-then-lexicographic
    /// order (lexicographic by symbol index).
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let co = self.dfa.co_reachable(None);
        let mut out: Vec<Word> = Vec::new();
        if !co[self.dfa.initial] {
            return out;
        }
        let mut frontier: Vec<(usize, Word)> = vec![(self.dfa.initial, Vec::new())];
        for len in 0..=max_len {
            for (state, word) in &frontier {
                if self.dfa.accepting[*state] {
                    out.push(word.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next_frontier = Vec::new();
            for (state, word) in frontier {
                for sym in 0..self.alphabet.len() {
                    let to = self.dfa.step(state, sym);
                    if co[to] {
                        let mut w = word.clone();
                        w.push(sym);
                        next_frontier.push((to, w));
                    }
                }
            }
            frontier = next_frontier;
        }
        out
    }

    /// Like [`enumerate`](Lang::enumerate) but rendered with the alphabet.
    pub fn enumerate_strings(&self, max_len: usize) -> Vec<String> {
        self.enumerate(max_len).iter().map(|w| self.alphabet.format_word(w)).collect()
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lang[{} states over {}]", self.num_states(), self.alphabet)
    }
}
