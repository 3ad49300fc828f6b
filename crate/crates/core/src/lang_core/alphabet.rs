use std::collections::BTreeSet;
use std::fmt;

use super::LangError;

/// Index of a symbol within an [`Alphabet`].
pub type SymbolId = usize;

/// A string over an alphabet, as a sequence of symbol indices. The empty
/// vector is the empty string.
pub type Word = Vec<SymbolId>;

/// A finite event alphabet with designated observable and uncontrollable
/// subsets.
///
/// Symbol order is fixed at construction and determines the canonical
/// ordering used everywhere else (transition tables, enumeration,
/// breadth-first state numbering). The controllable subset is always the
/// exact complement of the uncontrollable one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    observable: BTreeSet<SymbolId>,
    uncontrollable: BTreeSet<SymbolId>,
}

impl Alphabet {
    /// Builds an alphabet from symbol names plus observable and
    /// uncontrollable subsets given by name.
    ///
    /// An empty symbol list is accepted so degenerate cases stay testable;
    /// synthesis problems reject it separately.
    pub fn new<S: AsRef<str>>(
        symbols: &[S],
        observable: &[S],
        uncontrollable: &[S],
    ) -> Result<Alphabet, LangError> {
        let names: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(LangError::UnknownSymbol(String::from("<empty>")));
            }
            if names[..i].contains(a) {
                return Err(LangError::DuplicateSymbol(a.clone()));
            }
        }
        let lookup = |wanted: &[S]| -> Result<BTreeSet<SymbolId>, LangError> {
            wanted
                .iter()
                .map(|w| {
                    names
                        .iter()
                        .position(|n| n == w.as_ref())
                        .ok_or_else(|| LangError::UnknownSymbol(w.as_ref().to_string()))
                })
                .collect()
        };
        Ok(Alphabet {
            observable: lookup(observable)?,
            uncontrollable: lookup(uncontrollable)?,
            symbols: names,
        })
    }

    /// Alphabet where every symbol is observable and controllable.
    pub fn uniform<S: AsRef<str>>(symbols: &[S]) -> Result<Alphabet, LangError> {
        let mut a = Alphabet::new(symbols, &[], &[])?;
        a.observable = (0..a.symbols.len()).collect();
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol_name(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn observable(&self) -> &BTreeSet<SymbolId> {
        &self.observable
    }

    pub fn uncontrollable(&self) -> &BTreeSet<SymbolId> {
        &self.uncontrollable
    }

    /// The controllable subset, derived as the exact complement of the
    /// uncontrollable one.
    pub fn controllable(&self) -> BTreeSet<SymbolId> {
        (0..self.symbols.len())
            .filter(|id| !self.uncontrollable.contains(id))
            .collect()
    }

    pub fn is_fully_observable(&self) -> bool {
        self.observable.len() == self.symbols.len()
    }

    /// Whether every controllable symbol is observable.
    pub fn controllable_is_observable(&self) -> bool {
        self.controllable().iter().all(|id| self.observable.contains(id))
    }

    /// Resolves a set of symbol names to ids.
    pub fn ids_of<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<SymbolId>, LangError> {
        names
            .iter()
            .map(|n| {
                self.symbol_id(n.as_ref())
                    .ok_or_else(|| LangError::UnknownSymbol(n.as_ref().to_string()))
            })
            .collect()
    }

    /// The derived alphabet of a projection onto `onto`: symbols keep their
    /// original relative order, the observable/uncontrollable subsets are the
    /// intersections with `onto`.
    pub fn project_onto(&self, onto: &BTreeSet<SymbolId>) -> Result<Alphabet, LangError> {
        if let Some(&bad) = onto.iter().find(|&&id| id >= self.symbols.len()) {
            return Err(LangError::UnknownSymbol(format!("#{bad}")));
        }
        let kept: Vec<SymbolId> = (0..self.symbols.len()).filter(|id| onto.contains(id)).collect();
        let renumber = |set: &BTreeSet<SymbolId>| -> BTreeSet<SymbolId> {
            kept.iter()
                .enumerate()
                .filter(|(_, old)| set.contains(old))
                .map(|(new, _)| new)
                .collect()
        };
        Ok(Alphabet {
            observable: renumber(&self.observable),
            uncontrollable: renumber(&self.uncontrollable),
            symbols: kept.iter().map(|&id| self.symbols[id].clone()).collect(),
        })
    }

    /// Parses a word. Multi-symbol words may separate symbols with spaces or
    /// dots; when every alphabet symbol is a single character an undelimited
    /// string is split per character. `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word, LangError> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Vec::new());
        }
        let tokens: Vec<&str> = if s.contains(|c: char| c.is_whitespace() || c == '.') {
            s.split(|c: char| c.is_whitespace() || c == '.')
                .filter(|t| !t.is_empty())
                .collect()
        } else if self.symbols.iter().all(|sym| sym.chars().count() == 1) {
            return s
                .chars()
                .map(|c| {
                    self.symbol_id(&c.to_string())
                        .ok_or_else(|| LangError::UnknownSymbol(c.to_string()))
                })
                .collect();
        } else {
            vec![s]
        };
        tokens
            .iter()
            .map(|t| self.symbol_id(t).ok_or_else(|| LangError::UnknownSymbol(t.to_string())))
            .collect()
    }

    /// Renders a word.  Symbols are joined directly when all are single
    /// characters, otherwise with dots; the empty word renders as `ε`.
    pub fn format_word(&self, word: &[SymbolId]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) { "" } else { "." };
        word.iter()
            .map(|&id| self.symbols[id].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

/// An irreflexive, symmetric relation on alphabet symbols. Pairs are stored
/// unordered, so symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceRelation {
    alphabet: Alphabet,
    pairs: BTreeSet<(SymbolId, SymbolId)>,
}

impl IndependenceRelation {
    pub fn new<S: AsRef<str>>(
        alphabet: &Alphabet,
        pairs: &[(S, S)],
    ) -> Result<IndependenceRelation, LangError> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let ia = alphabet
                .symbol_id(a.as_ref())
                .ok_or_else(|| LangError::UnknownSymbol(a.as_ref().to_string()))?;
            let ib = alphabet
                .symbol_id(b.as_ref())
                .ok_or_else(|| LangError::UnknownSymbol(b.as_ref().to_string()))?;
            if ia == ib {
                return Err(LangError::ReflexivePair(a.as_ref().to_string()));
            }
            set.insert((ia.min(ib), ia.max(ib)));
        }
        Ok(IndependenceRelation { alphabet: alphabet.clone(), pairs: set })
    }

    pub fn empty(alphabet: &Alphabet) -> IndependenceRelation {
        IndependenceRelation { alphabet: alphabet.clone(), pairs: BTreeSet::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn independent(&self, a: SymbolId, b: SymbolId) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (SymbolId, SymbolId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}
