//! Seeded random generation of languages and synthesis problems, used by the
//! validation suites and by the `axioms` command for sampling.

use std::collections::BTreeSet;

use rand::Rng;

use crate::lang_core::{Alphabet, IndependenceRelation, Lang, Word};
use crate::solvers::SynthesisProblem;

/// A random language as a uniformly random complete DFA with up to
/// `max_states` states, canonicalized. Small state counts already cover
/// everything from ∅ through Σ* with plenty of finite and cyclic languages
/// in between.
pub fn random_lang<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Lang {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut accepting = Vec::with_capacity(n);
    let mut table = Vec::with_capacity(n * alphabet.len());
    for _ in 0..n {
        accepting.push(rng.gen_bool(0.5));
        for _ in 0..alphabet.len() {
            table.push(rng.gen_range(0..n));
        }
    }
    Lang::from_raw_table(alphabet, accepting, table)
}

/// A random sublanguage of `carrier`.
pub fn random_sublang<R: Rng>(rng: &mut R, carrier: &Lang, max_states: usize) -> Lang {
    let raw = random_lang(rng, carrier.alphabet(), max_states);
    raw.intersect(carrier).expect("same alphabet by construction")
}

/// A random set of at most `max_count` words of length at most `max_len`.
pub fn random_word_set<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
    max_count: usize,
) -> BTreeSet<Word> {
    let count = rng.gen_range(0..=max_count);
    let mut words = BTreeSet::new();
    for _ in 0..count {
        let len = rng.gen_range(0..=max_len);
        let word: Word = (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect();
        words.insert(word);
    }
    words
}

/// A random alphabet of 1–3 symbols drawn from {a,b,c} with random
/// observable and uncontrollable subsets. With `controllables_observable`
/// the observable set is forced to cover every controllable symbol (the
/// standing assumption of the controllable-and-normal solver).
pub fn random_alphabet<R: Rng>(rng: &mut R, controllables_observable: bool) -> Alphabet {
    let pool = ["a", "b", "c"];
    let n = rng.gen_range(1..=3usize);
    let symbols: Vec<&str> = pool[..n].to_vec();
    let uncontrollable: Vec<&str> =
        symbols.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    let observable: Vec<&str> = symbols
        .iter()
        .copied()
        .filter(|s| {
            let controllable = !uncontrollable.contains(s);
            if controllables_observable && controllable {
                true
            } else {
                rng.gen_bool(0.6)
            }
        })
        .collect();
    Alphabet::new(&symbols, &observable, &uncontrollable).expect("pool symbols are valid")
}

/// A random independence relation over `alphabet`.
pub fn random_independence<R: Rng>(rng: &mut R, alphabet: &Alphabet) -> IndependenceRelation {
    let names: Vec<String> = alphabet.symbols().map(str::to_string).collect();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            if rng.gen_bool(0.5) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let borrowed: Vec<(&str, &str)> =
        pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    IndependenceRelation::new(alphabet, &borrowed).expect("pairs come from the alphabet")
}

/// A random synthesis problem whose languages all fit inside Σ^{≤bound} as
/// explicit word sets: L(G) is a prefix-closed subset, Lm(G) ⊆ L(G), and
/// E has at most `max_spec_words` members. Because the plant itself lies
/// inside the bounded universe, the oracle's bounded controllability check
/// is exact on these instances.
pub fn random_bounded_problem<R: Rng>(
    rng: &mut R,
    bound: usize,
    max_spec_words: usize,
    controllables_observable: bool,
) -> SynthesisProblem {
    let alphabet = random_alphabet(rng, controllables_observable);
    let seed_words = random_word_set(rng, &alphabet, bound, 6);
    let mut closed_words: BTreeSet<Word> = BTreeSet::new();
    closed_words.insert(Vec::new());
    for w in &seed_words {
        for l in 0..=w.len() {
            closed_words.insert(w[..l].to_vec());
        }
    }
    let marked_words: BTreeSet<Word> =
        closed_words.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    let mut spec_words = random_word_set(rng, &alphabet, bound, max_spec_words);
    while spec_words.len() > max_spec_words {
        let surplus = spec_words.iter().next().cloned().expect("non-empty");
        spec_words.remove(&surplus);
    }
    let plant_closed = Lang::from_words(&alphabet, closed_words).expect("valid words");
    let plant_marked = Lang::from_words(&alphabet, marked_words).expect("valid words");
    let spec = Lang::from_words(&alphabet, spec_words).expect("valid words");
    let independence = Some(random_independence(rng, &alphabet));
    SynthesisProblem::new(alphabet, plant_closed, plant_marked, spec, independence, Some(bound))
        .expect("construction satisfies the problem invariants")
}

/// A random synthesis problem over recognizers of up to `max_states` states:
/// L(G) is the prefix closure of a random language, Lm(G) and E are random
/// languages. Used by the formula-identity and scheme-agreement suites.
pub fn random_automata_problem<R: Rng>(
    rng: &mut R,
    max_states: usize,
    controllables_observable: bool,
) -> SynthesisProblem {
    let alphabet = random_alphabet(rng, controllables_observable);
    let plant_closed = random_lang(rng, &alphabet, max_states).prefix_closure();
    let plant_marked = random_lang(rng, &alphabet, max_states);
    let spec = random_lang(rng, &alphabet, max_states);
    let independence = Some(random_independence(rng, &alphabet));
    SynthesisProblem::new(alphabet, plant_closed, plant_marked, spec, independence, None)
        .expect("construction satisfies the problem invariants")
}

/// Sample pool for axiom checks: random sublanguages of the carrier plus the
/// canonical corner cases ∅ and the carrier itself.
pub fn axiom_samples<R: Rng>(
    rng: &mut R,
    carrier: &Lang,
    count: usize,
    max_states: usize,
) -> (Vec<Lang>, Vec<(Lang, Lang)>) {
    let mut samples = vec![Lang::empty(carrier.alphabet()), carrier.clone()];
    while samples.len() < count.max(2) {
        samples.push(random_sublang(rng, carrier, max_states));
    }
    let pairs = samples
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    (samples, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bounded_problems_fit_in_their_universe() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_bounded_problem(&mut rng, 3, 14, false);
            let horizon = Lang::up_to_length(p.alphabet(), 3);
            assert!(p.plant_closed().is_subset_of(&horizon).unwrap());
            assert!(p.plant_marked().is_subset_of(p.plant_closed()).unwrap());
            assert!(p.spec().is_subset_of(&horizon).unwrap());
        }
    }

    #[test]
    fn forced_observability_covers_controllables() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_alphabet(&mut rng, true);
            assert!(a.controllable_is_observable());
        }
    }

    #[test]
    fn random_langs_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Alphabet::uniform(&["a", "b"]).unwrap();
        for _ in 0..20 {
            let l = random_lang(&mut rng, &a, 5);
            // Canonical means re-canonicalizing through a round trip of
            // set operations is the identity.
            assert_eq!(l.union(&l).unwrap(), l);
        }
    }
}
