use std::collections::BTreeSet;

use super::alphabet::{IndependenceRelation, Word};

/// Exact trace closure of an explicit finite word set: the closure of each
/// word under single swaps of adjacent independent symbols, iterated to a
/// fixed point. Swapping preserves length, so the result stays inside the
/// same bounded universe; `max_len` documents that universe and is asserted.
pub fn trace_closure_bounded(
    words: &BTreeSet<Word>,
    relation: &IndependenceRelation,
    max_len: usize,
) -> BTreeSet<Word> {
    assert!(
        words.iter().all(|w| w.len() <= max_len),
        "trace_closure_bounded: input word longer than the declared bound"
    );
    let mut closed: BTreeSet<Word> = words.clone();
    let mut frontier: Vec<Word> = words.iter().cloned().collect();
    while let Some(word) = frontier.pop() {
        for i in 0..word.len().saturating_sub(1) {
            if relation.independent(word[i], word[i + 1]) {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                if closed.insert(swapped.clone()) {
                    frontier.push(swapped);
                }
            }
        }
    }
    closed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang_core::Alphabet;

    fn words(alphabet: &Alphabet, strs: &[&str]) -> BTreeSet<Word> {
        strs.iter().map(|s| alphabet.parse_word(s).unwrap()).collect()
    }

    #[test]
    fn irreflexivity_forbids_swapping_equal_symbols() {
        let a = Alphabet::uniform(&["a", "b"]).unwrap();
        let i = IndependenceRelation::new(&a, &[("a", "b")]).unwrap();
        assert_eq!(trace_closure_bounded(&words(&a, &["aa"]), &i, 2), words(&a, &["aa"]));
    }

    #[test]
    fn single_swap_pair() {
        let a = Alphabet::uniform(&["a", "b"]).unwrap();
        let i = IndependenceRelation::new(&a, &[("a", "b")]).unwrap();
        assert_eq!(trace_closure_bounded(&words(&a, &["ab"]), &i, 2), words(&a, &["ab", "ba"]));
    }

    #[test]
    fn chained_swaps_reach_only_adjacent_permutations() {
        // {abc} with (a,b),(b,c) independent: bac and acb are one swap away,
        // but bca and cab are not reachable because (a,c) stays dependent.
        let a = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let i = IndependenceRelation::new(&a, &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            trace_closure_bounded(&words(&a, &["abc"]), &i, 3),
            words(&a, &["abc", "bac", "acb"])
        );
    }

    #[test]
    fn closure_is_a_fixed_point() {
        let a = Alphabet::uniform(&["a", "b", "c"]).unwrap();
        let i = IndependenceRelation::new(&a, &[("a", "b"), ("a", "c")]).unwrap();
        let once = trace_closure_bounded(&words(&a, &["abc", "cb", "ca"]), &i, 3);
        assert_eq!(trace_closure_bounded(&once, &i, 3), once);
    }
}
