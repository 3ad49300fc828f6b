//! Complete deterministic transition tables and the canonicalization,
//! product and subset constructions behind [`Lang`](super::Lang).

use std::collections::{HashMap, VecDeque};
use std::collections::BTreeSet;

use super::{state_budget, LangError};

/// A complete DFA over symbols `0..num_symbols`. Every state has exactly one
/// successor per symbol; rejection is modeled by non-accepting sink states.
///
/// A canonical table is minimized, trimmed to reachable states and numbered
/// breadth-first from the initial state with symbols taken in index order.
/// Two canonical tables recognize the same language iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Dfa {
    pub num_symbols: usize,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// Row-major: `next[state * num_symbols + symbol]`.
    pub next: Vec<usize>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn step(&self, state: usize, sym: usize) -> usize {
        self.next[state * self.num_symbols + sym]
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |s, &sym| self.step(s, sym))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(word)]
    }

    /// Single-state automaton: accepts nothing (`accept = false`) or
    /// everything (`accept = true`).
    pub fn trivial(num_symbols: usize, accept: bool) -> Dfa {
        Dfa { num_symbols, initial: 0, accepting: vec![accept], next: vec![0; num_symbols] }
    }

    /// Accepts exactly the words of length at most `n`.
    pub fn up_to_length(num_symbols: usize, n: usize) -> Dfa {
        // States 0..=n count the length; state n+1 is the sink.
        let states = n + 2;
        let mut next = vec![0; states * num_symbols.max(1)];
        if num_symbols > 0 {
            for s in 0..states {
                let to = if s < n { s + 1 } else { n + 1 };
                for sym in 0..num_symbols {
                    next[s * num_symbols + sym] = to;
                }
            }
            next.truncate(states * num_symbols);
        } else {
            next.clear();
        }
        let mut accepting = vec![true; states];
        accepting[n + 1] = false;
        Dfa { num_symbols, initial: 0, accepting, next }.canonicalize()
    }

    /// Builds the minimal acceptor of an explicit finite word set via a trie
    /// completed with a sink.
    pub fn from_words<'a, I: IntoIterator<Item = &'a [usize]>>(num_symbols: usize, words: I) -> Dfa {
        // Node 0 is the root; usize::MAX marks missing edges until completion.
        let mut nodes: Vec<(Vec<usize>, bool)> = vec![(vec![usize::MAX; num_symbols], false)];
        for word in words {
            let mut at = 0usize;
            for &sym in word {
                let to = nodes[at].0[sym];
                at = if to == usize::MAX {
                    nodes.push((vec![usize::MAX; num_symbols], false));
                    let id = nodes.len() - 1;
                    nodes[at].0[sym] = id;
                    id
                } else {
                    to
                };
            }
            nodes[at].1 = true;
        }
        let sink = nodes.len();
        let mut accepting: Vec<bool> = nodes.iter().map(|n| n.1).collect();
        accepting.push(false);
        let mut next = Vec::with_capacity((sink + 1) * num_symbols);
        for (edges, _) in &nodes {
            for &to in edges {
                next.push(if to == usize::MAX { sink } else { to });
            }
        }
        next.extend(std::iter::repeat_n(sink, num_symbols));
        Dfa { num_symbols, initial: 0, accepting, next }.canonicalize()
    }

    /// Complement relative to the full word set (flip accepting; the table is
    /// complete so this is exact).
    pub fn complemented(&self) -> Dfa {
        let mut d = self.clone();
        for a in &mut d.accepting {
            *a = !*a;
        }
        d.canonicalize()
    }

    /// Synchronous product; `keep` combines acceptance of the two factors.
    pub fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa, LangError> {
        debug_assert_eq!(self.num_symbols, other.num_symbols);
        let budget = state_budget();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert((self.initial, other.initial), 0);
        order.push((self.initial, other.initial));
        queue.push_back((self.initial, other.initial));
        let mut next = Vec::new();
        let mut accepting = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            accepting.push(keep(self.accepting[p], other.accepting[q]));
            for sym in 0..self.num_symbols {
                let to = (self.step(p, sym), other.step(q, sym));
                let id = match ids.get(&to) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        if id >= budget {
                            return Err(LangError::StateBudgetExceeded { limit: budget });
                        }
                        ids.insert(to, id);
                        order.push(to);
                        queue.push_back(to);
                        id
                    }
                };
                next.push(id);
            }
        }
        Ok(Dfa { num_symbols: self.num_symbols, initial: 0, accepting, next }.canonicalize())
    }

    /// States from which an accepting state is reachable, optionally
    /// restricted to edges labeled by `via`.
    pub fn co_reachable(&self, via: Option<&[bool]>) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for sym in 0..self.num_symbols {
                if via.is_none_or(|mask| mask[sym]) {
                    rev[self.step(s, sym)].push(s);
                }
            }
        }
        let mut seen: Vec<bool> = self.accepting.clone();
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&s| self.accepting[s]).collect();
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub fn is_empty_lang(&self) -> bool {
        !self.co_reachable(None)[self.initial]
    }

    /// True when the accepted language is a finite set: no cycle lies on a
    /// path from the initial state to an accepting state.
    pub fn is_finite_lang(&self) -> bool {
        let co = self.co_reachable(None);
        let n = self.num_states();
        let mut reach = vec![false; n];
        let mut stack = vec![self.initial];
        reach[self.initial] = true;
        while let Some(s) = stack.pop() {
            for sym in 0..self.num_symbols {
                let t = self.step(s, sym);
                if !reach[t] {
                    reach[t] = true;
                    stack.push(t);
                }
            }
        }
        // Cycle detection over useful states only.
        let useful: Vec<bool> = (0..n).map(|s| reach[s] && co[s]).collect();
        let mut color = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        for start in (0..n).filter(|&s| useful[s]) {
            if color[start] != 0 {
                continue;
            }
            // Iterative DFS with an explicit edge cursor.
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            color[start] = 1;
            while let Some(&mut (s, cursor)) = stack.last_mut() {
                if cursor == self.num_symbols {
                    color[s] = 2;
                    stack.pop();
                    continue;
                }
                stack.last_mut().unwrap().1 += 1;
                let t = self.step(s, cursor);
                if !useful[t] {
                    continue;
                }
                match color[t] {
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Trim to reachable states, merge indistinguishable ones, and renumber
    /// breadth-first. The result is the unique canonical form.
    pub fn canonicalize(&self) -> Dfa {
        if self.num_symbols == 0 {
            return Dfa {
                num_symbols: 0,
                initial: 0,
                accepting: vec![self.accepting[self.initial]],
                next: Vec::new(),
            };
        }
        // 1. Reachable states.
        let mut reach_order = vec![self.initial];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut head = 0;
        while head < reach_order.len() {
            let s = reach_order[head];
            head += 1;
            for sym in 0..self.num_symbols {
                let t = self.step(s, sym);
                if !seen[t] {
                    seen[t] = true;
                    reach_order.push(t);
                }
            }
        }
        // 2. Partition refinement on reachable states (Moore). Each round
        // refines the previous partition, so the block count is
        // non-decreasing and stability is exactly "count unchanged".
        let mut block: HashMap<usize, usize> =
            reach_order.iter().map(|&s| (s, usize::from(self.accepting[s]))).collect();
        let mut block_count = block.values().collect::<std::collections::HashSet<_>>().len();
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut new_block: HashMap<usize, usize> = HashMap::new();
            for &s in &reach_order {
                let mut sig = Vec::with_capacity(self.num_symbols + 1);
                sig.push(block[&s]);
                for sym in 0..self.num_symbols {
                    sig.push(block[&self.step(s, sym)]);
                }
                let fresh = sig_ids.len();
                let id = *sig_ids.entry(sig).or_insert(fresh);
                new_block.insert(s, id);
            }
            let stable = sig_ids.len() == block_count;
            block_count = sig_ids.len();
            block = new_block;
            if stable {
                break;
            }
        }
        // 3. Breadth-first renumbering of blocks from the initial block.
        let rep: HashMap<usize, usize> = {
            // One representative state per block (first in reach order).
            let mut rep = HashMap::new();
            for &s in &reach_order {
                rep.entry(block[&s]).or_insert(s);
            }
            rep
        };
        let mut canon_of_block: HashMap<usize, usize> = HashMap::new();
        let mut order: Vec<usize> = Vec::new(); // representative state per canonical id
        canon_of_block.insert(block[&self.initial], 0);
        order.push(rep[&block[&self.initial]]);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for sym in 0..self.num_symbols {
                let b = block[&self.step(s, sym)];
                if let std::collections::hash_map::Entry::Vacant(e) = canon_of_block.entry(b) {
                    e.insert(order.len());
                    order.push(rep[&b]);
                }
            }
        }
        let mut next = Vec::with_capacity(order.len() * self.num_symbols);
        let mut accepting = Vec::with_capacity(order.len());
        for &s in &order {
            accepting.push(self.accepting[s]);
            for sym in 0..self.num_symbols {
                next.push(canon_of_block[&block[&self.step(s, sym)]]);
            }
        }
        Dfa { num_symbols: self.num_symbols, initial: 0, accepting, next }
    }
}

/// Nondeterministic automaton with epsilon moves, used as scaffolding for
/// concatenation, star and projection before determinization.
pub(crate) struct Nfa {
    pub num_symbols: usize,
    pub initials: Vec<usize>,
    pub accepting: Vec<bool>,
    /// `moves[state][symbol]` lists target states.
    pub moves: Vec<Vec<Vec<usize>>>,
    pub eps: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn with_states(num_symbols: usize, states: usize) -> Nfa {
        Nfa {
            num_symbols,
            initials: Vec::new(),
            accepting: vec![false; states],
            moves: vec![vec![Vec::new(); num_symbols]; states],
            eps: vec![Vec::new(); states],
        }
    }

    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction. The empty subset is the sink, created on demand.
    pub fn determinize(&self) -> Result<Dfa, LangError> {
        let budget = state_budget();
        let mut start: BTreeSet<usize> = self.initials.iter().copied().collect();
        self.eps_closure(&mut start);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut order: Vec<BTreeSet<usize>> = Vec::new();
        ids.insert(start.clone(), 0);
        order.push(start);
        let mut next: Vec<usize> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let current = order[head].clone();
            head += 1;
            accepting.push(current.iter().any(|&s| self.accepting[s]));
            for sym in 0..self.num_symbols {
                let mut to: BTreeSet<usize> = BTreeSet::new();
                for &s in &current {
                    to.extend(self.moves[s][sym].iter().copied());
                }
                self.eps_closure(&mut to);
                let id = match ids.get(&to) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        if id >= budget {
                            return Err(LangError::StateBudgetExceeded { limit: budget });
                        }
                        ids.insert(to.clone(), id);
                        order.push(to);
                        id
                    }
                };
                next.push(id);
            }
        }
        Ok(Dfa { num_symbols: self.num_symbols, initial: 0, accepting, next }.canonicalize())
    }
}
