//! DOT rendering of result automata. Accepting states are double circles,
//! the initial state is marked by an incoming point-shaped pseudo-node, and
//! parallel edges are merged into one comma-separated label. The styling is
//! fixed so emitted graphs diff cleanly.

use std::fmt::Write;

use suprema_core::Lang;

pub fn render(lang: &Lang, name: &str) -> String {
    let alphabet = lang.alphabet();
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "    rankdir=LR;").unwrap();
    writeln!(out, "    node [shape=circle];").unwrap();
    writeln!(out, "    __initial [shape=point, label=\"\"];").unwrap();
    for state in 0..lang.num_states() {
        let shape = if lang.is_accepting_state(state) { "doublecircle" } else { "circle" };
        writeln!(out, "    s{state} [shape={shape}];").unwrap();
    }
    writeln!(out, "    __initial -> s{};", lang.initial_state()).unwrap();
    for from in 0..lang.num_states() {
        // One edge per target, labels merged in symbol order.
        for to in 0..lang.num_states() {
            let labels: Vec<&str> = (0..alphabet.len())
                .filter(|&sym| lang.transition(from, sym) == to)
                .map(|sym| alphabet.symbol_name(sym))
                .collect();
            if !labels.is_empty() {
                writeln!(out, "    s{from} -> s{to} [label=\"{}\"];", labels.join(",")).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
