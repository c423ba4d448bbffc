//! Finite-state automata over an alphabet of strings extended with the
//! unknown-string symbol `⊤`.
//!
//! Two views of the same automaton are used throughout the crate:
//!
//! * the *symbol-atomic* view, where every [`Symbol`] (including `⊤`) is an
//!   opaque letter. Canonicalization ([`Automaton::determinize_minimize`]) and
//!   the widening operate on this view.
//! * the *flattened* view, where `Str` labels are spelled out character by
//!   character and `⊤` becomes a loop over every character. Language
//!   inclusion, emptiness of intersections and membership are decided there,
//!   so they agree with the concretization of the automaton.
//!
//! In the flattened view the reserved character [`FRESH`] stands for "any
//! character that does not occur in the automata being compared". This keeps
//! the alphabet finite while keeping the decisions exact.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

mod charview;
mod minimize;
mod ops;
mod paths;
mod widen;

pub use charview::Matcher;
pub use paths::Path;

/// Index of a state inside an [`Automaton`].
pub type StateId = usize;

/// Placeholder character used by flattened automata for characters that do
/// not occur in any of the automata involved in a decision.
pub const FRESH: char = '\u{E000}';

/// Errors raised by automata operations with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error("state {state} is outside 0..{num_states}")]
    InvalidState { state: StateId, num_states: usize },
    #[error("operation requires an acyclic automaton")]
    CyclicAutomaton,
    #[error("automaton recognizes the empty language")]
    EmptyLanguage,
}

/// A letter of the automata alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// A nonempty string. The empty string is never a symbol.
    Str(String),
    /// Any possible string, `⊤`.
    Top,
}

impl Symbol {
    /// Builds a `Str` symbol.
    ///
    /// Panics if `text` is empty.
    pub fn text(text: impl Into<String>) -> Symbol {
        let text = text.into();
        assert!(!text.is_empty(), "string symbols are never empty");
        Symbol::Str(text)
    }

    pub fn char(c: char) -> Symbol {
        let mut s = String::new();
        s.push(c);
        Symbol::Str(s)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Symbol::Top)
    }

    /// Number of characters of a `Str` payload; `⊤` counts as zero.
    pub fn min_len(&self) -> usize {
        match self {
            Symbol::Str(s) => s.chars().count(),
            Symbol::Top => 0,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Str(s) => f.write_str(s),
            Symbol::Top => f.write_str("\u{22A4}"),
        }
    }
}

/// Transition label: a symbol, or an epsilon move.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Epsilon,
    Sym(Symbol),
}

impl Label {
    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Label::Epsilon => None,
            Label::Sym(s) => Some(s),
        }
    }
}

impl From<Symbol> for Label {
    fn from(s: Symbol) -> Label {
        Label::Sym(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub label: Label,
    pub to: StateId,
}

impl Transition {
    pub fn new(from: StateId, label: impl Into<Label>, to: StateId) -> Transition {
        Transition {
            from,
            label: label.into(),
            to,
        }
    }

    pub fn epsilon(from: StateId, to: StateId) -> Transition {
        Transition {
            from,
            label: Label::Epsilon,
            to,
        }
    }
}

/// A finite-state automaton `⟨Q, 𝔸, δ, q₀, F⟩` with states `0..num_states`.
///
/// Values are immutable once built. Structural equality is meaningful for
/// canonical automata (the output of [`Automaton::determinize_minimize`]),
/// whose states are numbered in breadth-first order from the initial state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automaton {
    num_states: usize,
    initial: StateId,
    finals: BTreeSet<StateId>,
    transitions: BTreeSet<Transition>,
}

impl Automaton {
    /// Builds an automaton, checking that every referenced state exists.
    pub fn new(
        num_states: usize,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Automaton, AutomatonError> {
        let finals: BTreeSet<StateId> = finals.into_iter().collect();
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        let check = |state: StateId| {
            if state < num_states {
                Ok(())
            } else {
                Err(AutomatonError::InvalidState { state, num_states })
            }
        };
        check(initial)?;
        for &f in &finals {
            check(f)?;
        }
        for t in &transitions {
            check(t.from)?;
            check(t.to)?;
        }
        Ok(Automaton {
            num_states,
            initial,
            finals,
            transitions,
        })
    }

    pub(crate) fn from_parts(
        num_states: usize,
        initial: StateId,
        finals: BTreeSet<StateId>,
        transitions: BTreeSet<Transition>,
    ) -> Automaton {
        debug_assert!(initial < num_states);
        debug_assert!(finals.iter().all(|&f| f < num_states));
        debug_assert!(transitions
            .iter()
            .all(|t| t.from < num_states && t.to < num_states));
        Automaton {
            num_states,
            initial,
            finals,
            transitions,
        }
    }

    /// The automaton recognizing the empty language (the bottom element).
    pub fn empty() -> Automaton {
        Automaton::from_parts(1, 0, BTreeSet::new(), BTreeSet::new())
    }

    /// The automaton recognizing only the empty string.
    pub fn epsilon() -> Automaton {
        Automaton::from_parts(1, 0, BTreeSet::from([0]), BTreeSet::new())
    }

    /// `minimize({⊤})`: concretizes to every string.
    pub fn top() -> Automaton {
        Automaton::from_symbols(&[Symbol::Top])
    }

    /// A chain reading exactly the given symbol string.
    pub fn from_symbols(symbols: &[Symbol]) -> Automaton {
        let transitions = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| Transition::new(i, s.clone(), i + 1))
            .collect();
        Automaton::from_parts(
            symbols.len() + 1,
            0,
            BTreeSet::from([symbols.len()]),
            transitions,
        )
    }

    /// Canonical automaton accepting exactly `strings`, each spelled as a
    /// chain of single-character symbols.
    pub fn from_strings<I, S>(strings: I) -> Automaton
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Automaton::from_symbol_strings(
            strings
                .into_iter()
                .map(|s| s.as_ref().chars().map(Symbol::char).collect::<Vec<_>>()),
        )
    }

    /// Canonical automaton accepting exactly the given symbol strings.
    pub fn from_symbol_strings<I>(words: I) -> Automaton
    where
        I: IntoIterator<Item = Vec<Symbol>>,
    {
        // a trie, minimized afterwards
        let mut children: Vec<BTreeMap<Symbol, StateId>> = vec![BTreeMap::new()];
        let mut finals = BTreeSet::new();
        for word in words {
            let mut state = 0;
            for sym in word {
                let next = children.len();
                state = *children[state].entry(sym).or_insert(next);
                if state == next {
                    children.push(BTreeMap::new());
                }
            }
            finals.insert(state);
        }
        let transitions = children
            .iter()
            .enumerate()
            .flat_map(|(from, succ)| {
                succ.iter()
                    .map(move |(s, &to)| Transition::new(from, s.clone(), to))
            })
            .collect();
        Automaton::from_parts(children.len(), 0, finals, transitions).determinize_minimize()
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals.contains(&state)
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label == Label::Epsilon)
    }

    /// Outgoing transitions per state.
    pub(crate) fn successors(&self) -> Vec<Vec<(&Label, StateId)>> {
        let mut succ = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            succ[t.from].push((&t.label, t.to));
        }
        succ
    }

    /// Every character occurring in a `Str` label.
    pub fn chars(&self) -> BTreeSet<char> {
        let mut chars = BTreeSet::new();
        for t in &self.transitions {
            if let Label::Sym(Symbol::Str(s)) = &t.label {
                chars.extend(s.chars());
            }
        }
        chars
    }

    /// Distinct symbols on transitions, in symbol order.
    pub fn symbols(&self) -> BTreeSet<&Symbol> {
        self.transitions
            .iter()
            .filter_map(|t| t.label.symbol())
            .collect()
    }

    fn reachable(&self) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.num_states];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for &(_, to) in &succ[q] {
                if !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let mut pred = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            pred[t.to].push(t.from);
        }
        let mut seen = vec![false; self.num_states];
        let mut queue: VecDeque<StateId> = self.finals.iter().copied().collect();
        for &f in &self.finals {
            seen[f] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &pred[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Keeps only states that are both reachable and co-reachable. The
    /// result of trimming an empty-language automaton is [`Automaton::empty`].
    pub fn trim(&self) -> Automaton {
        let reach = self.reachable();
        let coreach = self.coreachable();
        let live: Vec<bool> = reach.iter().zip(&coreach).map(|(a, b)| *a && *b).collect();
        if !live[self.initial] {
            return Automaton::empty();
        }
        self.restrict(&live)
    }

    /// Keeps the states flagged in `keep` (which must include the initial
    /// state), renumbering them in increasing order.
    fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut renumber = vec![usize::MAX; self.num_states];
        let mut next = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                renumber[q] = next;
                next += 1;
            }
        }
        let finals = self
            .finals
            .iter()
            .filter(|&&f| keep[f])
            .map(|&f| renumber[f])
            .collect();
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.from] && keep[t.to])
            .map(|t| Transition {
                from: renumber[t.from],
                label: t.label.clone(),
                to: renumber[t.to],
            })
            .collect();
        Automaton::from_parts(next, renumber[self.initial], finals, transitions)
    }

    /// True iff no final state is reachable from the initial state.
    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !self.finals.iter().any(|&f| reach[f])
    }

    /// Copies the states and transitions of `other` into `self`, returning
    /// the offset added to `other`'s state ids.
    pub(crate) fn embed(
        transitions: &mut BTreeSet<Transition>,
        next_state: &mut usize,
        other: &Automaton,
    ) -> usize {
        let offset = *next_state;
        *next_state += other.num_states;
        transitions.extend(other.transitions.iter().map(|t| Transition {
            from: t.from + offset,
            label: t.label.clone(),
            to: t.to + offset,
        }));
        offset
    }

    /// Graphviz rendering, for debugging.
    pub fn to_dot(&self) -> String {
        use core::fmt::Write;
        let mut out =
            String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
        for q in 0..self.num_states {
            let shape = if self.is_final(q) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  __start -> q{};", self.initial);
        for t in &self.transitions {
            let label = match &t.label {
                Label::Epsilon => String::from("\u{03B5}"),
                Label::Sym(s) => alloc::format!("{s}")
                    .replace('\\', "\\\\")
                    .replace('"', "\\\""),
            };
            let _ = writeln!(out, "  q{} -> q{} [label=\"{}\"];", t.from, t.to, label);
        }
        out.push_str("}\n");
        out
    }
}

/// The program alphabet: every substring of the string constants of a
/// program, plus `⊤`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    constants: BTreeSet<String>,
    source_chars: BTreeSet<char>,
}

impl Alphabet {
    pub fn new<I, S>(constants: I) -> Alphabet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let constants: BTreeSet<String> = constants.into_iter().map(Into::into).collect();
        let source_chars = constants.iter().flat_map(|s| s.chars()).collect();
        Alphabet {
            constants,
            source_chars,
        }
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    /// Characters appearing in program constants.
    pub fn source_chars(&self) -> &BTreeSet<char> {
        &self.source_chars
    }

    /// Membership in `Σ*_P ∪ {⊤}`.
    pub fn contains(&self, symbol: &Symbol) -> bool {
        match symbol {
            Symbol::Top => true,
            Symbol::Str(s) => self.constants.iter().any(|c| c.contains(s.as_str())),
        }
    }

    /// Enumerates the finite set of string symbols (every nonempty substring
    /// of every constant).
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::from([Symbol::Top]);
        for c in &self.constants {
            let chars: Vec<char> = c.chars().collect();
            for i in 0..chars.len() {
                for j in i + 1..=chars.len() {
                    out.insert(Symbol::Str(chars[i..j].iter().collect()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_dangling_states() {
        let err =
            Automaton::new(2, 0, [1], [Transition::new(0, Symbol::char('a'), 2)]).unwrap_err();
        assert_eq!(
            err,
            AutomatonError::InvalidState {
                state: 2,
                num_states: 2
            }
        );
        assert!(Automaton::new(1, 3, [], []).is_err());
    }

    #[test]
    #[should_panic]
    fn empty_string_symbol_is_rejected() {
        let _ = Symbol::text("");
    }

    #[test]
    fn trim_drops_dead_and_unreachable_states() {
        let a = Automaton::new(
            4,
            0,
            [1],
            [
                Transition::new(0, Symbol::char('a'), 1),
                Transition::new(0, Symbol::char('b'), 2),
                Transition::new(3, Symbol::char('c'), 1),
            ],
        )
        .unwrap();
        let t = a.trim();
        assert_eq!(t.num_states(), 2);
        assert_eq!(t.transitions().len(), 1);
        assert_eq!(
            Automaton::new(2, 0, [], []).unwrap().trim(),
            Automaton::empty()
        );
    }

    #[test]
    fn alphabet_is_substring_closed() {
        let alpha = Alphabet::new(["ab"]);
        for s in ["a", "b", "ab"] {
            assert!(alpha.contains(&Symbol::text(s)));
        }
        assert!(!alpha.contains(&Symbol::text("ba")));
        assert!(alpha.contains(&Symbol::Top));
        assert_eq!(alpha.symbols().len(), 4);
        let none = Alphabet::new(Vec::<String>::new());
        assert_eq!(none.symbols(), BTreeSet::from([Symbol::Top]));
        assert!(none.source_chars().is_empty());
    }

    #[test]
    fn dot_mentions_every_state() {
        let dot = Automaton::from_strings(["ab"]).to_dot();
        assert!(dot.contains("q2 [shape=doublecircle]"));
        assert!(dot.contains("label=\"a\""));
    }
}
