//! Language operations producing new canonical automata.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Automaton, Label, Symbol, Transition};

impl Automaton {
    /// Canonical automaton for `L(self) ∪ L(other)`.
    pub fn lub(&self, other: &Automaton) -> Automaton {
        Automaton::union_all([self, other])
    }

    /// Canonical automaton for the union of all the given languages.
    pub fn union_all<'a>(automata: impl IntoIterator<Item = &'a Automaton>) -> Automaton {
        let mut transitions = BTreeSet::new();
        let mut finals = BTreeSet::new();
        let mut next = 1;
        for a in automata {
            let offset = Automaton::embed(&mut transitions, &mut next, a);
            transitions.insert(Transition::epsilon(0, a.initial + offset));
            finals.extend(a.finals.iter().map(|f| f + offset));
        }
        Automaton::from_parts(next, 0, finals, transitions).determinize_minimize()
    }

    /// Canonical automaton for `L(self) · L(other)`.
    pub fn concat(&self, other: &Automaton) -> Automaton {
        let mut transitions = self.transitions.clone();
        let mut next = self.num_states;
        let offset = Automaton::embed(&mut transitions, &mut next, other);
        for &f in &self.finals {
            transitions.insert(Transition::epsilon(f, other.initial + offset));
        }
        let finals = other.finals.iter().map(|f| f + offset).collect();
        Automaton::from_parts(next, self.initial, finals, transitions).determinize_minimize()
    }

    /// Canonical automaton for `L(self)*`.
    pub fn star(&self) -> Automaton {
        let mut transitions = BTreeSet::new();
        let mut next = 1;
        let offset = Automaton::embed(&mut transitions, &mut next, self);
        transitions.insert(Transition::epsilon(0, self.initial + offset));
        for &f in &self.finals {
            transitions.insert(Transition::epsilon(f + offset, 0));
        }
        Automaton::from_parts(next, 0, BTreeSet::from([0]), transitions).determinize_minimize()
    }

    /// Same concretization, with every `Str` label split into single
    /// characters. `⊤` labels are kept. The result is canonical.
    pub fn explode(&self) -> Automaton {
        let mut next = self.num_states;
        let mut transitions = BTreeSet::new();
        for t in &self.transitions {
            match &t.label {
                Label::Sym(Symbol::Str(s)) if s.chars().nth(1).is_some() => {
                    let chars: Vec<char> = s.chars().collect();
                    let mut from = t.from;
                    for (i, &c) in chars.iter().enumerate() {
                        let to = if i + 1 == chars.len() {
                            t.to
                        } else {
                            next += 1;
                            next - 1
                        };
                        transitions.insert(Transition::new(from, Symbol::char(c), to));
                        from = to;
                    }
                }
                _ => {
                    transitions.insert(t.clone());
                }
            }
        }
        Automaton::from_parts(next, self.initial, self.finals.clone(), transitions)
            .determinize_minimize()
    }

    /// Automaton for every substring (factor) of every string in `γ(self)`.
    /// Factors of a `⊤` segment are again covered by `⊤`.
    pub fn factors(&self) -> Automaton {
        let exploded = self.explode();
        if exploded.is_empty_language() {
            return Automaton::empty();
        }
        let mut transitions = BTreeSet::new();
        let mut next = 1;
        let offset = Automaton::embed(&mut transitions, &mut next, &exploded);
        for q in 0..exploded.num_states {
            transitions.insert(Transition::epsilon(0, q + offset));
        }
        let finals = (0..next).collect();
        Automaton::from_parts(next, 0, finals, transitions).determinize_minimize()
    }

    /// True iff `self` reads only single-character `Str` symbols and `⊤`.
    pub fn is_char_level(&self) -> bool {
        self.transitions.iter().all(|t| match &t.label {
            Label::Sym(Symbol::Str(s)) => s.chars().nth(1).is_none(),
            _ => true,
        })
    }
}
