//! Parametric widening by merging states that can read the same short
//! symbol strings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{Automaton, Label, Symbol, Transition};

impl Automaton {
    /// `self ∇ₙ other`: states of the canonical `self ⊔ other` are merged
    /// when they can read exactly the same symbol strings of length at most
    /// `n`. Finality is not part of the comparison. The quotient is then
    /// canonicalized again.
    pub fn widen(&self, other: &Automaton, n: usize) -> Automaton {
        let u = self.lub(other);
        let succ = u.successors();
        let mut key: Vec<BTreeSet<Vec<&Symbol>>> = Vec::with_capacity(u.num_states);
        for q in 0..u.num_states {
            key.push(readable(&succ, q, n));
        }
        let mut classes: BTreeMap<&BTreeSet<Vec<&Symbol>>, usize> = BTreeMap::new();
        let mut class = vec![0; u.num_states];
        for q in 0..u.num_states {
            let fresh = classes.len();
            class[q] = *classes.entry(&key[q]).or_insert(fresh);
        }
        let transitions: BTreeSet<Transition> = u
            .transitions
            .iter()
            .map(|t| Transition {
                from: class[t.from],
                label: t.label.clone(),
                to: class[t.to],
            })
            .collect();
        let finals = u.finals.iter().map(|&f| class[f]).collect();
        Automaton::from_parts(classes.len(), class[u.initial], finals, transitions)
            .determinize_minimize()
    }
}

/// Symbol strings of length `0..=n` that can be read from `q`.
fn readable<'a>(succ: &[Vec<(&'a Label, usize)>], q: usize, n: usize) -> BTreeSet<Vec<&'a Symbol>> {
    let mut out = BTreeSet::new();
    let mut frontier: Vec<(usize, Vec<&Symbol>)> = vec![(q, Vec::new())];
    for _ in 0..=n {
        let mut next = Vec::new();
        for (state, word) in frontier {
            for &(label, to) in &succ[state] {
                let mut w = word.clone();
                // canonical automata have no epsilon moves
                w.extend(label.symbol());
                next.push((to, w));
            }
            out.insert(word);
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growing_chain_becomes_a_loop() {
        let a = Automaton::from_strings(["", "a"]);
        let b = Automaton::from_strings(["", "a", "aa"]);
        let w = a.widen(&b, 1);
        assert_eq!(w, Automaton::from_strings(["a"]).star());
    }

    #[test]
    fn widening_is_an_upper_bound() {
        let a = Automaton::from_strings(["ab", "cd"]);
        let b = Automaton::from_strings(["abab", "x"]);
        for n in 1..4 {
            let w = a.widen(&b, n);
            assert!(a.leq(&w) && b.leq(&w));
        }
    }

    #[test]
    fn top_prefixed_chain() {
        // {"id=", "id=⊤"} ∇ {"id=", "id=⊤", "id=⊤id=⊤"}-like growth
        let id = Automaton::from_symbols(&[Symbol::text("id="), Symbol::Top]);
        let a = id.lub(&Automaton::epsilon());
        let b = a.lub(&id.concat(&id));
        let w = a.widen(&b, 2);
        assert!(w.has_cycle());
        assert!(b.leq(&w));
        assert_eq!(w, id.star());
    }
}
