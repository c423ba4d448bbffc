//! Subset construction, trimming and Moore partition refinement.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Automaton, Label, StateId, Symbol, Transition};

/// Deterministic automaton over interned symbol ids, used as the working
/// representation while canonicalizing.
struct Dfa {
    // sorted by symbol id, one target per symbol
    trans: Vec<Vec<(u32, usize)>>,
    finals: Vec<bool>,
}

impl Automaton {
    /// The unique minimum DFA for the symbol-atomic language of `self`:
    /// epsilon-free, deterministic, no unreachable or dead states, states
    /// numbered in breadth-first order.
    pub fn determinize_minimize(&self) -> Automaton {
        let table: Vec<Symbol> = self.symbols().into_iter().cloned().collect();
        let index: BTreeMap<&Symbol, u32> = table
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();

        let mut eps = vec![Vec::new(); self.num_states];
        let mut sym = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            match &t.label {
                Label::Epsilon => eps[t.from].push(t.to),
                Label::Sym(s) => sym[t.from].push((index[s], t.to)),
            }
        }

        let dfa = subset_construction(self, &eps, &sym);
        let live = live_states(&dfa);
        if !live[0] {
            return Automaton::empty();
        }
        let class = moore_refinement(&dfa, &live);
        canonical_from_classes(&dfa, &live, &class, &table)
    }

    /// True when `self` is structurally equal to its canonical form.
    pub fn is_canonical(&self) -> bool {
        *self == self.determinize_minimize()
    }
}

fn epsilon_closure(eps: &[Vec<StateId>], seeds: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<StateId> = seeds.into_iter().collect();
    while let Some(q) = stack.pop() {
        if seen.insert(q) {
            stack.extend(eps[q].iter().copied());
        }
    }
    seen.into_iter().collect()
}

fn subset_construction(a: &Automaton, eps: &[Vec<StateId>], sym: &[Vec<(u32, StateId)>]) -> Dfa {
    let start = epsilon_closure(eps, [a.initial]);
    let mut ids: BTreeMap<Vec<StateId>, usize> = BTreeMap::new();
    let mut sets: Vec<Vec<StateId>> = Vec::new();
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut trans = Vec::new();
    let mut finals = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let set = sets[i].clone();
        finals.push(set.iter().any(|q| a.finals.contains(q)));
        let mut moves: BTreeMap<u32, Vec<StateId>> = BTreeMap::new();
        for &q in &set {
            for &(s, to) in &sym[q] {
                moves.entry(s).or_default().push(to);
            }
        }
        let mut row = Vec::with_capacity(moves.len());
        for (s, targets) in moves {
            let closure = epsilon_closure(eps, targets);
            let id = match ids.get(&closure) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    ids.insert(closure.clone(), id);
                    sets.push(closure);
                    id
                }
            };
            row.push((s, id));
        }
        trans.push(row);
        i += 1;
    }
    Dfa { trans, finals }
}

/// Co-reachable states of a DFA whose states are all reachable.
fn live_states(dfa: &Dfa) -> Vec<bool> {
    let n = dfa.trans.len();
    let mut pred = vec![Vec::new(); n];
    for (from, row) in dfa.trans.iter().enumerate() {
        for &(_, to) in row {
            pred[to].push(from);
        }
    }
    let mut live = dfa.finals.clone();
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| live[q]).collect();
    while let Some(q) = queue.pop_front() {
        for &p in &pred[q] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    live
}

/// Moore refinement on the live part of a partial DFA. Missing transitions
/// (and transitions into dead states) behave as moves to an implicit sink.
fn moore_refinement(dfa: &Dfa, live: &[bool]) -> Vec<usize> {
    let n = dfa.trans.len();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.finals[q])).collect();
    let mut count = if class.iter().zip(live).any(|(&c, &l)| l && c == 0) {
        2
    } else {
        1
    };
    loop {
        let mut signatures: BTreeMap<(usize, Vec<(u32, usize)>), usize> = BTreeMap::new();
        let mut next = vec![usize::MAX; n];
        for q in (0..n).filter(|&q| live[q]) {
            let row: Vec<(u32, usize)> = dfa.trans[q]
                .iter()
                .filter(|&&(_, to)| live[to])
                .map(|&(s, to)| (s, class[to]))
                .collect();
            let fresh = signatures.len();
            next[q] = *signatures.entry((class[q], row)).or_insert(fresh);
        }
        let new_count = signatures.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

fn canonical_from_classes(
    dfa: &Dfa,
    live: &[bool],
    class: &[usize],
    table: &[Symbol],
) -> Automaton {
    let n = dfa.trans.len();
    let num_classes = class
        .iter()
        .filter(|&&c| c != usize::MAX)
        .max()
        .map_or(0, |m| m + 1);
    // representative transitions per class
    let mut rep: Vec<Option<usize>> = vec![None; num_classes];
    for q in (0..n).filter(|&q| live[q]) {
        rep[class[q]].get_or_insert(q);
    }
    let mut number = vec![usize::MAX; num_classes];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([class[0]]);
    number[class[0]] = 0;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        let q = rep[c].expect("every class has a member");
        for &(_, to) in &dfa.trans[q] {
            if live[to] && number[class[to]] == usize::MAX {
                number[class[to]] = order.len() + queue.len();
                queue.push_back(class[to]);
            }
        }
    }
    let mut finals = BTreeSet::new();
    let mut transitions = BTreeSet::new();
    for &c in &order {
        let q = rep[c].expect("every class has a member");
        if dfa.finals[q] {
            finals.insert(number[c]);
        }
        for &(s, to) in &dfa.trans[q] {
            if live[to] {
                transitions.insert(Transition::new(
                    number[c],
                    table[s as usize].clone(),
                    number[class[to]],
                ));
            }
        }
    }
    Automaton::from_parts(order.len(), 0, finals, transitions)
}
