//! The flattened, character-level view of automata and the semantic
//! decisions taken on it: membership, inclusion and intersection emptiness.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Automaton, Label, StateId, Symbol, Transition, FRESH};

impl Automaton {
    /// Character-level automaton over `chars(self) ∪ {FRESH}`: every `Str`
    /// label becomes a chain of single characters and every `⊤` becomes an
    /// epsilon bypass with a loop over all characters.
    pub fn flatten(&self) -> Automaton {
        self.flatten_over(&self.chars())
    }

    /// Like [`Automaton::flatten`], with `⊤` looping over `chars ∪ {FRESH}`.
    pub fn flatten_over(&self, chars: &BTreeSet<char>) -> Automaton {
        let trimmed = self.trim();
        let mut letters: BTreeSet<char> = chars.clone();
        letters.insert(FRESH);
        let mut next = trimmed.num_states;
        let mut transitions = BTreeSet::new();
        for t in &trimmed.transitions {
            match &t.label {
                Label::Epsilon => {
                    transitions.insert(t.clone());
                }
                Label::Sym(Symbol::Str(s)) => {
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
                Label::Sym(Symbol::Top) => {
                    let hub = next;
                    next += 1;
                    transitions.insert(Transition::epsilon(t.from, hub));
                    transitions.insert(Transition::epsilon(hub, t.to));
                    for &c in &letters {
                        transitions.insert(Transition::new(hub, Symbol::char(c), hub));
                    }
                }
            }
        }
        Automaton::from_parts(next, trimmed.initial, trimmed.finals.clone(), transitions)
    }

    /// Decides `s ∈ γ(self)`: `s` is obtained from some accepted symbol
    /// string by replacing each `⊤` with an arbitrary (possibly empty) string.
    pub fn member(&self, s: &str) -> bool {
        self.matcher().accepts(s)
    }

    /// The flattened automaton prepared for repeated membership tests.
    pub fn matcher(&self) -> Matcher {
        let chars = self.chars();
        let flat = self.flatten_over(&chars);
        let mut eps = vec![Vec::new(); flat.num_states];
        let mut step: Vec<BTreeMap<char, Vec<StateId>>> = vec![BTreeMap::new(); flat.num_states];
        for t in &flat.transitions {
            match &t.label {
                Label::Epsilon => eps[t.from].push(t.to),
                Label::Sym(sym) => {
                    step[t.from].entry(single_char(sym)).or_default().push(t.to);
                }
            }
        }
        Matcher {
            chars,
            eps,
            step,
            initial: flat.initial,
            finals: flat.finals,
        }
    }

    /// `γ(self) ⊆ γ(other)`, decided on the flattened encodings.
    pub fn leq(&self, other: &Automaton) -> bool {
        let (a, b) = CharDfa::pair(self, other);
        // product with the complement of b: a state of b may be missing (sink)
        let mut seen: BTreeSet<(usize, Option<usize>)> = BTreeSet::new();
        let mut queue = VecDeque::from([(0, Some(0))]);
        seen.insert((0, Some(0)));
        if a.is_empty() {
            return true;
        }
        while let Some((p, q)) = queue.pop_front() {
            if a.finals[p] && !q.is_some_and(|q| b.finals[q]) {
                return false;
            }
            for letter in 0..a.letters.len() {
                let Some(p2) = a.trans[p][letter] else {
                    continue;
                };
                let q2 = q.and_then(|q| b.trans[q][letter]);
                if seen.insert((p2, q2)) {
                    queue.push_back((p2, q2));
                }
            }
        }
        true
    }

    /// `γ(self) ∩ γ(other) = ∅`.
    pub fn intersect_empty(&self, other: &Automaton) -> bool {
        let (a, b) = CharDfa::pair(self, other);
        if a.is_empty() || b.is_empty() {
            return true;
        }
        let mut seen = BTreeSet::from([(0, 0)]);
        let mut queue = VecDeque::from([(0, 0)]);
        while let Some((p, q)) = queue.pop_front() {
            if a.finals[p] && b.finals[q] {
                return false;
            }
            for letter in 0..a.letters.len() {
                if let (Some(p2), Some(q2)) = (a.trans[p][letter], b.trans[q][letter]) {
                    if seen.insert((p2, q2)) {
                        queue.push_back((p2, q2));
                    }
                }
            }
        }
        true
    }

    /// Equality of concretizations.
    pub fn language_eq(&self, other: &Automaton) -> bool {
        self.leq(other) && other.leq(self)
    }

    /// Smallest position at which `needle` can start in some string of
    /// `γ(self)`, or `None` if it occurs in none of them.
    pub fn earliest_occurrence(&self, needle: &str) -> Option<usize> {
        let mut chars = self.chars();
        chars.extend(needle.chars());
        let dfa = CharDfa::build(&self.flatten_over(&chars), &chars);
        if dfa.is_empty() {
            return None;
        }
        let pattern: Option<Vec<usize>> = needle.chars().map(|c| dfa.letter(c)).collect();
        let pattern = pattern?;
        let mut dist = vec![usize::MAX; dfa.trans.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0]);
        let mut best: Option<usize> = None;
        while let Some(q) = queue.pop_front() {
            if best.is_some_and(|b| dist[q] >= b) {
                break;
            }
            // every DFA state here is co-reachable, so reading the needle
            // from q means it occurs at position dist[q]
            let mut state = Some(q);
            for &l in &pattern {
                state = state.and_then(|s| dfa.trans[s][l]);
            }
            if state.is_some() {
                best = Some(dist[q]);
                continue;
            }
            for l in 0..dfa.letters.len() {
                if let Some(to) = dfa.trans[q][l] {
                    if dist[to] == usize::MAX {
                        dist[to] = dist[q] + 1;
                        queue.push_back(to);
                    }
                }
            }
        }
        best
    }
}

fn single_char(sym: &Symbol) -> char {
    match sym {
        Symbol::Str(s) => {
            let mut it = s.chars();
            let c = it.next().expect("string symbols are never empty");
            debug_assert!(
                it.next().is_none(),
                "flattened automata carry single characters"
            );
            c
        }
        Symbol::Top => unreachable!("flattened automata never read \u{22A4}"),
    }
}

fn closure(eps: &[Vec<StateId>], seeds: impl IntoIterator<Item = StateId>) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<StateId> = seeds.into_iter().collect();
    while let Some(q) = stack.pop() {
        if seen.insert(q) {
            stack.extend(eps[q].iter().copied());
        }
    }
    seen
}

/// NFA simulation on the flattened encoding, see [`Automaton::matcher`].
#[derive(Debug, Clone)]
pub struct Matcher {
    chars: BTreeSet<char>,
    eps: Vec<Vec<StateId>>,
    step: Vec<BTreeMap<char, Vec<StateId>>>,
    initial: StateId,
    finals: BTreeSet<StateId>,
}

impl Matcher {
    pub fn accepts(&self, s: &str) -> bool {
        let mut current = closure(&self.eps, [self.initial]);
        for c in s.chars() {
            // characters outside the automaton can only come from a ⊤
            let c = if c != FRESH && self.chars.contains(&c) {
                c
            } else {
                FRESH
            };
            let targets: Vec<StateId> = current
                .iter()
                .filter_map(|&q| self.step[q].get(&c))
                .flatten()
                .copied()
                .collect();
            if targets.is_empty() {
                return false;
            }
            current = closure(&self.eps, targets);
        }
        current.iter().any(|q| self.finals.contains(q))
    }
}

/// Dense deterministic automaton over a sorted character alphabet that
/// always contains [`FRESH`]. State 0 is initial; every state is reachable,
/// and when built from a trimmed automaton every state is co-reachable.
pub(crate) struct CharDfa {
    pub letters: Vec<char>,
    pub trans: Vec<Vec<Option<usize>>>,
    pub finals: Vec<bool>,
    empty: bool,
}

impl CharDfa {
    /// Determinizes a flattened automaton over `chars ∪ {FRESH}`.
    pub fn build(flat: &Automaton, chars: &BTreeSet<char>) -> CharDfa {
        let mut letters: Vec<char> = chars.iter().copied().collect();
        if !chars.contains(&FRESH) {
            letters.push(FRESH);
            letters.sort_unstable();
        }
        let letter_of: BTreeMap<char, usize> =
            letters.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut eps = vec![Vec::new(); flat.num_states];
        let mut step = vec![Vec::new(); flat.num_states];
        for t in &flat.transitions {
            match &t.label {
                Label::Epsilon => eps[t.from].push(t.to),
                Label::Sym(sym) => step[t.from].push((letter_of[&single_char(sym)], t.to)),
            }
        }
        let empty = flat.is_empty_language();
        let start: Vec<StateId> = closure(&eps, [flat.initial]).into_iter().collect();
        let mut ids: BTreeMap<Vec<StateId>, usize> = BTreeMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut trans = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            finals.push(set.iter().any(|q| flat.finals.contains(q)));
            let mut moves: Vec<Vec<StateId>> = vec![Vec::new(); letters.len()];
            for &q in &set {
                for &(l, to) in &step[q] {
                    moves[l].push(to);
                }
            }
            let mut row = vec![None; letters.len()];
            for (l, targets) in moves.into_iter().enumerate() {
                if targets.is_empty() {
                    continue;
                }
                let target: Vec<StateId> = closure(&eps, targets).into_iter().collect();
                let id = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        ids.insert(target.clone(), sets.len());
                        sets.push(target);
                        sets.len() - 1
                    }
                };
                row[l] = Some(id);
            }
            trans.push(row);
            i += 1;
        }
        CharDfa {
            letters,
            trans,
            finals,
            empty,
        }
    }

    /// Both automata flattened over the union of their characters.
    pub fn pair(a: &Automaton, b: &Automaton) -> (CharDfa, CharDfa) {
        let mut chars = a.chars();
        chars.extend(b.chars());
        (
            CharDfa::build(&a.flatten_over(&chars), &chars),
            CharDfa::build(&b.flatten_over(&chars), &chars),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn letter(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn top_chain(parts: &[Option<&str>]) -> Automaton {
        let syms: Vec<Symbol> = parts
            .iter()
            .map(|p| match p {
                Some(s) => Symbol::text(*s),
                None => Symbol::Top,
            })
            .collect();
        Automaton::from_symbols(&syms)
    }

    #[test]
    fn flatten_splits_string_labels() {
        let a = Automaton::from_symbols(&[Symbol::text("ab")]);
        let flat = a.flatten();
        assert_eq!(flat.transitions().len(), 2);
        assert!(flat
            .determinize_minimize()
            .language_eq(&Automaton::from_strings(["ab"])));
        assert_eq!(flat.determinize_minimize(), Automaton::from_strings(["ab"]));
    }

    #[test]
    fn flattened_top_accepts_everything() {
        let flat = Automaton::top().flatten();
        for s in ["", "x", "xy"] {
            assert!(flat.member(s), "{s:?}");
        }
    }

    #[test]
    fn top_between_letters() {
        let a = top_chain(&[Some("a"), None, Some("b")]);
        for s in ["ab", "aqb", "aqqb", "abbb"] {
            assert!(a.member(s), "{s:?}");
        }
        for s in ["a", "b", "ba", "aqbq"] {
            assert!(!a.member(s), "{s:?}");
        }
    }

    #[test]
    fn membership_follows_concretization() {
        assert!(Automaton::from_strings(["ab"]).member("ab"));
        assert!(!Automaton::from_strings(["ab"]).member("a"));
        assert!(Automaton::top().member("anything at all"));
        let id = top_chain(&[Some("id = "), None]);
        assert!(id.member("id = 42"));
        assert!(id.member("id = "));
        assert!(!id.member("x"));
        assert!(!Automaton::empty().member(""));
        assert!(Automaton::epsilon().member(""));
    }

    #[test]
    fn inclusion_ignores_symbol_granularity() {
        let coarse = Automaton::from_symbols(&[Symbol::text("a"), Symbol::text("b")]);
        let fine = Automaton::from_strings(["ab"]);
        let single = Automaton::from_symbols(&[Symbol::text("ab")]);
        assert!(coarse.leq(&fine) && fine.leq(&coarse));
        assert!(single.language_eq(&fine));
        assert_ne!(single, fine);
        assert!(fine.leq(&Automaton::top()));
        assert!(!Automaton::top().leq(&fine));
        assert!(Automaton::empty().leq(&fine));
        assert!(!fine.leq(&Automaton::empty()));
    }

    #[test]
    fn inclusion_between_top_shapes() {
        let tt = top_chain(&[None, None]);
        assert!(tt.language_eq(&Automaton::top()));
        let a_top = top_chain(&[Some("a"), None]);
        assert!(a_top.leq(&Automaton::top()));
        assert!(!Automaton::top().leq(&a_top));
        // strings made of characters foreign to both automata
        let fresh_only = Automaton::from_strings(["z"]);
        assert!(fresh_only.leq(&Automaton::top()));
        assert!(!fresh_only.leq(&a_top));
    }

    #[test]
    fn intersection_emptiness() {
        let a = Automaton::from_strings(["a"]);
        assert!(a.intersect_empty(&Automaton::empty()));
        assert!(!a.intersect_empty(&Automaton::from_strings(["a", "b"])));
        assert!(a.intersect_empty(&Automaton::from_strings(["b"])));
        assert!(!a.intersect_empty(&top_chain(&[None])));
        assert!(Automaton::from_strings(["zz"]).intersect_empty(&top_chain(&[Some("a"), None])));
        assert!(!Automaton::from_strings(["zz"]).intersect_empty(&top_chain(&[None, Some("z")])));
    }

    #[test]
    fn earliest_occurrence_sees_through_top() {
        assert_eq!(
            Automaton::from_strings(["aab", "bba"]).earliest_occurrence("b"),
            Some(0)
        );
        assert_eq!(
            Automaton::from_strings(["aab"]).earliest_occurrence("b"),
            Some(2)
        );
        assert_eq!(
            Automaton::from_strings(["aab"]).earliest_occurrence("z"),
            None
        );
        // "ab" ⊤ "bx": with ⊤ = "x..." the needle "bx" starts at 1
        let a = top_chain(&[Some("ab"), None, Some("bx")]);
        assert_eq!(a.earliest_occurrence("bx"), Some(1));
        assert_eq!(a.earliest_occurrence(""), Some(0));
        let s: String = "q".into();
        assert_eq!(Automaton::top().earliest_occurrence(&s), Some(0));
    }
}
