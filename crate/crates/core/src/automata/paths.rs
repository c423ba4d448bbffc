//! Structural queries: cycles, `⊤` transitions, accepted symbol strings and
//! length bounds.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Automaton, AutomatonError, Label, Symbol};

/// An accepted symbol string of an acyclic automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<Symbol>);

impl Path {
    /// The concatenated text, or `None` if the path reads `⊤`.
    pub fn text(&self) -> Option<String> {
        let mut out = String::new();
        for s in &self.0 {
            match s {
                Symbol::Str(t) => out.push_str(t),
                Symbol::Top => return None,
            }
        }
        Some(out)
    }

    pub fn has_top(&self) -> bool {
        self.0.iter().any(Symbol::is_top)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Automaton {
    /// True iff the trimmed automaton has a cycle (epsilon moves included).
    pub fn has_cycle(&self) -> bool {
        topological_order(&self.trim()).is_none()
    }

    /// True iff some useful transition reads `⊤`.
    pub fn reads_top(&self) -> bool {
        self.trim()
            .transitions
            .iter()
            .any(|t| t.label == Label::Sym(Symbol::Top))
    }

    /// Every accepted symbol string, when the automaton is acyclic and there
    /// are at most `limit` of them.
    pub fn paths(&self, limit: usize) -> Result<Option<BTreeSet<Path>>, AutomatonError> {
        let a = self.trim();
        if topological_order(&a).is_none() {
            return Err(AutomatonError::CyclicAutomaton);
        }
        let succ = a.successors();
        let mut out = BTreeSet::new();
        let mut stack: Vec<(usize, Vec<Symbol>)> = vec![(a.initial, Vec::new())];
        while let Some((q, word)) = stack.pop() {
            if a.is_final(q) {
                out.insert(Path(word.clone()));
                if out.len() > limit {
                    return Ok(None);
                }
            }
            for &(label, to) in &succ[q] {
                let mut w = word.clone();
                if let Label::Sym(s) = label {
                    w.push(s.clone());
                }
                stack.push((to, w));
            }
        }
        Ok(Some(out))
    }

    /// The finite set `γ(self)`, when the automaton is acyclic, reads no `⊤`
    /// and has at most `limit` paths.
    pub fn strings(&self, limit: usize) -> Option<BTreeSet<String>> {
        if self.reads_top() {
            return None;
        }
        let paths = self.paths(limit).ok()??;
        Some(paths.iter().filter_map(Path::text).collect())
    }

    /// The only string of `γ(self)`, when it is a singleton.
    pub fn single_string(&self) -> Option<String> {
        let strings = self.strings(64)?;
        let mut it = strings.into_iter();
        match (it.next(), it.next()) {
            (Some(s), None) => Some(s),
            _ => None,
        }
    }

    /// `Some(σ_sp)` when the automaton is acyclic, reads no `⊤`, and every
    /// accepted string is a prefix of the longest one, `σ_sp`.
    pub fn single_path(&self) -> Option<String> {
        let strings = self.strings(1 << 16)?;
        let longest = strings.iter().max_by_key(|s| s.chars().count())?;
        strings
            .iter()
            .all(|s| longest.starts_with(s.as_str()))
            .then(|| longest.clone())
    }

    /// Minimum and maximum length (in characters) of strings in `γ(self)`.
    /// The maximum is `None` when unbounded (a useful cycle or `⊤`).
    /// Errors on the empty language.
    pub fn length_bounds(&self) -> Result<(usize, Option<usize>), AutomatonError> {
        let a = self.trim();
        if a.finals.is_empty() {
            return Err(AutomatonError::EmptyLanguage);
        }
        let succ = a.successors();
        let weight = |label: &Label| label.symbol().map_or(0, Symbol::min_len);
        // shortest path, Dijkstra on small weights
        let mut dist = vec![usize::MAX; a.num_states];
        dist[a.initial] = 0;
        let mut heap = alloc::collections::BinaryHeap::new();
        heap.push(core::cmp::Reverse((0usize, a.initial)));
        while let Some(core::cmp::Reverse((d, q))) = heap.pop() {
            if d > dist[q] {
                continue;
            }
            for &(label, to) in &succ[q] {
                let nd = d + weight(label);
                if nd < dist[to] {
                    dist[to] = nd;
                    heap.push(core::cmp::Reverse((nd, to)));
                }
            }
        }
        let min = a.finals.iter().map(|&f| dist[f]).min().expect("nonempty");
        let max = if a.reads_top() {
            None
        } else {
            topological_order(&a).map(|order| {
                let mut longest = vec![0usize; a.num_states];
                for &q in &order {
                    for &(label, to) in &succ[q] {
                        longest[to] = longest[to].max(longest[q] + weight(label));
                    }
                }
                a.finals
                    .iter()
                    .map(|&f| longest[f])
                    .max()
                    .expect("nonempty")
            })
        };
        Ok((min, max))
    }
}

/// Kahn's algorithm over all transitions of `a`; `None` if there is a cycle.
fn topological_order(a: &Automaton) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; a.num_states];
    for t in &a.transitions {
        indegree[t.to] += 1;
    }
    let succ = a.successors();
    let mut ready: Vec<usize> = (0..a.num_states).filter(|&q| indegree[q] == 0).collect();
    let mut order = Vec::with_capacity(a.num_states);
    while let Some(q) = ready.pop() {
        order.push(q);
        for &(_, to) in &succ[q] {
            indegree[to] -= 1;
            if indegree[to] == 0 {
                ready.push(to);
            }
        }
    }
    (order.len() == a.num_states).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_top() {
        let a = Automaton::from_strings(["a"]).star();
        assert!(a.has_cycle());
        assert!(!Automaton::from_strings(["ab", "c"]).has_cycle());
        assert!(Automaton::top().reads_top());
        assert!(!Automaton::top().has_cycle());
        assert!(!Automaton::from_strings(["x"]).reads_top());
    }

    #[test]
    fn paths_of_acyclic_automaton() {
        let a = Automaton::from_symbol_strings([
            vec![Symbol::text("ab")],
            vec![Symbol::Top, Symbol::char('c')],
        ]);
        let paths = a.paths(10).unwrap().unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().any(Path::has_top));
        assert!(a.paths(1).unwrap().is_none());
        assert_eq!(
            Automaton::from_strings(["a"]).star().paths(5),
            Err(AutomatonError::CyclicAutomaton)
        );
    }

    #[test]
    fn single_strings() {
        assert_eq!(
            Automaton::from_strings(["hey"]).single_string().as_deref(),
            Some("hey")
        );
        assert_eq!(Automaton::from_strings(["a", "b"]).single_string(), None);
        assert_eq!(Automaton::top().single_string(), None);
        assert_eq!(Automaton::epsilon().single_string().as_deref(), Some(""));
        assert_eq!(Automaton::empty().single_string(), None);
    }

    #[test]
    fn single_path_automata() {
        assert_eq!(
            Automaton::from_strings(["a", "aa"])
                .single_path()
                .as_deref(),
            Some("aa")
        );
        assert_eq!(Automaton::from_strings(["a", "b"]).single_path(), None);
        assert_eq!(Automaton::from_symbols(&[Symbol::Top]).single_path(), None);
        assert_eq!(
            Automaton::from_strings(["", "ab"]).single_path().as_deref(),
            Some("ab")
        );
    }

    #[test]
    fn length_bounds_follow_paths() {
        let a = Automaton::from_strings(["abc", "de", "fghij"]);
        assert_eq!(a.length_bounds(), Ok((2, Some(5))));
        let t = Automaton::from_symbols(&[Symbol::text("ab"), Symbol::Top]);
        assert_eq!(t.length_bounds(), Ok((2, None)));
        let s = Automaton::from_strings(["xy"]).concat(&Automaton::from_strings(["z"]).star());
        assert_eq!(s.length_bounds(), Ok((2, None)));
        assert_eq!(
            Automaton::empty().length_bounds(),
            Err(AutomatonError::EmptyLanguage)
        );
        assert_eq!(Automaton::epsilon().length_bounds(), Ok((0, Some(0))));
    }
}
