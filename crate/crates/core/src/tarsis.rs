//! The Tarsis string domain: canonical automata over string symbols and
//! `⊤`, with abstract semantics for the string operations of IMP.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automata::{Automaton, AutomatonError, Label, Path, Symbol, Transition};
use crate::regex::{completed_to_automaton, Regex};
use crate::value_domains::{BoolSet, Bound, Interval, StringDomain};

/// Most paths enumerated before an operation falls back to a coarser result.
pub const PATH_LIMIT: usize = 4096;
/// Most `(from, to)` pairs handled precisely by `substring`.
pub const SUBSTRING_PAIR_LIMIT: i64 = 10_000;
/// Symbol walks of the needed length past which substring extraction on a
/// cyclic automaton gives up on precision and returns its factors.
pub const SUBSTRING_WALK_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("operation applied to a bottom value")]
    BottomInput,
}

/// An element of the domain: always a canonical automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringAbs(Automaton);

fn check(values: &[&StringAbs]) -> Result<(), DomainError> {
    if values.iter().any(|v| v.is_bottom()) {
        Err(DomainError::BottomInput)
    } else {
        Ok(())
    }
}

fn length_of(n: usize) -> Bound {
    Bound::Finite(i64::try_from(n).unwrap_or(i64::MAX))
}

/// Character position of the first occurrence of `needle` in `hay`.
fn char_find(hay: &str, needle: &str) -> Option<usize> {
    hay.find(needle).map(|byte| hay[..byte].chars().count())
}

impl StringAbs {
    pub fn bottom() -> StringAbs {
        StringAbs(Automaton::empty())
    }

    pub fn top() -> StringAbs {
        StringAbs(Automaton::top())
    }

    pub fn constant(s: &str) -> StringAbs {
        StringAbs(Automaton::from_strings([s]))
    }

    pub fn from_strings<I, S>(strings: I) -> StringAbs
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StringAbs(Automaton::from_strings(strings))
    }

    /// Canonicalizes `a`.
    pub fn from_automaton(a: &Automaton) -> StringAbs {
        StringAbs(a.determinize_minimize())
    }

    pub fn automaton(&self) -> &Automaton {
        &self.0
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_empty_language()
    }

    pub fn to_regex(&self) -> Regex {
        Regex::from_automaton(&self.0)
    }

    pub fn member(&self, s: &str) -> bool {
        self.0.member(s)
    }

    pub fn lub(&self, other: &StringAbs) -> StringAbs {
        StringAbs(self.0.lub(&other.0))
    }

    pub fn leq(&self, other: &StringAbs) -> bool {
        self.0.leq(&other.0)
    }

    /// Inclusion of the languages over the symbol alphabet, `⊤` read as a
    /// letter. Finer than [`StringAbs::leq`]: `a⊤` is not below `⊤`.
    pub fn symbolic_leq(&self, other: &StringAbs) -> bool {
        self.0.lub(&other.0) == other.0
    }

    /// Plain lub while the result has at most `tau` states, the
    /// parametric widening beyond.
    pub fn widen(&self, other: &StringAbs, n: usize, tau: usize) -> StringAbs {
        let lub = self.lub(other);
        if lub.0.num_states() > tau {
            StringAbs(self.0.widen(&other.0, n))
        } else {
            lub
        }
    }

    pub fn concat(&self, other: &StringAbs) -> StringAbs {
        StringAbs(self.0.concat(&other.0))
    }

    pub fn length(&self) -> Result<Interval, DomainError> {
        check(&[self])?;
        let (min, max) = self
            .0
            .length_bounds()
            .map_err(|_| DomainError::BottomInput)?;
        Ok(Interval::new(
            length_of(min),
            max.map_or(Bound::PosInf, length_of),
        ))
    }

    pub fn contains(&self, other: &StringAbs) -> Result<BoolSet, DomainError> {
        check(&[self, other])?;
        let (x, y) = (&self.0, &other.0);
        if shares_no_factor(x, y) {
            return Ok(BoolSet::FALSE);
        }
        if !x.has_cycle() {
            if let (Some(sp), Some(Some(paths))) = (y.single_path(), x.paths(PATH_LIMIT).ok()) {
                if paths
                    .iter()
                    .all(|p| segments(p).iter().any(|s| s.contains(sp.as_str())))
                {
                    return Ok(BoolSet::TRUE);
                }
            }
        }
        if let Some(needles) = y.strings(PATH_LIMIT) {
            if needles.iter().all(|s| x.leq(&surrounded(s))) {
                return Ok(BoolSet::TRUE);
            }
        }
        Ok(BoolSet::TOP)
    }

    pub fn index_of(&self, other: &StringAbs) -> Result<Interval, DomainError> {
        check(&[self, other])?;
        let (x, y) = (&self.0, &other.0);
        let unknown = Interval::new(Bound::Finite(-1), Bound::PosInf);
        if x.has_cycle() || y.has_cycle() || y.reads_top() {
            return Ok(unknown);
        }
        if shares_no_factor(x, y) {
            return Ok(Interval::constant(-1));
        }
        let Some(needles) = y.strings(PATH_LIMIT) else {
            return Ok(unknown);
        };
        let hays = if x.reads_top() {
            None
        } else {
            x.strings(PATH_LIMIT)
        };
        Ok(needles
            .iter()
            .map(|s| first_occurrences(x, hays.as_ref(), s))
            .fold(Interval::Bottom, |acc, i| acc.lub(&i)))
    }

    pub fn replace(&self, search: &StringAbs, repl: &StringAbs) -> Result<StringAbs, DomainError> {
        check(&[self, search, repl])?;
        let (x, s) = (&self.0, &search.0);
        if x.has_cycle() || s.has_cycle() || s.reads_top() || x.reads_top() {
            return Ok(StringAbs::top());
        }
        let Some(needles) = s.strings(PATH_LIMIT) else {
            return Ok(StringAbs::top());
        };
        // an empty search string matches between every pair of characters
        if needles.iter().any(String::is_empty) {
            return Ok(StringAbs::top());
        }
        if shares_no_factor(x, s) {
            return Ok(self.clone());
        }
        let result = if needles.len() == 1 {
            let needle = needles.into_iter().next().expect("one needle");
            make_replace(x, &Needle::Text(needle), &repl.0)
        } else {
            // may-replace: every occurrence keeps the option of staying as is
            needles.iter().try_fold(x.clone(), |acc, needle| {
                let keep = repl.0.lub(&Automaton::from_strings([needle]));
                make_replace(&acc, &Needle::Text(needle.clone()), &keep)
            })
        };
        // a cyclic replacement leaves a cyclic automaton for the next needle
        Ok(StringAbs(result.unwrap_or_else(|_| Automaton::top())))
    }

    pub fn substring(&self, from: &Interval, to: &Interval) -> Result<StringAbs, DomainError> {
        check(&[self])?;
        let (Some((fl, fh)), Some((tl, th))) = (from.bounds(), to.bounds()) else {
            return Err(DomainError::BottomInput);
        };
        let zero = Bound::Finite(0);
        // only 0 ≤ a ≤ b can produce a result
        let (fl, tl) = (fl.max(zero), tl.max(zero));
        let fh = fh.min(th);
        if fh < fl || th < tl || th < fl {
            return Ok(StringAbs::bottom());
        }
        let (Bound::Finite(fl), Bound::Finite(fh), Bound::Finite(tl), Bound::Finite(th)) =
            (fl, fh, tl, th)
        else {
            return Ok(StringAbs(self.0.factors()));
        };
        let pairs = (fh - fl + 1).saturating_mul(th - tl + 1);
        if pairs > SUBSTRING_PAIR_LIMIT {
            return Ok(StringAbs(self.0.factors()));
        }
        if self.0.has_cycle() && walk_count(&self.0, th as usize) > SUBSTRING_WALK_LIMIT {
            return Ok(StringAbs(self.0.factors()));
        }
        let regex = self.to_regex();
        let mut parts = BTreeSet::new();
        for a in fl..=fh {
            for b in tl.max(a)..=th {
                let (a, b) = (a as usize, b as usize);
                parts.extend(
                    regex
                        .rsubs(a, b - a)
                        .into_iter()
                        .filter(|p| p.is_complete()),
                );
            }
        }
        Ok(StringAbs(completed_to_automaton(&parts)))
    }

    pub fn equals(&self, other: &StringAbs) -> Result<BoolSet, DomainError> {
        check(&[self, other])?;
        if let (Some(a), Some(b)) = (self.0.single_string(), other.0.single_string()) {
            return Ok(BoolSet::from(a == b));
        }
        if self.0.intersect_empty(&other.0) {
            return Ok(BoolSet::FALSE);
        }
        Ok(BoolSet::TOP)
    }
}

/// No string of `y` is a substring of a string of `x`. A `⊤` in `x`
/// has every string as a factor, which spares building the factor
/// automaton.
fn shares_no_factor(x: &Automaton, y: &Automaton) -> bool {
    !x.reads_top() && y.intersect_empty(&x.factors())
}

impl fmt::Display for StringAbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            f.write_str("\u{22A5}")
        } else {
            write!(f, "{}", self.to_regex())
        }
    }
}

/// Maximal `⊤`-free stretches of a path, as text.
fn segments(path: &Path) -> Vec<String> {
    let mut out = vec![String::new()];
    for s in &path.0 {
        match s {
            Symbol::Str(t) => out.last_mut().expect("never empty").push_str(t),
            Symbol::Top => out.push(String::new()),
        }
    }
    out
}

/// `⊤ · s · ⊤`: every string containing `s`.
fn surrounded(s: &str) -> Automaton {
    let mut symbols = Vec::new();
    symbols.push(Symbol::Top);
    symbols.extend(s.chars().map(Symbol::char));
    symbols.push(Symbol::Top);
    Automaton::from_symbols(&symbols)
}

/// Interval of `indexOf(s, needle)` over `s ∈ γ(x)`. `hays` is the finite
/// language of `x` when it is known.
fn first_occurrences(x: &Automaton, hays: Option<&BTreeSet<String>>, needle: &str) -> Interval {
    if needle.is_empty() {
        return Interval::constant(0);
    }
    let Some(earliest) = x.earliest_occurrence(needle) else {
        return Interval::constant(-1);
    };
    let must = x.leq(&surrounded(needle));
    let lo = if must {
        length_of(earliest)
    } else {
        Bound::Finite(-1)
    };
    let hi = match hays {
        Some(hays) => hays
            .iter()
            .filter_map(|h| char_find(h, needle))
            .max()
            .map_or(Bound::Finite(-1), length_of),
        None => Bound::PosInf,
    };
    Interval::new(lo, hi)
}

/// Number of symbol walks of length at most `steps` from the initial
/// state, saturating.
fn walk_count(a: &Automaton, steps: usize) -> u64 {
    let mut at = vec![0u64; a.num_states()];
    at[a.initial()] = 1;
    let mut total = 1u64;
    for _ in 0..steps {
        let mut next = vec![0u64; a.num_states()];
        for t in a.transitions() {
            next[t.to] = next[t.to].saturating_add(at[t.from]);
        }
        total = next.iter().fold(total, |acc, &n| acc.saturating_add(n));
        if total > SUBSTRING_WALK_LIMIT {
            return total;
        }
        at = next;
    }
    total
}

/// What [`make_replace`] looks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Needle {
    /// A string, matched at character level inside the `⊤`-free stretches
    /// of each path.
    Text(String),
    /// Every `⊤` transition.
    Top,
}

/// Rewrites every occurrence of `needle` in the paths of `a` with a copy of
/// `repl`. Text needles are matched like a concrete `replace` (leftmost,
/// non-overlapping) within the `⊤`-free stretches of each path, so the
/// result is exact for `⊤`-free automata. Falls back to the top automaton
/// when `a` has more than [`PATH_LIMIT`] paths.
pub fn make_replace(
    a: &Automaton,
    needle: &Needle,
    repl: &Automaton,
) -> Result<Automaton, AutomatonError> {
    if a.has_cycle() {
        return Err(AutomatonError::CyclicAutomaton);
    }
    let needle = match needle {
        Needle::Top => return Ok(replace_top_transitions(a, repl)),
        Needle::Text(t) => t.as_str(),
    };
    let Some(paths) = a.paths(PATH_LIMIT)? else {
        return Ok(Automaton::top());
    };
    let mut transitions = BTreeSet::new();
    let mut finals = BTreeSet::new();
    let mut next = 1;
    let fresh = |next: &mut usize| {
        *next += 1;
        *next - 1
    };
    for path in &paths {
        let mut state = 0;
        for (k, segment) in segments(path).iter().enumerate() {
            if k > 0 {
                let to = fresh(&mut next);
                transitions.insert(Transition::new(state, Symbol::Top, to));
                state = to;
            }
            let mut last = 0;
            for (byte, matched) in segment.match_indices(needle) {
                for c in segment[last..byte].chars() {
                    let to = fresh(&mut next);
                    transitions.insert(Transition::new(state, Symbol::char(c), to));
                    state = to;
                }
                let offset = Automaton::embed(&mut transitions, &mut next, repl);
                let to = fresh(&mut next);
                transitions.insert(Transition::epsilon(state, repl.initial() + offset));
                for &f in repl.finals() {
                    transitions.insert(Transition::epsilon(f + offset, to));
                }
                state = to;
                last = byte + matched.len();
            }
            for c in segment[last..].chars() {
                let to = fresh(&mut next);
                transitions.insert(Transition::new(state, Symbol::char(c), to));
                state = to;
            }
        }
        finals.insert(state);
    }
    Ok(Automaton::new(next, 0, finals, transitions)
        .expect("states are allocated before use")
        .determinize_minimize())
}

fn replace_top_transitions(a: &Automaton, repl: &Automaton) -> Automaton {
    let mut transitions: BTreeSet<Transition> = a
        .transitions()
        .iter()
        .filter(|t| t.label != Label::Sym(Symbol::Top))
        .cloned()
        .collect();
    let mut next = a.num_states();
    for t in a
        .transitions()
        .iter()
        .filter(|t| t.label == Label::Sym(Symbol::Top))
    {
        let offset = Automaton::embed(&mut transitions, &mut next, repl);
        transitions.insert(Transition::epsilon(t.from, repl.initial() + offset));
        for &f in repl.finals() {
            transitions.insert(Transition::epsilon(f + offset, t.to));
        }
    }
    Automaton::new(next, a.initial(), a.finals().iter().copied(), transitions)
        .expect("states are allocated before use")
        .determinize_minimize()
}

/// [`StringAbs`] as a pluggable string domain, with its widening
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TarsisDomain {
    pub widening_n: usize,
    pub tau: usize,
}

impl Default for TarsisDomain {
    fn default() -> TarsisDomain {
        TarsisDomain {
            widening_n: 2,
            tau: 5,
        }
    }
}

impl StringDomain for TarsisDomain {
    type Value = StringAbs;

    fn name(&self) -> &'static str {
        "tarsis"
    }

    fn bottom(&self) -> StringAbs {
        StringAbs::bottom()
    }

    fn constant(&self, s: &str) -> StringAbs {
        StringAbs::constant(s)
    }

    fn unknown(&self) -> StringAbs {
        StringAbs::top()
    }

    fn is_bottom(&self, v: &StringAbs) -> bool {
        v.is_bottom()
    }

    fn lub(&self, a: &StringAbs, b: &StringAbs) -> StringAbs {
        a.lub(b)
    }

    fn leq(&self, a: &StringAbs, b: &StringAbs) -> bool {
        a.leq(b)
    }

    fn widen(&self, a: &StringAbs, b: &StringAbs) -> StringAbs {
        a.widen(b, self.widening_n, self.tau)
    }

    fn stable(&self, a: &StringAbs, b: &StringAbs) -> bool {
        b.symbolic_leq(a)
    }

    fn concat(&self, a: &StringAbs, b: &StringAbs) -> StringAbs {
        a.concat(b)
    }

    fn length(&self, a: &StringAbs) -> Interval {
        a.length().unwrap_or(Interval::Bottom)
    }

    fn contains(&self, a: &StringAbs, b: &StringAbs) -> BoolSet {
        a.contains(b).unwrap_or(BoolSet::BOTTOM)
    }

    fn index_of(&self, a: &StringAbs, b: &StringAbs) -> Interval {
        a.index_of(b).unwrap_or(Interval::Bottom)
    }

    fn replace(&self, a: &StringAbs, search: &StringAbs, repl: &StringAbs) -> StringAbs {
        a.replace(search, repl)
            .unwrap_or_else(|_| StringAbs::bottom())
    }

    fn substring(&self, a: &StringAbs, from: &Interval, to: &Interval) -> StringAbs {
        a.substring(from, to)
            .unwrap_or_else(|_| StringAbs::bottom())
    }

    fn equals(&self, a: &StringAbs, b: &StringAbs) -> BoolSet {
        a.equals(b).unwrap_or(BoolSet::BOTTOM)
    }

    fn member(&self, v: &StringAbs, s: &str) -> bool {
        v.member(s)
    }

    fn first_non_member<'a>(&self, v: &StringAbs, strings: &[&'a str]) -> Option<&'a str> {
        let m = v.automaton().matcher();
        strings.iter().copied().find(|s| !m.accepts(s))
    }

    fn render(&self, v: &StringAbs) -> String {
        v.to_string()
    }
}
