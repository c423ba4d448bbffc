//! Baseline string domains used for comparison: prefix, suffix, character
//! inclusion, and plain character-level automata.
//!
//! Every baseline value also remembers when it is an exact constant, so
//! straight-line code over literals stays precise in all of them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{BoolSet, Bound, Interval, StringDomain};
use crate::automata::{Automaton, Label, Symbol, Transition, FRESH};
use crate::regex::Regex;
use crate::tarsis::StringAbs;

fn char_len(s: &str) -> i64 {
    i64::try_from(s.chars().count()).unwrap_or(i64::MAX)
}

/// Concrete `substring` with end-exclusive character indices.
fn slice(s: &str, i: i64, j: i64) -> Option<String> {
    if i < 0 || j < i || j > char_len(s) {
        return None;
    }
    Some(s.chars().skip(i as usize).take((j - i) as usize).collect())
}

/// Every `s[a..b)` for `a ∈ from`, `b ∈ to`, when there are few pairs.
fn exact_substrings(s: &str, from: &Interval, to: &Interval) -> Option<BTreeSet<String>> {
    let len = char_len(s);
    let (fl, fh) = from.glb(&Interval::finite(0, len)).finite_bounds()?;
    let (tl, th) = to.glb(&Interval::finite(0, len)).finite_bounds()?;
    if (fh - fl + 1) * (th - tl + 1) > 10_000 {
        return None;
    }
    let mut out = BTreeSet::new();
    for a in fl..=fh {
        for b in tl.max(a)..=th {
            out.extend(slice(s, a, b));
        }
    }
    Some(out)
}

fn index_of_exact(s: &str, needle: &str) -> i64 {
    s.find(needle).map_or(-1, |byte| char_len(&s[..byte]))
}

fn unknown_index() -> Interval {
    Interval::new(Bound::Finite(-1), Bound::PosInf)
}

fn common_prefix(a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .collect()
}

fn common_suffix(a: &str, b: &str) -> String {
    let rev: String = a
        .chars()
        .rev()
        .zip(b.chars().rev())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .collect();
    rev.chars().rev().collect()
}

/// Value of the prefix and suffix domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Affix {
    Bottom,
    /// Exactly this string.
    Exact(String),
    /// Any string with this prefix (or suffix); the empty affix is top.
    Affix(String),
}

impl Affix {
    fn known(&self) -> &str {
        match self {
            Affix::Exact(s) | Affix::Affix(s) => s,
            Affix::Bottom => "",
        }
    }

    fn render(&self) -> String {
        match self {
            Affix::Bottom => String::from("\u{22A5}"),
            Affix::Exact(s) => format!("\"{s}\""),
            Affix::Affix(s) if s.is_empty() => String::from("\u{03B5}"),
            Affix::Affix(s) => s.clone(),
        }
    }
}

/// Operations shared by the prefix and suffix domains, parameterized by
/// the side the affix is kept on.
trait Side {
    const PREFIX: bool;

    fn common(a: &str, b: &str) -> String {
        if Self::PREFIX {
            common_prefix(a, b)
        } else {
            common_suffix(a, b)
        }
    }

    fn has(s: &str, affix: &str) -> bool {
        if Self::PREFIX {
            s.starts_with(affix)
        } else {
            s.ends_with(affix)
        }
    }

    fn lub(a: &Affix, b: &Affix) -> Affix {
        match (a, b) {
            (Affix::Bottom, v) | (v, Affix::Bottom) => v.clone(),
            (Affix::Exact(x), Affix::Exact(y)) if x == y => a.clone(),
            _ => Affix::Affix(Self::common(a.known(), b.known())),
        }
    }

    fn leq(a: &Affix, b: &Affix) -> bool {
        match (a, b) {
            (Affix::Bottom, _) => true,
            (_, Affix::Bottom) => false,
            (Affix::Exact(x), Affix::Exact(y)) => x == y,
            (Affix::Affix(_), Affix::Exact(_)) => false,
            (_, Affix::Affix(y)) => Self::has(a.known(), y),
        }
    }

    fn member(v: &Affix, s: &str) -> bool {
        match v {
            Affix::Bottom => false,
            Affix::Exact(x) => x == s,
            Affix::Affix(x) => Self::has(s, x),
        }
    }
}

enum PrefixSide {}
enum SuffixSide {}

impl Side for PrefixSide {
    const PREFIX: bool = true;
}

impl Side for SuffixSide {
    const PREFIX: bool = false;
}

fn affix_length(v: &Affix) -> Interval {
    match v {
        Affix::Bottom => Interval::Bottom,
        Affix::Exact(s) => Interval::constant(char_len(s)),
        Affix::Affix(s) => Interval::at_least(char_len(s)),
    }
}

fn affix_contains(v: &Affix, needle: &Affix) -> BoolSet {
    match (v, needle) {
        (Affix::Bottom, _) | (_, Affix::Bottom) => BoolSet::BOTTOM,
        (Affix::Exact(s), Affix::Exact(n)) => BoolSet::from(s.contains(n.as_str())),
        (Affix::Affix(s), Affix::Exact(n)) if s.contains(n.as_str()) => BoolSet::TRUE,
        (_, Affix::Affix(n)) if n.is_empty() => BoolSet::TOP,
        (Affix::Exact(s), Affix::Affix(_)) if s.is_empty() => BoolSet::FALSE,
        _ => BoolSet::TOP,
    }
}

fn affix_equals(a: &Affix, b: &Affix) -> BoolSet {
    match (a, b) {
        (Affix::Bottom, _) | (_, Affix::Bottom) => BoolSet::BOTTOM,
        (Affix::Exact(x), Affix::Exact(y)) => BoolSet::from(x == y),
        _ => BoolSet::TOP,
    }
}

fn affix_replace(a: &Affix, s: &Affix, r: &Affix) -> Affix {
    match (a, s, r) {
        (Affix::Bottom, _, _) | (_, Affix::Bottom, _) | (_, _, Affix::Bottom) => Affix::Bottom,
        (Affix::Exact(a), Affix::Exact(s), Affix::Exact(r)) => {
            Affix::Exact(a.replace(s.as_str(), r))
        }
        _ => Affix::Affix(String::new()),
    }
}

fn affix_substring(a: &Affix, from: &Interval, to: &Interval, prefix: bool) -> Affix {
    if from.is_bottom() || to.is_bottom() {
        return Affix::Bottom;
    }
    match a {
        Affix::Bottom => Affix::Bottom,
        Affix::Exact(s) => match exact_substrings(s, from, to) {
            Some(set) => {
                let mut it = set.iter();
                match it.next() {
                    None => Affix::Bottom,
                    Some(first) => it.fold(Affix::Exact(first.clone()), |acc, s| {
                        let next = Affix::Exact(s.clone());
                        if prefix {
                            PrefixSide::lub(&acc, &next)
                        } else {
                            SuffixSide::lub(&acc, &next)
                        }
                    }),
                }
            }
            None => Affix::Affix(String::new()),
        },
        Affix::Affix(p) if prefix => {
            // a slice lying entirely inside the known prefix is exact
            match (from.singleton(), to.singleton()) {
                (Some(i), Some(j)) if j <= char_len(p) => {
                    slice(p, i, j).map_or(Affix::Bottom, Affix::Exact)
                }
                _ => Affix::Affix(String::new()),
            }
        }
        Affix::Affix(_) => Affix::Affix(String::new()),
    }
}

/// The prefix domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrefixDomain;

impl StringDomain for PrefixDomain {
    type Value = Affix;

    fn name(&self) -> &'static str {
        "prefix"
    }

    fn bottom(&self) -> Affix {
        Affix::Bottom
    }

    fn constant(&self, s: &str) -> Affix {
        Affix::Exact(s.to_string())
    }

    fn unknown(&self) -> Affix {
        Affix::Affix(String::new())
    }

    fn is_bottom(&self, v: &Affix) -> bool {
        *v == Affix::Bottom
    }

    fn lub(&self, a: &Affix, b: &Affix) -> Affix {
        PrefixSide::lub(a, b)
    }

    fn leq(&self, a: &Affix, b: &Affix) -> bool {
        PrefixSide::leq(a, b)
    }

    fn widen(&self, a: &Affix, b: &Affix) -> Affix {
        PrefixSide::lub(a, b)
    }

    fn concat(&self, a: &Affix, b: &Affix) -> Affix {
        match (a, b) {
            (Affix::Bottom, _) | (_, Affix::Bottom) => Affix::Bottom,
            (Affix::Exact(x), Affix::Exact(y)) => Affix::Exact(format!("{x}{y}")),
            (Affix::Exact(x), Affix::Affix(y)) => Affix::Affix(format!("{x}{y}")),
            (Affix::Affix(x), _) => Affix::Affix(x.clone()),
        }
    }

    fn length(&self, a: &Affix) -> Interval {
        affix_length(a)
    }

    fn contains(&self, a: &Affix, b: &Affix) -> BoolSet {
        affix_contains(a, b)
    }

    fn index_of(&self, a: &Affix, b: &Affix) -> Interval {
        match (a, b) {
            (Affix::Bottom, _) | (_, Affix::Bottom) => Interval::Bottom,
            (Affix::Exact(s), Affix::Exact(n)) => Interval::constant(index_of_exact(s, n)),
            // the first occurrence inside the known prefix is the first overall
            (Affix::Affix(p), Affix::Exact(n)) if p.contains(n.as_str()) => {
                Interval::constant(index_of_exact(p, n))
            }
            _ => unknown_index(),
        }
    }

    fn replace(&self, a: &Affix, search: &Affix, repl: &Affix) -> Affix {
        affix_replace(a, search, repl)
    }

    fn substring(&self, a: &Affix, from: &Interval, to: &Interval) -> Affix {
        affix_substring(a, from, to, true)
    }

    fn equals(&self, a: &Affix, b: &Affix) -> BoolSet {
        affix_equals(a, b)
    }

    fn member(&self, v: &Affix, s: &str) -> bool {
        PrefixSide::member(v, s)
    }

    fn render(&self, v: &Affix) -> String {
        v.render()
    }
}

/// The suffix domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuffixDomain;

impl StringDomain for SuffixDomain {
    type Value = Affix;

    fn name(&self) -> &'static str {
        "suffix"
    }

    fn bottom(&self) -> Affix {
        Affix::Bottom
    }

    fn constant(&self, s: &str) -> Affix {
        Affix::Exact(s.to_string())
    }

    fn unknown(&self) -> Affix {
        Affix::Affix(String::new())
    }

    fn is_bottom(&self, v: &Affix) -> bool {
        *v == Affix::Bottom
    }

    fn lub(&self, a: &Affix, b: &Affix) -> Affix {
        SuffixSide::lub(a, b)
    }

    fn leq(&self, a: &Affix, b: &Affix) -> bool {
        SuffixSide::leq(a, b)
    }

    fn widen(&self, a: &Affix, b: &Affix) -> Affix {
        SuffixSide::lub(a, b)
    }

    fn concat(&self, a: &Affix, b: &Affix) -> Affix {
        match (a, b) {
            (Affix::Bottom, _) | (_, Affix::Bottom) => Affix::Bottom,
            (Affix::Exact(x), Affix::Exact(y)) => Affix::Exact(format!("{x}{y}")),
            (Affix::Affix(x), Affix::Exact(y)) => Affix::Affix(format!("{x}{y}")),
            (_, Affix::Affix(y)) => Affix::Affix(y.clone()),
        }
    }

    fn length(&self, a: &Affix) -> Interval {
        affix_length(a)
    }

    fn contains(&self, a: &Affix, b: &Affix) -> BoolSet {
        affix_contains(a, b)
    }

    fn index_of(&self, a: &Affix, b: &Affix) -> Interval {
        match (a, b) {
            (Affix::Bottom, _) | (_, Affix::Bottom) => Interval::Bottom,
            (Affix::Exact(s), Affix::Exact(n)) => Interval::constant(index_of_exact(s, n)),
            _ => unknown_index(),
        }
    }

    fn replace(&self, a: &Affix, search: &Affix, repl: &Affix) -> Affix {
        affix_replace(a, search, repl)
    }

    fn substring(&self, a: &Affix, from: &Interval, to: &Interval) -> Affix {
        affix_substring(a, from, to, false)
    }

    fn equals(&self, a: &Affix, b: &Affix) -> BoolSet {
        affix_equals(a, b)
    }

    fn member(&self, v: &Affix, s: &str) -> bool {
        SuffixSide::member(v, s)
    }

    fn render(&self, v: &Affix) -> String {
        v.render()
    }
}

/// Value of the character inclusion domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CharSet {
    Bottom,
    Chars {
        /// Characters occurring in every string.
        certain: BTreeSet<char>,
        /// Characters that may occur; `None` means any character.
        possible: Option<BTreeSet<char>>,
        exact: Option<String>,
    },
}

impl CharSet {
    fn of(s: &str) -> CharSet {
        let chars: BTreeSet<char> = s.chars().collect();
        CharSet::Chars {
            certain: chars.clone(),
            possible: Some(chars),
            exact: Some(s.to_string()),
        }
    }

    fn any() -> CharSet {
        CharSet::Chars {
            certain: BTreeSet::new(),
            possible: None,
            exact: None,
        }
    }

    fn may_contain(&self, c: char) -> bool {
        match self {
            CharSet::Bottom => false,
            CharSet::Chars { possible, .. } => possible.as_ref().is_none_or(|p| p.contains(&c)),
        }
    }
}

fn union_possible(
    a: &Option<BTreeSet<char>>,
    b: &Option<BTreeSet<char>>,
) -> Option<BTreeSet<char>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.union(y).copied().collect()),
        _ => None,
    }
}

/// The character inclusion domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CharInclusionDomain;

impl StringDomain for CharInclusionDomain {
    type Value = CharSet;

    fn name(&self) -> &'static str {
        "charinclusion"
    }

    fn bottom(&self) -> CharSet {
        CharSet::Bottom
    }

    fn constant(&self, s: &str) -> CharSet {
        CharSet::of(s)
    }

    fn unknown(&self) -> CharSet {
        CharSet::any()
    }

    fn is_bottom(&self, v: &CharSet) -> bool {
        *v == CharSet::Bottom
    }

    fn lub(&self, a: &CharSet, b: &CharSet) -> CharSet {
        match (a, b) {
            (CharSet::Bottom, v) | (v, CharSet::Bottom) => v.clone(),
            (
                CharSet::Chars {
                    certain: c1,
                    possible: p1,
                    exact: e1,
                },
                CharSet::Chars {
                    certain: c2,
                    possible: p2,
                    exact: e2,
                },
            ) => CharSet::Chars {
                certain: c1.intersection(c2).copied().collect(),
                possible: union_possible(p1, p2),
                exact: if e1 == e2 { e1.clone() } else { None },
            },
        }
    }

    fn leq(&self, a: &CharSet, b: &CharSet) -> bool {
        match (a, b) {
            (CharSet::Bottom, _) => true,
            (_, CharSet::Bottom) => false,
            (
                CharSet::Chars {
                    certain: c1,
                    possible: p1,
                    exact: e1,
                },
                CharSet::Chars {
                    certain: c2,
                    possible: p2,
                    exact: e2,
                },
            ) => {
                let possible_ok = match (p1, p2) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(x), Some(y)) => x.is_subset(y),
                };
                c2.is_subset(c1) && possible_ok && (e2.is_none() || e1 == e2)
            }
        }
    }

    fn widen(&self, a: &CharSet, b: &CharSet) -> CharSet {
        self.lub(a, b)
    }

    fn concat(&self, a: &CharSet, b: &CharSet) -> CharSet {
        match (a, b) {
            (CharSet::Bottom, _) | (_, CharSet::Bottom) => CharSet::Bottom,
            (
                CharSet::Chars {
                    certain: c1,
                    possible: p1,
                    exact: e1,
                },
                CharSet::Chars {
                    certain: c2,
                    possible: p2,
                    exact: e2,
                },
            ) => CharSet::Chars {
                certain: c1.union(c2).copied().collect(),
                possible: union_possible(p1, p2),
                exact: match (e1, e2) {
                    (Some(x), Some(y)) => Some(format!("{x}{y}")),
                    _ => None,
                },
            },
        }
    }

    fn length(&self, a: &CharSet) -> Interval {
        match a {
            CharSet::Bottom => Interval::Bottom,
            CharSet::Chars { exact: Some(s), .. } => Interval::constant(char_len(s)),
            CharSet::Chars {
                certain, possible, ..
            } => {
                let lo = i64::try_from(certain.len()).unwrap_or(i64::MAX);
                match possible {
                    Some(p) if p.is_empty() => Interval::constant(0),
                    _ => Interval::at_least(lo),
                }
            }
        }
    }

    fn contains(&self, a: &CharSet, b: &CharSet) -> BoolSet {
        match (a, b) {
            (CharSet::Bottom, _) | (_, CharSet::Bottom) => BoolSet::BOTTOM,
            (CharSet::Chars { exact: Some(s), .. }, CharSet::Chars { exact: Some(n), .. }) => {
                BoolSet::from(s.contains(n.as_str()))
            }
            (CharSet::Chars { certain, .. }, CharSet::Chars { exact: Some(n), .. }) => {
                let mut chars = n.chars();
                match (chars.next(), chars.next()) {
                    (None, _) => BoolSet::TRUE,
                    (Some(c), None) if certain.contains(&c) => BoolSet::TRUE,
                    _ if n.chars().any(|c| !a.may_contain(c)) => BoolSet::FALSE,
                    _ => BoolSet::TOP,
                }
            }
            _ => BoolSet::TOP,
        }
    }

    fn index_of(&self, a: &CharSet, b: &CharSet) -> Interval {
        match (a, b) {
            (CharSet::Bottom, _) | (_, CharSet::Bottom) => Interval::Bottom,
            (CharSet::Chars { exact: Some(s), .. }, CharSet::Chars { exact: Some(n), .. }) => {
                Interval::constant(index_of_exact(s, n))
            }
            _ if self.contains(a, b) == BoolSet::FALSE => Interval::constant(-1),
            _ => unknown_index(),
        }
    }

    fn replace(&self, a: &CharSet, search: &CharSet, repl: &CharSet) -> CharSet {
        match (a, search, repl) {
            (CharSet::Bottom, _, _) | (_, CharSet::Bottom, _) | (_, _, CharSet::Bottom) => {
                CharSet::Bottom
            }
            (
                CharSet::Chars { exact: Some(x), .. },
                CharSet::Chars { exact: Some(s), .. },
                CharSet::Chars { exact: Some(r), .. },
            ) => CharSet::of(&x.replace(s.as_str(), r)),
            (CharSet::Chars { possible: p1, .. }, _, CharSet::Chars { possible: p2, .. }) => {
                CharSet::Chars {
                    certain: BTreeSet::new(),
                    possible: union_possible(p1, p2),
                    exact: None,
                }
            }
        }
    }

    fn substring(&self, a: &CharSet, from: &Interval, to: &Interval) -> CharSet {
        if from.is_bottom() || to.is_bottom() {
            return CharSet::Bottom;
        }
        match a {
            CharSet::Bottom => CharSet::Bottom,
            CharSet::Chars { exact: Some(s), .. }
                if from.singleton().is_some() && to.singleton().is_some() =>
            {
                let (i, j) = (from.singleton().unwrap_or(0), to.singleton().unwrap_or(0));
                slice(s, i, j).map_or(CharSet::Bottom, |t| CharSet::of(&t))
            }
            // every character of the receiver becomes only possible
            CharSet::Chars { possible, .. } => CharSet::Chars {
                certain: BTreeSet::new(),
                possible: possible.clone(),
                exact: None,
            },
        }
    }

    fn equals(&self, a: &CharSet, b: &CharSet) -> BoolSet {
        match (a, b) {
            (CharSet::Bottom, _) | (_, CharSet::Bottom) => BoolSet::BOTTOM,
            (CharSet::Chars { exact: Some(x), .. }, CharSet::Chars { exact: Some(y), .. }) => {
                BoolSet::from(x == y)
            }
            _ => BoolSet::TOP,
        }
    }

    fn member(&self, v: &CharSet, s: &str) -> bool {
        match v {
            CharSet::Bottom => false,
            CharSet::Chars {
                certain,
                possible,
                exact,
            } => {
                exact.as_ref().is_none_or(|e| e == s)
                    && certain.iter().all(|c| s.contains(*c))
                    && s.chars()
                        .all(|c| possible.as_ref().is_none_or(|p| p.contains(&c)))
            }
        }
    }

    fn render(&self, v: &CharSet) -> String {
        match v {
            CharSet::Bottom => String::from("\u{22A5}"),
            CharSet::Chars {
                certain, possible, ..
            } => {
                let certain: String = certain.iter().collect();
                let possible = match possible {
                    Some(p) => p.iter().collect::<String>(),
                    None => format!("{}\u{22A4}", certain),
                };
                format!("[{certain}][{possible}]")
            }
        }
    }
}

/// Character-level automata without `⊤`: an unknown string is a loop over
/// every character of the program plus the fresh character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFaDomain {
    chars: BTreeSet<char>,
    pub widening_n: usize,
    pub tau: usize,
}

impl CharFaDomain {
    pub fn new(
        chars: impl IntoIterator<Item = char>,
        widening_n: usize,
        tau: usize,
    ) -> CharFaDomain {
        let mut chars: BTreeSet<char> = chars.into_iter().collect();
        chars.remove(&FRESH);
        CharFaDomain {
            chars,
            widening_n,
            tau,
        }
    }

    /// Replaces `⊤` and multi-character labels by their character-level
    /// encoding.
    fn lower(&self, v: StringAbs) -> StringAbs {
        let a = v.automaton();
        if !a.reads_top() && a.is_char_level() {
            return v;
        }
        let mut chars = self.chars.clone();
        chars.extend(a.chars());
        StringAbs::from_automaton(&a.flatten_over(&chars))
    }

    /// Undoes the encoding of unknown strings for display: a state looping
    /// on every character shows a `⊤` loop instead.
    fn raise(&self, a: &Automaton) -> Automaton {
        let mut everything = self.chars.clone();
        everything.extend(a.chars());
        everything.insert(FRESH);
        let mut loops: Vec<BTreeSet<char>> = alloc::vec![BTreeSet::new(); a.num_states()];
        for t in a.transitions() {
            if let (true, Label::Sym(Symbol::Str(s))) = (t.from == t.to, &t.label) {
                loops[t.from].extend(s.chars());
            }
        }
        let full: Vec<bool> = loops.iter().map(|l| everything.is_subset(l)).collect();
        let transitions = a.transitions().iter().map(|t| {
            if t.from == t.to && full[t.from] {
                return Transition::new(t.from, Symbol::Top, t.to);
            }
            if let Label::Sym(Symbol::Str(s)) = &t.label {
                if s.chars().all(|c| c == FRESH) {
                    return Transition::new(t.from, Symbol::Top, t.to);
                }
            }
            t.clone()
        });
        let transitions: BTreeSet<Transition> = transitions.collect();
        Automaton::new(
            a.num_states(),
            a.initial(),
            a.finals().iter().copied(),
            transitions,
        )
        .expect("same states")
    }
}

impl StringDomain for CharFaDomain {
    type Value = StringAbs;

    fn name(&self) -> &'static str {
        "charfa"
    }

    fn bottom(&self) -> StringAbs {
        StringAbs::bottom()
    }

    fn constant(&self, s: &str) -> StringAbs {
        StringAbs::constant(s)
    }

    fn unknown(&self) -> StringAbs {
        self.lower(StringAbs::top())
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
        self.lower(
            a.replace(search, repl)
                .unwrap_or_else(|_| StringAbs::bottom()),
        )
    }

    fn substring(&self, a: &StringAbs, from: &Interval, to: &Interval) -> StringAbs {
        self.lower(
            a.substring(from, to)
                .unwrap_or_else(|_| StringAbs::bottom()),
        )
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
        if v.is_bottom() {
            return String::from("\u{22A5}");
        }
        Regex::from_automaton(&self.raise(v.automaton())).to_string()
    }
}
