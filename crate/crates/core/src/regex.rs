//! Regular expressions over the automata alphabet and the substring
//! extraction algorithm working on them.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automata::{Automaton, Label, Symbol, Transition};

/// A regular expression over [`Symbol`]s.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Atom(Symbol),
    Or(Box<Regex>, Box<Regex>),
    Seq(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn atom(s: Symbol) -> Regex {
        Regex::Atom(s)
    }

    /// Disjunction, simplifying `∅` and syntactically equal operands.
    pub fn or(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, r) | (r, Regex::Empty) => r,
            (a, b) if a == b => a,
            (a, b) => Regex::Or(Box::new(a), Box::new(b)),
        }
    }

    /// Concatenation, simplifying `∅` and `ε`.
    pub fn seq(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, r) | (r, Regex::Epsilon) => r,
            (a, b) => Regex::Seq(Box::new(a), Box::new(b)),
        }
    }

    pub fn star(r: Regex) -> Regex {
        match r {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            r @ Regex::Star(_) => r,
            r => Regex::Star(Box::new(r)),
        }
    }

    /// Chain of single-character atoms.
    pub fn literal(s: &str) -> Regex {
        s.chars().fold(Regex::Epsilon, |acc, c| {
            Regex::seq(acc, Regex::Atom(Symbol::char(c)))
        })
    }

    /// Regex for the language of `a` (symbol granularity), by state
    /// elimination, removing states with the fewest in·out edges first.
    pub fn from_automaton(a: &Automaton) -> Regex {
        let a = a.trim();
        if a.is_empty_language() {
            return Regex::Empty;
        }
        let n = a.num_states();
        let (start, end) = (n, n + 1);
        let mut edges: BTreeMap<(usize, usize), Regex> = BTreeMap::new();
        let add = |edges: &mut BTreeMap<(usize, usize), Regex>, p, q, r: Regex| {
            let old = edges.remove(&(p, q)).unwrap_or(Regex::Empty);
            edges.insert((p, q), Regex::or(old, r));
        };
        add(&mut edges, start, a.initial(), Regex::Epsilon);
        for &f in a.finals() {
            add(&mut edges, f, end, Regex::Epsilon);
        }
        for t in a.transitions() {
            let r = match &t.label {
                Label::Epsilon => Regex::Epsilon,
                Label::Sym(s) => Regex::Atom(s.clone()),
            };
            add(&mut edges, t.from, t.to, r);
        }
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        while !remaining.is_empty() {
            let cost = |q: usize| {
                let ins = edges.keys().filter(|&&(p, r)| r == q && p != q).count();
                let outs = edges.keys().filter(|&&(p, r)| p == q && r != q).count();
                ins * outs
            };
            let q = *remaining
                .iter()
                .min_by_key(|&&q| (cost(q), q))
                .expect("nonempty");
            remaining.remove(&q);
            let self_loop = edges.remove(&(q, q)).map_or(Regex::Epsilon, Regex::star);
            let incoming: Vec<(usize, Regex)> = edges
                .iter()
                .filter(|(&(_, r), _)| r == q)
                .map(|(&(p, _), e)| (p, e.clone()))
                .collect();
            let outgoing: Vec<(usize, Regex)> = edges
                .iter()
                .filter(|(&(p, _), _)| p == q)
                .map(|(&(_, r), e)| (r, e.clone()))
                .collect();
            edges.retain(|&(p, r), _| p != q && r != q);
            for (p, e_in) in &incoming {
                for (r, e_out) in &outgoing {
                    let path =
                        Regex::seq(e_in.clone(), Regex::seq(self_loop.clone(), e_out.clone()));
                    add(&mut edges, *p, *r, path);
                }
            }
        }
        edges.remove(&(start, end)).unwrap_or(Regex::Empty)
    }

    /// Canonical automaton for the language of the regex.
    pub fn to_automaton(&self) -> Automaton {
        let mut builder = Thompson {
            next: 0,
            transitions: BTreeSet::new(),
        };
        let (s, f) = builder.build(self);
        let finals = BTreeSet::from([f]);
        Automaton::new(builder.next, s, finals, builder.transitions)
            .expect("thompson construction only uses allocated states")
            .determinize_minimize()
    }

    /// Substrings of the strings of `self` starting at character `i` and
    /// spanning `j` characters, as partial results. See [`PartialSubstring`].
    pub fn rsubs(&self, i: usize, j: usize) -> BTreeSet<PartialSubstring> {
        rsubs(self, i, j)
    }
}

struct Thompson {
    next: usize,
    transitions: BTreeSet<Transition>,
}

impl Thompson {
    fn state(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let s = self.state();
        match r {
            Regex::Empty => {
                let f = self.state();
                (s, f)
            }
            Regex::Epsilon => (s, s),
            Regex::Atom(sym) => {
                let f = self.state();
                self.transitions.insert(Transition::new(s, sym.clone(), f));
                (s, f)
            }
            Regex::Or(a, b) => {
                let f = self.state();
                for part in [a, b] {
                    let (ps, pf) = self.build(part);
                    self.transitions.insert(Transition::epsilon(s, ps));
                    self.transitions.insert(Transition::epsilon(pf, f));
                }
                (s, f)
            }
            Regex::Seq(a, b) => {
                let (as_, af) = self.build(a);
                let (bs, bf) = self.build(b);
                self.transitions.insert(Transition::epsilon(s, as_));
                self.transitions.insert(Transition::epsilon(af, bs));
                (s, bf)
            }
            Regex::Star(a) => {
                let (as_, af) = self.build(a);
                self.transitions.insert(Transition::epsilon(s, as_));
                self.transitions.insert(Transition::epsilon(af, s));
                (s, s)
            }
        }
    }
}

fn needs_parens_in_seq(r: &Regex) -> bool {
    matches!(r, Regex::Or(..))
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Empty => f.write_str("\u{2205}"),
            Regex::Epsilon => f.write_str("\u{03B5}"),
            Regex::Atom(s) => write!(f, "{s}"),
            Regex::Or(a, b) => write!(f, "{a} || {b}"),
            Regex::Seq(a, b) => {
                for part in [a, b] {
                    if needs_parens_in_seq(part) {
                        write!(f, "({part})")?;
                    } else {
                        write!(f, "{part}")?;
                    }
                }
                Ok(())
            }
            Regex::Star(a) => write!(f, "({a})*"),
        }
    }
}

/// A character of a partial substring: known, or read from a `⊤` segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TextChar {
    Known(char),
    /// `•`: some character coming from an unknown string.
    Unknown,
}

/// Triple `(text, to_skip, to_take)`: the substring collected so far, the
/// characters still to skip before it starts and the characters still
/// missing. A triple with both counters at zero is complete.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialSubstring {
    pub text: Vec<TextChar>,
    pub to_skip: usize,
    pub to_take: usize,
}

impl PartialSubstring {
    pub fn new(text: Vec<TextChar>, to_skip: usize, to_take: usize) -> PartialSubstring {
        PartialSubstring {
            text,
            to_skip,
            to_take,
        }
    }

    pub fn known(text: &str, to_skip: usize, to_take: usize) -> PartialSubstring {
        PartialSubstring::new(
            text.chars().map(TextChar::Known).collect(),
            to_skip,
            to_take,
        )
    }

    pub fn is_complete(&self) -> bool {
        self.to_skip == 0 && self.to_take == 0
    }

    /// The text, when no character of it is unknown.
    pub fn known_text(&self) -> Option<String> {
        self.text
            .iter()
            .map(|c| match c {
                TextChar::Known(c) => Some(*c),
                TextChar::Unknown => None,
            })
            .collect()
    }

    /// The symbol string for the text: known characters become single
    /// character symbols, every maximal run of `•` becomes one `⊤`.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for c in &self.text {
            match c {
                TextChar::Known(c) => out.push(Symbol::char(*c)),
                TextChar::Unknown => {
                    if out.last() != Some(&Symbol::Top) {
                        out.push(Symbol::Top);
                    }
                }
            }
        }
        out
    }
}

/// Lub of the singleton automata of the complete triples.
pub fn completed_to_automaton(parts: &BTreeSet<PartialSubstring>) -> Automaton {
    Automaton::from_symbol_strings(
        parts
            .iter()
            .filter(|p| p.is_complete())
            .map(PartialSubstring::symbols),
    )
}

const STAR_ROUNDS_CAP: usize = 100_000;

type Memo = BTreeMap<(usize, usize, usize), BTreeSet<PartialSubstring>>;

fn rsubs(r: &Regex, i: usize, j: usize) -> BTreeSet<PartialSubstring> {
    let mut memo = Memo::new();
    rsubs_memo(r, i, j, &mut memo)
}

fn rsubs_memo(r: &Regex, i: usize, j: usize, memo: &mut Memo) -> BTreeSet<PartialSubstring> {
    let key = (r as *const Regex as usize, i, j);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let out = rsubs_step(r, i, j, memo);
    memo.insert(key, out.clone());
    out
}

fn rsubs_step(r: &Regex, i: usize, j: usize, memo: &mut Memo) -> BTreeSet<PartialSubstring> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => BTreeSet::from([PartialSubstring::new(Vec::new(), i, j)]),
        Regex::Atom(Symbol::Str(s)) => {
            let chars: Vec<char> = s.chars().collect();
            let len = chars.len();
            let p = if i >= len {
                PartialSubstring::new(Vec::new(), i - len, j)
            } else if i + j > len {
                PartialSubstring::new(
                    chars[i..].iter().map(|&c| TextChar::Known(c)).collect(),
                    0,
                    j - (len - i),
                )
            } else {
                PartialSubstring::new(
                    chars[i..i + j]
                        .iter()
                        .map(|&c| TextChar::Known(c))
                        .collect(),
                    0,
                    0,
                )
            };
            BTreeSet::from([p])
        }
        Regex::Atom(Symbol::Top) => {
            let mut out: BTreeSet<PartialSubstring> = (0..=i)
                .map(|k| PartialSubstring::new(Vec::new(), i - k, j))
                .collect();
            out.extend(
                (0..=j).map(|k| PartialSubstring::new(vec![TextChar::Unknown; k], 0, j - k)),
            );
            out
        }
        Regex::Or(a, b) => {
            let mut out = rsubs_memo(a, i, j, memo);
            out.extend(rsubs_memo(b, i, j, memo));
            out
        }
        Regex::Seq(a, b) => {
            let mut out = BTreeSet::new();
            for first in rsubs_memo(a, i, j, memo) {
                if first.is_complete() {
                    out.insert(first);
                    continue;
                }
                for second in rsubs_memo(b, first.to_skip, first.to_take, memo) {
                    let mut text = first.text.clone();
                    text.extend(second.text);
                    out.insert(PartialSubstring::new(text, second.to_skip, second.to_take));
                }
            }
            out
        }
        Regex::Star(inner) => {
            let mut result = BTreeSet::from([PartialSubstring::new(Vec::new(), i, j)]);
            let mut frontier: Vec<PartialSubstring> = result.iter().cloned().collect();
            let mut rounds = 0;
            while !frontier.is_empty() {
                rounds += 1;
                assert!(
                    rounds <= STAR_ROUNDS_CAP,
                    "substring extraction on a starred regex did not converge"
                );
                let mut next = Vec::new();
                for p in frontier {
                    if p.is_complete() {
                        continue;
                    }
                    for suffix in rsubs_memo(inner, p.to_skip, p.to_take, memo) {
                        let mut text = p.text.clone();
                        text.extend(suffix.text);
                        let candidate = PartialSubstring::new(text, suffix.to_skip, suffix.to_take);
                        if result.insert(candidate.clone()) {
                            next.push(candidate);
                        }
                    }
                }
                frontier = next;
            }
            result
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn completed_texts(r: &Regex, i: usize, j: usize) -> BTreeSet<String> {
        r.rsubs(i, j)
            .into_iter()
            .filter(PartialSubstring::is_complete)
            .map(|p| {
                p.text
                    .iter()
                    .map(|c| match c {
                        TextChar::Known(c) => *c,
                        TextChar::Unknown => '\u{2022}',
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn atom_slices_are_end_exclusive() {
        let r = Regex::Atom(Symbol::text("hello"));
        assert_eq!(
            r.rsubs(1, 2),
            BTreeSet::from([PartialSubstring::known("el", 0, 0)])
        );
        assert_eq!(
            r.rsubs(7, 2),
            BTreeSet::from([PartialSubstring::known("", 2, 2)])
        );
        assert_eq!(
            r.rsubs(3, 4),
            BTreeSet::from([PartialSubstring::known("lo", 0, 2)])
        );
    }

    #[test]
    fn top_produces_unknown_characters() {
        let got = Regex::Atom(Symbol::Top).rsubs(0, 2);
        let u = TextChar::Unknown;
        let expected = BTreeSet::from([
            PartialSubstring::new(vec![], 0, 2),
            PartialSubstring::new(vec![u], 0, 1),
            PartialSubstring::new(vec![u, u], 0, 0),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn substring_of_the_two_messages() {
        let a = Automaton::from_strings(["substring test passed", "substring test failed"]);
        let r = Regex::from_automaton(&a);
        let texts = completed_texts(&r, 5, 13);
        let expected: BTreeSet<String> =
            ["ring test pas", "ring test fai"].map(String::from).into();
        assert_eq!(texts, expected);
    }

    #[test]
    fn empty_span_needs_a_long_enough_string() {
        let r = Regex::literal("ab");
        assert_eq!(completed_texts(&r, 2, 0), BTreeSet::from([String::new()]));
        assert!(completed_texts(&r, 3, 0).is_empty());
        assert!(completed_texts(&r, 1, 2).is_empty());
    }

    #[test]
    fn star_iterates_the_body() {
        let r = Regex::star(Regex::literal("ab"));
        assert_eq!(
            completed_texts(&r, 1, 3),
            BTreeSet::from([String::from("bab")])
        );
        assert_eq!(completed_texts(&r, 0, 0), BTreeSet::from([String::new()]));
    }

    #[test]
    fn completed_triples_become_automata() {
        let parts = BTreeSet::from([PartialSubstring::known("ab", 0, 0)]);
        assert_eq!(
            completed_to_automaton(&parts),
            Automaton::from_strings(["ab"])
        );
        let u = TextChar::Unknown;
        let a = completed_to_automaton(&BTreeSet::from([PartialSubstring::new(
            vec![TextChar::Known('a'), u, u, TextChar::Known('b')],
            0,
            0,
        )]));
        assert!(a.member("axxb") && a.member("ab") && !a.member("a"));
        let incomplete = BTreeSet::from([PartialSubstring::known("x", 1, 0)]);
        assert_eq!(completed_to_automaton(&incomplete), Automaton::empty());
    }

    #[test]
    fn state_elimination_round_trips() {
        let cases = [
            Automaton::from_strings(["ab"]),
            Automaton::from_strings(["ab", "b", ""]),
            Automaton::from_strings(["a"])
                .star()
                .concat(&Automaton::from_strings(["b"])),
            Automaton::from_symbols(&[Symbol::text("id = "), Symbol::Top]).star(),
            Automaton::empty(),
            Automaton::epsilon(),
        ];
        for a in cases {
            assert_eq!(Regex::from_automaton(&a).to_automaton(), a);
        }
        assert_eq!(Regex::from_automaton(&Automaton::empty()), Regex::Empty);
    }

    #[test]
    fn printer_uses_table_notation() {
        let loop_ = Regex::seq(
            Regex::literal("R: "),
            Regex::star(Regex::seq(Regex::Atom(Symbol::Top), Regex::literal("!"))),
        );
        assert_eq!(loop_.to_string(), "R: (\u{22A4}!)*");
        let alt = Regex::or(Regex::literal("ab"), Regex::literal("cd"));
        assert_eq!(alt.to_string(), "ab || cd");
        assert_eq!(
            Regex::seq(Regex::literal("x"), alt).to_string(),
            "x(ab || cd)"
        );
    }
}
