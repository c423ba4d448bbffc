//! Randomized invariants: soundness of every string operation against
//! concrete evaluation, widening laws, substring extraction against brute
//! force, and parser round trips.

use std::collections::BTreeSet;

use proptest::prelude::*;

use tarsis::analysis::oracle::{check_all, Part, Shape};
use tarsis::automata::{Automaton, Symbol};
use tarsis::imp::{
    parse, pretty, BinOp, Builtin, Expr, ExprKind, Pos, Program, Stmt, StmtKind, UnOp,
};
use tarsis::regex::Regex;
use tarsis::tarsis::{StringAbs, TarsisDomain};
use tarsis::value_domains::baseline::{
    CharFaDomain, CharInclusionDomain, PrefixDomain, SuffixDomain,
};
use tarsis::value_domains::{Bound, Interval, StringDomain};

fn word() -> impl Strategy<Value = String> {
    "[abc]{0,6}"
}

fn part() -> impl Strategy<Value = Part> {
    prop_oneof![4 => word().prop_map(Part::Word), 1 => Just(Part::Top)]
}

fn finite_shape() -> impl Strategy<Value = Shape> {
    prop::collection::vec(word(), 1..=4).prop_map(Shape::words)
}

fn top_shape() -> impl Strategy<Value = Shape> {
    prop::collection::vec(prop::collection::vec(part(), 1..=3), 1..=3).prop_map(Shape)
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![finite_shape(), top_shape()]
}

fn bound_interval() -> impl Strategy<Value = Interval> {
    prop_oneof![
        3 => (-1i64..8, 0i64..4).prop_map(|(lo, w)| Interval::finite(lo, lo + w)),
        1 => (0i64..6).prop_map(Interval::at_least),
        1 => (-1i64..6).prop_map(|hi| Interval::new(Bound::NegInf, Bound::Finite(hi))),
    ]
}

fn assert_sound<D: StringDomain>(
    dom: &D,
    a: &Shape,
    b: &Shape,
    c: &Shape,
    from: &Interval,
    to: &Interval,
) -> Result<(), TestCaseError> {
    let (a, b, c) = (a.witnessed(dom), b.witnessed(dom), c.witnessed(dom));
    let bad = check_all(dom, &a, &b, &c, from, to);
    prop_assert!(bad.is_empty(), "{}: {}", dom.name(), bad[0]);
    Ok(())
}

fn charfa() -> CharFaDomain {
    CharFaDomain::new("abcz".chars(), 2, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tarsis_operations_are_sound(a in shape(), b in shape(), c in shape(),
                                   from in bound_interval(), to in bound_interval()) {
        assert_sound(&TarsisDomain::default(), &a, &b, &c, &from, &to)?;
    }

    #[test]
    fn charfa_operations_are_sound(a in shape(), b in shape(), c in shape(),
                                   from in bound_interval(), to in bound_interval()) {
        assert_sound(&charfa(), &a, &b, &c, &from, &to)?;
    }

    #[test]
    fn baseline_operations_are_sound(a in shape(), b in shape(), c in shape(),
                                     from in bound_interval(), to in bound_interval()) {
        assert_sound(&PrefixDomain, &a, &b, &c, &from, &to)?;
        assert_sound(&SuffixDomain, &a, &b, &c, &from, &to)?;
        assert_sound(&CharInclusionDomain, &a, &b, &c, &from, &to)?;
    }
}

fn leaf() -> impl Strategy<Value = Regex> {
    prop::sample::select(vec!["a", "b", "c", "ab", "ba", "abc"])
        .prop_map(|s| Regex::atom(Symbol::text(s)))
}

fn regex_with(leaves: BoxedStrategy<Regex>) -> impl Strategy<Value = Regex> {
    leaves.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::seq(a, b)),
            inner.prop_map(Regex::star),
        ]
    })
}

fn top_free_regex() -> impl Strategy<Value = Regex> {
    regex_with(leaf().boxed())
}

fn automaton() -> impl Strategy<Value = Automaton> {
    let leaves = prop_oneof![4 => leaf(), 1 => Just(Regex::atom(Symbol::Top))].boxed();
    regex_with(leaves).prop_map(|r| r.to_automaton())
}

/// Prefixes of length `n` of the strings of `a`, found by extending
/// character by character while some string still continues.
fn prefixes(a: &Automaton, n: usize) -> BTreeSet<String> {
    let mut level = BTreeSet::from([String::new()]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for p in &level {
            for c in ['a', 'b', 'c'] {
                let q = format!("{p}{c}");
                let probe = Automaton::from_strings([q.as_str()]).concat(&Automaton::top());
                if !probe.intersect_empty(a) {
                    next.insert(q);
                }
            }
        }
        level = next;
    }
    level
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn widening_covers_the_lub(a in automaton(), b in automaton(), n in 1usize..=3) {
        let w = a.widen(&b, n);
        prop_assert!(a.lub(&b).leq(&w));
    }

    #[test]
    fn widening_chains_stabilize(a in automaton(), step in automaton(), n in 1usize..=3) {
        let mut cur = a;
        let mut steps = 0;
        loop {
            let next = cur.widen(&cur.concat(&step), n);
            if next == cur {
                break;
            }
            cur = next;
            steps += 1;
            prop_assert!(steps <= 50, "no fixpoint after 50 widenings");
        }
    }

    #[test]
    fn substring_extraction_matches_brute_force(r in top_free_regex(), i in 0usize..=8, len in 0usize..=8) {
        let j = i + len;
        prop_assume!(j <= 8);
        let a = r.to_automaton();
        let expected: BTreeSet<String> = prefixes(&a, j).iter().map(|p| p[i..j].to_string()).collect();
        let got: BTreeSet<String> = r
            .rsubs(i, len)
            .into_iter()
            .filter(|p| p.is_complete())
            .map(|p| p.known_text().expect("no unknown characters without ⊤"))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn regex_round_trip(a in automaton()) {
        prop_assert_eq!(Regex::from_automaton(&a).to_automaton(), a);
    }

    #[test]
    fn substring_through_the_domain(words in prop::collection::vec(word(), 1..=4), i in 0i64..=6, j in 0i64..=6) {
        prop_assume!(i <= j);
        let x = StringAbs::from_strings(&words);
        let got = x.substring(&Interval::constant(i), &Interval::constant(j)).unwrap();
        let expected: Vec<String> = words
            .iter()
            .filter(|w| j as usize <= w.len())
            .map(|w| w[i as usize..j as usize].to_string())
            .collect();
        prop_assert_eq!(got, StringAbs::from_strings(&expected));
    }
}

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "res", "count", "i"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = Expr> {
    let at = |kind| Expr::new(kind, Pos::default());
    let leaf = prop_oneof![
        ident().prop_map(ExprKind::Var),
        (0i64..1000).prop_map(ExprKind::Int),
        any::<bool>().prop_map(ExprKind::Bool),
        "[a-z \\\\\"\n\t]{0,6}".prop_map(ExprKind::Str),
        Just(ExprKind::Read),
        Just(ExprKind::Nondet),
    ]
    .prop_map(at);
    leaf.prop_recursive(4, 24, 3, move |inner| {
        let unary = prop_oneof![Just(UnOp::Not), Just(UnOp::Neg)];
        let binary = prop::sample::select(vec![
            BinOp::Add,
            BinOp::Sub,
            BinOp::Mul,
            BinOp::Div,
            BinOp::And,
            BinOp::Or,
            BinOp::Lt,
            BinOp::Eq,
        ]);
        let builtin = prop::sample::select(Builtin::ALL.to_vec());
        prop_oneof![
            (unary, inner.clone()).prop_map(move |(op, e)| at(ExprKind::Unary(op, Box::new(e)))),
            (binary, inner.clone(), inner.clone())
                .prop_map(move |(op, a, b)| at(ExprKind::Binary(op, Box::new(a), Box::new(b)))),
            (builtin, prop::collection::vec(inner, 3)).prop_map(move |(f, mut args)| {
                args.truncate(f.arity());
                at(ExprKind::Call(f, args))
            }),
        ]
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let at = |kind| Stmt::new(kind, Pos::default());
    let simple = prop_oneof![
        Just(StmtKind::Skip),
        (ident(), expr()).prop_map(|(x, e)| StmtKind::Assign(x, e)),
        expr().prop_map(StmtKind::Assert),
    ]
    .prop_map(at);
    simple.prop_recursive(2, 12, 3, move |inner| {
        let body = prop::collection::vec(inner, 0..3);
        prop_oneof![
            (expr(), body.clone(), body.clone())
                .prop_map(move |(c, t, e)| at(StmtKind::If(c, t, e))),
            (expr(), body).prop_map(move |(c, b)| at(StmtKind::While(c, b))),
        ]
    })
}

proptest! {
    #[test]
    fn pretty_printing_round_trips(body in prop::collection::vec(stmt(), 0..5)) {
        let p = Program { body };
        let text = pretty(&p);
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, p);
    }

    #[test]
    fn program_alphabets_are_substring_closed(words in prop::collection::vec("[a-d]{1,5}", 1..4)) {
        let src: String = words.iter().map(|w| format!("x = \"{w}\";\n")).collect();
        let alphabet = tarsis::imp::extract_alphabet(&parse(&src).unwrap());
        for w in &words {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    prop_assert!(alphabet.contains(&Symbol::text(&w[i..j])));
                }
            }
        }
        prop_assert!(alphabet.contains(&Symbol::Top));
    }
}
