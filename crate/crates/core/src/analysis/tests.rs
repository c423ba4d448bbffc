use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::automata::{Automaton, Symbol};
use crate::imp::{extract_alphabet, parse, Program};
use crate::tarsis::{StringAbs, TarsisDomain};
use crate::value_domains::baseline::{CharFaDomain, PrefixDomain, SuffixDomain};
use crate::value_domains::Interval;

const SUBS: &str = include_str!("../../../../corpus/subs.imp");
const LOOP: &str = include_str!("../../../../corpus/loop.imp");
const COUNT: &str = include_str!("../../../../corpus/count.imp");
const TO_STRING: &str = include_str!("../../../../corpus/toString.imp");

fn analyze<D: StringDomain>(dom: &D, src: &str) -> AnalysisResult<D::Value> {
    abstract_run(dom, &parse(src).unwrap(), &AnalysisConfig::default()).unwrap()
}

fn verdicts<V>(r: &AnalysisResult<V>) -> Vec<Verdict> {
    r.asserts.iter().map(AssertOutcome::verdict).collect()
}

fn first_value<V: Clone>(r: &AnalysisResult<V>, var: &str) -> AbstractValue<V> {
    let (_, v) = r.asserts[0]
        .variables
        .iter()
        .find(|(x, _)| x == var)
        .unwrap();
    v.clone()
}

fn first_string(r: &AnalysisResult<StringAbs>, var: &str) -> StringAbs {
    match first_value(r, var) {
        AbstractValue::Str(s) => s,
        other => panic!("{var} is not a string: {other:?}"),
    }
}

fn char_fa(p: &str) -> CharFaDomain {
    let alpha = extract_alphabet(&parse(p).unwrap());
    CharFaDomain::new(alpha.source_chars().iter().copied(), 2, 5)
}

fn lit(s: &str) -> Automaton {
    Automaton::from_strings([s])
}

use Verdict::{Definite as DA, Possible as PA, Proved as OK};

#[test]
fn subs_with_tarsis() {
    let r = analyze(&TarsisDomain::default(), SUBS);
    let res = first_string(&r, "res");
    assert!(res
        .automaton()
        .language_eq(&Automaton::from_strings(["ring test pas", "ring test fai"])));
    assert_eq!(verdicts(&r), [OK, PA, PA, DA]);
}

#[test]
fn loop_with_tarsis() {
    let r = analyze(&TarsisDomain::default(), LOOP);
    let res = first_string(&r, "res");
    let expected =
        lit("Repeat: ").concat(&Automaton::from_symbols(&[Symbol::Top, Symbol::char('!')]).star());
    assert!(res.automaton().language_eq(&expected), "got {res}");
    assert_eq!(res.to_string(), "Repeat: (\u{22A4}!)*");
    assert_eq!(verdicts(&r), [OK, PA, PA]);
}

#[test]
fn loop_with_affix_domains() {
    assert_eq!(verdicts(&analyze(&PrefixDomain, LOOP)), [OK, PA, PA]);
    assert_eq!(verdicts(&analyze(&SuffixDomain, LOOP)), [PA, PA, PA]);
}

#[test]
fn count_with_tarsis_and_char_automata() {
    let r = analyze(&TarsisDomain::default(), COUNT);
    assert_eq!(
        first_value(&r, "count"),
        AbstractValue::Int(Interval::finite(2, 3))
    );
    assert_eq!(verdicts(&r), [OK, DA, PA]);
    let r = analyze(&char_fa(COUNT), COUNT);
    assert_eq!(
        first_value(&r, "count"),
        AbstractValue::Int(Interval::finite(2, 3))
    );
    assert_eq!(verdicts(&r), [OK, DA, PA]);
}

#[test]
fn to_string_with_tarsis() {
    let r = analyze(&TarsisDomain::default(), TO_STRING);
    let res = first_string(&r, "res");
    let items = Automaton::from_symbols(&[Symbol::Top, Symbol::char(',')])
        .star()
        .concat(&Automaton::top());
    let expected = lit("People: {}").lub(&lit("People: {").concat(&items).concat(&lit("}")));
    assert!(res.automaton().language_eq(&expected), "got {res}");
    assert_eq!(verdicts(&r), [OK, PA, PA]);
}

#[test]
fn unreachable_asserts_and_bottom() {
    let r = analyze(
        &TarsisDomain::default(),
        "x = 1; while (true) { x = x + 1; } assert(x < 0);",
    );
    assert_eq!(verdicts(&r), [Verdict::Unreachable]);
    let r = analyze(
        &TarsisDomain::default(),
        "x = substring(\"ab\", 3, 4); assert(true);",
    );
    assert_eq!(verdicts(&r), [Verdict::Unreachable]);
    assert!(r.finals.is_empty());
}

#[test]
fn branches_stay_separate_until_the_bound() {
    let src = "if (nondet) x = 1; else x = 2; if (nondet) y = 1; else y = 2;";
    let p = parse(src).unwrap();
    let dom = TarsisDomain::default();
    let r = abstract_run(&dom, &p, &AnalysisConfig::default()).unwrap();
    assert_eq!(r.finals.len(), 4);
    let one = AnalysisConfig {
        partition_bound: 1,
        ..AnalysisConfig::default()
    };
    let r = abstract_run(&dom, &p, &one).unwrap();
    assert_eq!(r.finals.len(), 2);
    assert_eq!(
        r.final_memory(&dom)["y"],
        AbstractValue::Int(Interval::finite(1, 2))
    );
}

#[test]
fn terminates_across_parameters() {
    for src in [SUBS, LOOP, COUNT, TO_STRING] {
        let p: Program = parse(src).unwrap();
        for n in [1, 2, 3] {
            for tau in [1, 5, 10] {
                for k in [0, 4, 8] {
                    let dom = TarsisDomain { widening_n: n, tau };
                    let config = AnalysisConfig {
                        partition_bound: k,
                        ..AnalysisConfig::default()
                    };
                    assert!(
                        abstract_run(&dom, &p, &config).is_ok(),
                        "n={n} tau={tau} k={k}"
                    );
                }
            }
        }
    }
}

#[test]
fn concrete_runs_are_covered() {
    let dom = TarsisDomain::default();
    let cases: [(&str, Vec<Inputs>); 3] = [
        (
            SUBS,
            vec![
                Inputs::new(vec![], vec![true]),
                Inputs::new(vec![], vec![false]),
            ],
        ),
        (
            COUNT,
            vec![
                Inputs::new(vec![], vec![true]),
                Inputs::new(vec![], vec![false]),
            ],
        ),
        (
            LOOP,
            (0..4)
                .map(|k| {
                    let mut nd = vec![true; k];
                    nd.push(false);
                    Inputs::new(vec![String::from("ab")], nd)
                })
                .collect(),
        ),
    ];
    for (src, inputs) in cases {
        let p = parse(src).unwrap();
        let r = abstract_run(&dom, &p, &AnalysisConfig::default()).unwrap();
        let joined = r.final_memory(&dom);
        for input in inputs {
            let run = concrete_run(&p, ConcreteMemory::new(), &input, DEFAULT_FUEL).unwrap();
            assert!(memory_member(&dom, &joined, &run.memory), "{input:?}");
        }
    }
}
