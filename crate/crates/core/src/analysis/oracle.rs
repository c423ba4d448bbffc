//! Soundness checks of string-domain operations against concrete
//! evaluation: for witnesses `s ∈ γ(a)`, the concrete result must lie in
//! `γ` of the abstract one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::concrete;
use crate::value_domains::{Bound, Interval, StringDomain};

/// An abstract value with concrete strings known to be in its `γ`.
#[derive(Debug, Clone)]
pub struct Witnessed<V> {
    pub value: V,
    pub strings: Vec<String>,
}

/// Strings an unknown segment is instantiated with when sampling witnesses.
pub const POOL: [&str; 5] = ["", "a", "cab", "zz", "q"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part {
    Word(String),
    Top,
}

/// A union of chains of constants and unknown segments: abstracted by
/// concatenation and lub in a domain, concretized by instantiating the
/// unknown segments from [`POOL`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape(pub Vec<Vec<Part>>);

impl Shape {
    pub fn words<I: IntoIterator<Item = String>>(words: I) -> Shape {
        Shape(words.into_iter().map(|w| vec![Part::Word(w)]).collect())
    }

    pub fn abstract_value<D: StringDomain>(&self, dom: &D) -> D::Value {
        let mut acc = dom.bottom();
        for chain in &self.0 {
            let mut v = dom.constant("");
            for p in chain {
                let piece = match p {
                    Part::Word(w) => dom.constant(w),
                    Part::Top => dom.unknown(),
                };
                v = dom.concat(&v, &piece);
            }
            acc = dom.lub(&acc, &v);
        }
        acc
    }

    /// Concrete strings of every chain, unknown segments drawn from the pool
    /// both uniformly and staggered.
    pub fn witnesses(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        for chain in &self.0 {
            for k in 0..POOL.len() {
                for stagger in [0, 1] {
                    let mut s = String::new();
                    for (t, p) in chain.iter().enumerate() {
                        match p {
                            Part::Word(w) => s.push_str(w),
                            Part::Top => s.push_str(POOL[(k + stagger * t) % POOL.len()]),
                        }
                    }
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn witnessed<D: StringDomain>(&self, dom: &D) -> Witnessed<D::Value> {
        Witnessed {
            value: self.abstract_value(dom),
            strings: self.witnesses(),
        }
    }
}

/// A concrete result the abstract operation failed to cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: &'static str,
    pub inputs: Vec<String>,
    pub concrete: String,
    pub abstract_result: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) = {} is not covered by {}",
            self.op,
            self.inputs.join(", "),
            self.concrete,
            self.abstract_result
        )
    }
}

fn violation(op: &'static str, inputs: &[&str], concrete: String, abs: String) -> Violation {
    Violation {
        op,
        inputs: inputs.iter().map(|s| format!("{s:?}")).collect(),
        concrete,
        abstract_result: abs,
    }
}

/// Finite integers of `i`, at most `cap` past the lower bound; an infinite
/// lower bound starts at `-1`.
pub fn sample_interval(i: &Interval, cap: i64) -> Vec<i64> {
    let Some((lo, hi)) = i.bounds() else {
        return Vec::new();
    };
    let lo = match lo {
        Bound::Finite(v) => v,
        _ => -1,
    };
    let hi = match hi {
        Bound::Finite(v) => v.min(lo + cap),
        Bound::PosInf => lo + cap,
        Bound::NegInf => return Vec::new(),
    };
    (lo..=hi).collect()
}

pub type Check = Result<(), Violation>;

pub fn check_concat<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.concat(&a.value, &b.value);
    let mut results = BTreeMap::new();
    for x in &a.strings {
        for y in &b.strings {
            results
                .entry(format!("{x}{y}"))
                .or_insert_with(|| vec![format!("{x:?}"), format!("{y:?}")]);
        }
    }
    covered(dom, "concat", &r, results)
}

pub fn check_lub<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.lub(&a.value, &b.value);
    covers_inputs(dom, "lub", &r, a, b)
}

pub fn check_widen<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.widen(&a.value, &dom.lub(&a.value, &b.value));
    covers_inputs(dom, "widen", &r, a, b)
}

fn covers_inputs<D: StringDomain>(
    dom: &D,
    op: &'static str,
    r: &D::Value,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let all: Vec<&str> = a
        .strings
        .iter()
        .chain(&b.strings)
        .map(String::as_str)
        .collect();
    match dom.first_non_member(r, &all) {
        Some(x) => Err(violation(op, &[x], format!("{x:?}"), dom.render(r))),
        None => Ok(()),
    }
}

pub fn check_length<D: StringDomain>(dom: &D, a: &Witnessed<D::Value>) -> Check {
    let r = dom.length(&a.value);
    for x in &a.strings {
        let n = concrete::char_len(x);
        if !r.contains(n) {
            return Err(violation("length", &[x], n.to_string(), r.to_string()));
        }
    }
    Ok(())
}

pub fn check_contains<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.contains(&a.value, &b.value);
    for x in &a.strings {
        for y in &b.strings {
            let c = x.contains(y.as_str());
            if !r.contains(c) {
                return Err(violation("contains", &[x, y], c.to_string(), r.to_string()));
            }
        }
    }
    Ok(())
}

pub fn check_index_of<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.index_of(&a.value, &b.value);
    for x in &a.strings {
        for y in &b.strings {
            let c = concrete::index_of(x, y);
            if !r.contains(c) {
                return Err(violation("indexOf", &[x, y], c.to_string(), r.to_string()));
            }
        }
    }
    Ok(())
}

pub fn check_equals<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
) -> Check {
    let r = dom.equals(&a.value, &b.value);
    for x in &a.strings {
        for y in &b.strings {
            if !r.contains(x == y) {
                return Err(violation(
                    "equals",
                    &[x, y],
                    (x == y).to_string(),
                    r.to_string(),
                ));
            }
        }
    }
    Ok(())
}

pub fn check_replace<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    search: &Witnessed<D::Value>,
    repl: &Witnessed<D::Value>,
) -> Check {
    let r = dom.replace(&a.value, &search.value, &repl.value);
    let mut results = BTreeMap::new();
    for x in &a.strings {
        for s in &search.strings {
            for t in &repl.strings {
                results
                    .entry(concrete::replace(x, s, t))
                    .or_insert_with(|| vec![format!("{x:?}"), format!("{s:?}"), format!("{t:?}")]);
            }
        }
    }
    covered(dom, "replace", &r, results)
}

/// Checks every `(i, j)` drawn from the intervals, up to `cap` values each.
pub fn check_substring<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    from: &Interval,
    to: &Interval,
    cap: i64,
) -> Check {
    let r = dom.substring(&a.value, from, to);
    let (is, js) = (sample_interval(from, cap), sample_interval(to, cap));
    let mut results = BTreeMap::new();
    for x in &a.strings {
        for &i in &is {
            for &j in &js {
                if let Some(c) = concrete::substring(x, i, j) {
                    results
                        .entry(c)
                        .or_insert_with(|| vec![format!("{x:?}"), i.to_string(), j.to_string()]);
                }
            }
        }
    }
    covered(dom, "substring", &r, results)
}

/// Every concrete result is in `γ(r)`. Results are keyed to the first
/// inputs producing them, already formatted.
fn covered<D: StringDomain>(
    dom: &D,
    op: &'static str,
    r: &D::Value,
    results: BTreeMap<String, Vec<String>>,
) -> Check {
    let all: Vec<&str> = results.keys().map(String::as_str).collect();
    match dom.first_non_member(r, &all) {
        Some(c) => Err(Violation {
            op,
            inputs: results[c].clone(),
            concrete: format!("{c:?}"),
            abstract_result: dom.render(r),
        }),
        None => Ok(()),
    }
}

/// Runs every check on the witnesses, `a` as receiver.
pub fn check_all<D: StringDomain>(
    dom: &D,
    a: &Witnessed<D::Value>,
    b: &Witnessed<D::Value>,
    c: &Witnessed<D::Value>,
    from: &Interval,
    to: &Interval,
) -> Vec<Violation> {
    let checks = vec![
        check_concat(dom, a, b),
        check_lub(dom, a, b),
        check_widen(dom, a, b),
        check_length(dom, a),
        check_contains(dom, a, b),
        check_index_of(dom, a, b),
        check_equals(dom, a, b),
        check_replace(dom, a, b, c),
        check_substring(dom, a, from, to, 8),
    ];
    checks.into_iter().filter_map(Result::err).collect()
}
