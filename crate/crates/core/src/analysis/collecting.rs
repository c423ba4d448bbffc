//! The additive lift of concrete evaluation to sets of memories.

use alloc::collections::BTreeSet;

use super::concrete::{eval, ConcreteMemory, Value};
use crate::imp::Expr;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Collected {
    pub values: BTreeSet<Value>,
    /// Some memory made the evaluation fail; it contributes nothing.
    pub error: bool,
}

pub fn collecting_eval<'a>(
    e: &Expr,
    memories: impl IntoIterator<Item = &'a ConcreteMemory>,
) -> Collected {
    let mut out = Collected::default();
    for m in memories {
        match eval(e, m) {
            Ok(v) => {
                out.values.insert(v);
            }
            Err(_) => out.error = true,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imp::parse_expr;
    use alloc::string::String;
    use alloc::vec::Vec;

    fn mems(pairs: &[&[(&str, &str)]]) -> Vec<ConcreteMemory> {
        pairs
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(k, v)| (String::from(*k), Value::Str(String::from(*v))))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn lengths_and_contains() {
        let ms = mems(&[&[("x", "a")], &[("x", "bb")]]);
        let c = collecting_eval(&parse_expr("length(x)").unwrap(), &ms);
        assert_eq!(c.values, BTreeSet::from([Value::Int(1), Value::Int(2)]));
        let ms = mems(&[&[("x", "ab"), ("y", "b")], &[("x", "cd"), ("y", "b")]]);
        let c = collecting_eval(&parse_expr("contains(x, y)").unwrap(), &ms);
        assert_eq!(
            c.values,
            BTreeSet::from([Value::Bool(true), Value::Bool(false)])
        );
    }

    #[test]
    fn substrings_of_subs() {
        let ms = mems(&[
            &[("res", "substring test passed")],
            &[("res", "substring test failed")],
        ]);
        let c = collecting_eval(&parse_expr("substring(res, 5, 18)").unwrap(), &ms);
        let want = ["ring test pas", "ring test fai"].map(|s| Value::Str(s.into()));
        assert_eq!(c.values, BTreeSet::from(want));
        assert!(!c.error);
    }

    #[test]
    fn errors_are_flagged() {
        let ms = mems(&[&[("x", "a")], &[("y", "a")]]);
        let c = collecting_eval(&parse_expr("length(x)").unwrap(), &ms);
        assert_eq!(c.values.len(), 1);
        assert!(c.error);
    }
}
