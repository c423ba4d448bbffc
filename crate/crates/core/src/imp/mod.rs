//! The IMP language: syntax tree, parser, printer and program alphabet.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::automata::Alphabet;

pub mod ast;
mod lexer;
mod parser;
mod pretty;

pub use ast::{BinOp, Builtin, Expr, ExprKind, Pos, Program, Stmt, StmtKind, UnOp};
pub use parser::{parse, parse_expr};
pub use pretty::pretty;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    /// What the parser would have accepted; empty for lexical errors.
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.pos)?;
        match self.expected.as_slice() {
            [] => f.write_str(&self.found),
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => write!(
                f,
                "expected one of {}, found {}",
                many.join(", "),
                self.found
            ),
        }
    }
}

impl core::error::Error for SyntaxError {}

/// `Σ*_P`: the string literals of `p`, closed under substrings.
pub fn extract_alphabet(p: &Program) -> Alphabet {
    let mut literals = Vec::new();
    p.for_each_expr(&mut |e| {
        if let ExprKind::Str(s) = &e.kind {
            literals.push(s.clone());
        }
    });
    Alphabet::new(literals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Symbol;
    use alloc::string::ToString;

    const SUBS: &str = r#"
res = "substring test";
if (nondet)
  res = res + " passed";
else
  res = res + " failed";
res = res.substring(5, 18);
assert(res.contains("g"));
assert(contains(res, "p"));
"#;

    #[test]
    fn assignment_of_literal() {
        let p = parse("x = 1;").unwrap();
        assert_eq!(p.body.len(), 1);
        assert!(
            matches!(&p.body[0].kind, StmtKind::Assign(x, e) if x == "x" && e.kind == ExprKind::Int(1))
        );
    }

    #[test]
    fn loop_with_trailing_semicolon() {
        let p = parse("while (b) { skip; };").unwrap();
        assert!(matches!(&p.body[0].kind, StmtKind::While(_, body) if body.len() == 1));
    }

    #[test]
    fn precedence_is_conventional() {
        let e = parse_expr("a + b * c < d || !e && f == 1").unwrap();
        assert_eq!(e.to_string(), "a + b * c < d || !e && f == 1");
        let ExprKind::Binary(BinOp::Or, lhs, _) = &e.kind else {
            panic!()
        };
        assert!(matches!(lhs.kind, ExprKind::Binary(BinOp::Lt, _, _)));
        assert_eq!(parse_expr("(a - b) - c").unwrap().to_string(), "a - b - c");
        assert_eq!(
            parse_expr("a - (b - c)").unwrap().to_string(),
            "a - (b - c)"
        );
    }

    #[test]
    fn sugar_desugars() {
        assert_eq!(parse_expr("x > 0").unwrap(), parse_expr("0 < x").unwrap());
        assert_eq!(
            parse_expr("x != 0").unwrap(),
            parse_expr("!(x == 0)").unwrap()
        );
    }

    #[test]
    fn method_and_function_calls_agree() {
        assert_eq!(
            parse_expr("s.substring(1, 2)").unwrap(),
            parse_expr("substring(s, 1, 2)").unwrap()
        );
        assert!(parse_expr("s.length(1)").is_err());
        assert!(parse_expr("frob(s)").is_err());
    }

    #[test]
    fn subs_parses() {
        let p = parse(SUBS).unwrap();
        assert_eq!(p.body.len(), 5);
        assert_eq!(p.asserts().len(), 2);
        assert_eq!(p.asserts()[0].pos.line, 8);
    }

    #[test]
    fn round_trip() {
        let p = parse(SUBS).unwrap();
        assert_eq!(parse(&pretty(&p)).unwrap(), p);
        let q = parse("if (x < 3) { y = \"a\\\"\"; } while (!b) { b = nondet; }").unwrap();
        assert_eq!(parse(&pretty(&q)).unwrap(), q);
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse("x = ;").unwrap_err();
        assert_eq!(e.pos, Pos::new(1, 5));
        assert!(e.expected.iter().any(|s| s == "identifier"));
        let e = parse("x = 1").unwrap_err();
        assert_eq!(e.expected, ["`;`"]);
        assert!(e.to_string().starts_with("1:6: expected `;`"));
    }

    #[test]
    fn alphabet_closes_literals_under_substrings() {
        let a = extract_alphabet(&parse("x = \"ab\";").unwrap());
        for s in ["a", "b", "ab"] {
            assert!(a.contains(&Symbol::text(s)));
        }
        let none = extract_alphabet(&parse("x = 1;").unwrap());
        assert_eq!(none.symbols().len(), 1);
        assert!(none.source_chars().is_empty());
    }
}
