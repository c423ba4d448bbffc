//! Source rendering. Reparsing the output gives back the same tree.

use alloc::string::String;
use core::fmt::{self, Write};

use super::ast::{Expr, ExprKind, Program, Stmt, StmtKind, UnOp};

const UNARY: u8 = 6;
const ATOM: u8 = 7;

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary(op, _, _) => op.precedence(),
        ExprKind::Unary(..) => UNARY,
        _ => ATOM,
    }
}

fn operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_str_literal(out: &mut impl Write, s: &str) -> fmt::Result {
    out.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\t' => out.write_str("\\t")?,
            c => out.write_char(c)?,
        }
    }
    out.write_char('"')
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Var(x) => f.write_str(x),
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Bool(b) => write!(f, "{b}"),
            ExprKind::Str(s) => write_str_literal(f, s),
            ExprKind::Read => f.write_str("read()"),
            ExprKind::Nondet => f.write_str("nondet"),
            ExprKind::Unary(op, e) => {
                f.write_str(match op {
                    UnOp::Not => "!",
                    UnOp::Neg => "-",
                })?;
                operand(f, e, precedence(e) < UNARY)
            }
            ExprKind::Binary(op, a, b) => {
                let p = op.precedence();
                operand(f, a, precedence(a) < p)?;
                write!(f, " {} ", op.symbol())?;
                operand(f, b, precedence(b) <= p)
            }
            ExprKind::Call(b, args) => {
                write!(f, "{}(", b.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn block(out: &mut String, stmts: &[Stmt], depth: usize) -> fmt::Result {
    out.push_str("{\n");
    for s in stmts {
        stmt(out, s, depth + 1)?;
    }
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push('}');
    Ok(())
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) -> fmt::Result {
    for _ in 0..depth {
        out.push_str("  ");
    }
    match &s.kind {
        StmtKind::Skip => out.push_str("skip;"),
        StmtKind::Assign(x, e) => write!(out, "{x} = {e};")?,
        StmtKind::Assert(e) => write!(out, "assert({e});")?,
        StmtKind::If(c, a, b) => {
            write!(out, "if ({c}) ")?;
            block(out, a, depth)?;
            if !b.is_empty() {
                out.push_str(" else ");
                block(out, b, depth)?;
            }
        }
        StmtKind::While(c, body) => {
            write!(out, "while ({c}) ")?;
            block(out, body, depth)?;
        }
    }
    out.push('\n');
    Ok(())
}

pub fn pretty(p: &Program) -> String {
    let mut out = String::new();
    for s in &p.body {
        stmt(&mut out, s, 0).expect("writing to a String cannot fail");
    }
    out
}
