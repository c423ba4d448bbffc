//! Recursive descent parser.
//!
//! Precedence, loosest first: `||`, `&&`, comparisons, `+ -`, `* /`,
//! prefix `! -`, method calls. `a > b` and `a != b` are sugar for `b < a`
//! and `!(a == b)`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{BinOp, Builtin, Expr, ExprKind, Pos, Program, Stmt, StmtKind, UnOp};
use super::lexer::{tokenize, Tok};
use super::SyntaxError;

pub fn parse(src: &str) -> Result<Program, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let mut body = Vec::new();
    while *p.peek() != Tok::Eof {
        body.push(p.stmt()?);
    }
    Ok(Program { body })
}

/// Parses a single expression (used by tests and the CLI).
pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

const EXPR_START: &[&str] = &[
    "identifier",
    "integer",
    "string",
    "`true`",
    "`false`",
    "`read`",
    "`nondet`",
    "`(`",
    "`!`",
    "`-`",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, SyntaxError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn stmt(&mut self) -> Result<Stmt, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Skip => {
                self.bump();
                self.expect(Tok::Semi)?;
                StmtKind::Skip
            }
            Tok::Assert => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::Semi)?;
                StmtKind::Assert(e)
            }
            Tok::If => {
                self.bump();
                let cond = self.guard()?;
                let then = self.body()?;
                let otherwise = if self.eat(&Tok::Else) {
                    self.body()?
                } else {
                    Vec::new()
                };
                StmtKind::If(cond, then, otherwise)
            }
            Tok::While => {
                self.bump();
                let cond = self.guard()?;
                StmtKind::While(cond, self.body()?)
            }
            Tok::Ident(x) => {
                self.bump();
                self.expect(Tok::Assign)?;
                let e = self.expr()?;
                self.expect(Tok::Semi)?;
                StmtKind::Assign(x, e)
            }
            _ => return Err(self.error(&["identifier", "`skip`", "`assert`", "`if`", "`while`"])),
        };
        Ok(Stmt::new(kind, pos))
    }

    fn guard(&mut self) -> Result<Expr, SyntaxError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    /// A braced block (optionally followed by `;`) or a single statement.
    fn body(&mut self) -> Result<Vec<Stmt>, SyntaxError> {
        if !self.eat(&Tok::LBrace) {
            return Ok(vec![self.stmt()?]);
        }
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if *self.peek() == Tok::Eof {
                return Err(self.error(&["`}`"]));
            }
            out.push(self.stmt()?);
        }
        self.eat(&Tok::Semi);
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        self.binary(1)
    }

    fn binary(&mut self, level: u8) -> Result<Expr, SyntaxError> {
        if level > 5 {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        loop {
            let pos = self.pos();
            let op = match (level, self.peek()) {
                (1, Tok::OrOr) => BinOp::Or,
                (2, Tok::AndAnd) => BinOp::And,
                (3, Tok::Lt | Tok::Gt) => BinOp::Lt,
                (3, Tok::EqEq | Tok::NotEq) => BinOp::Eq,
                (4, Tok::Plus) => BinOp::Add,
                (4, Tok::Minus) => BinOp::Sub,
                (5, Tok::Star) => BinOp::Mul,
                (5, Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            let (tok, _) = self.bump();
            let rhs = self.binary(level + 1)?;
            lhs = match tok {
                Tok::Gt => Expr::new(ExprKind::Binary(op, Box::new(rhs), Box::new(lhs)), pos),
                Tok::NotEq => {
                    let eq = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos);
                    Expr::new(ExprKind::Unary(UnOp::Not, Box::new(eq)), pos)
                }
                _ => Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos),
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        let op = match self.peek() {
            Tok::Bang => UnOp::Not,
            Tok::Minus => UnOp::Neg,
            _ => return self.postfix(),
        };
        self.bump();
        let e = self.unary()?;
        Ok(Expr::new(ExprKind::Unary(op, Box::new(e)), pos))
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.primary()?;
        while *self.peek() == Tok::Dot {
            let pos = self.bump().1;
            let b = self.builtin_name()?;
            let mut args = vec![e];
            args.extend(self.args()?);
            e = self.call(b, args, pos)?;
        }
        Ok(e)
    }

    fn builtin_name(&mut self) -> Result<Builtin, SyntaxError> {
        if let Tok::Ident(name) = self.peek() {
            if let Some(b) = Builtin::from_name(name) {
                self.bump();
                return Ok(b);
            }
        }
        let names: Vec<String> = Builtin::ALL
            .iter()
            .map(|b| alloc::format!("`{}`", b.name()))
            .collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        Err(self.error(&names))
    }

    fn args(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(&Tok::RParen) {
                return Ok(out);
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.error(&["`,`", "`)`"]));
            }
        }
    }

    fn call(&self, b: Builtin, args: Vec<Expr>, pos: Pos) -> Result<Expr, SyntaxError> {
        if args.len() != b.arity() {
            return Err(SyntaxError {
                pos,
                expected: vec![alloc::format!(
                    "{} argument(s) to `{}`",
                    b.arity(),
                    b.name()
                )],
                found: alloc::format!("{} argument(s)", args.len()),
            });
        }
        Ok(Expr::new(ExprKind::Call(b, args), pos))
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                ExprKind::Int(v)
            }
            Tok::Str(s) => {
                self.bump();
                ExprKind::Str(s)
            }
            Tok::True => {
                self.bump();
                ExprKind::Bool(true)
            }
            Tok::False => {
                self.bump();
                ExprKind::Bool(false)
            }
            Tok::Read => {
                self.bump();
                self.expect(Tok::LParen)?;
                self.expect(Tok::RParen)?;
                ExprKind::Read
            }
            Tok::Nondet => {
                self.bump();
                if self.eat(&Tok::LParen) {
                    self.expect(Tok::RParen)?;
                }
                ExprKind::Nondet
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let Some(b) = Builtin::from_name(&name) else {
                        return Err(SyntaxError {
                            pos,
                            expected: vec!["a string operation".to_string()],
                            found: alloc::format!("call to `{name}`"),
                        });
                    };
                    let args = self.args()?;
                    return self.call(b, args, pos);
                }
                ExprKind::Var(name)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(e);
            }
            _ => return Err(self.error(EXPR_START)),
        };
        Ok(Expr::new(kind, pos))
    }
}
