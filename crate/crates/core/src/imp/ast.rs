//! Syntax tree of IMP programs.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// 1-based line and column of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Pos {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    And,
    Or,
    Lt,
    Eq,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::And => "&&",
            BinOp::Or => "||",
            BinOp::Lt => "<",
            BinOp::Eq => "==",
        }
    }

    /// Binding strength, higher binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Lt | BinOp::Eq => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::Mul | BinOp::Div => 5,
        }
    }
}

/// The string operations, written `f(a, b, ..)` or `a.f(b, ..)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Length,
    IndexOf,
    Contains,
    Substring,
    Concat,
    Replace,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Length,
        Builtin::IndexOf,
        Builtin::Contains,
        Builtin::Substring,
        Builtin::Concat,
        Builtin::Replace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Length => "length",
            Builtin::IndexOf => "indexOf",
            Builtin::Contains => "contains",
            Builtin::Substring => "substring",
            Builtin::Concat => "concat",
            Builtin::Replace => "replace",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Length => 1,
            Builtin::IndexOf | Builtin::Contains | Builtin::Concat => 2,
            Builtin::Substring | Builtin::Replace => 3,
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Var(String),
    Int(i64),
    Bool(bool),
    Str(String),
    /// `read()`: a statically unknown string.
    Read,
    /// `nondet`: a statically unknown boolean.
    Nondet,
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Builtin, Vec<Expr>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

/// Structural equality; positions are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Expr {
        Expr { kind, pos }
    }

    /// Identifiers read by the expression, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            ExprKind::Unary(_, e) => e.collect_vars(out),
            ExprKind::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            ExprKind::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Skip,
    Assign(String, Expr),
    If(Expr, Vec<Stmt>, Vec<Stmt>),
    While(Expr, Vec<Stmt>),
    Assert(Expr),
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

/// Structural equality; positions are ignored.
impl PartialEq for Stmt {
    fn eq(&self, other: &Stmt) -> bool {
        self.kind == other.kind
    }
}

impl Stmt {
    pub fn new(kind: StmtKind, pos: Pos) -> Stmt {
        Stmt { kind, pos }
    }
}

/// A parsed program: a statement sequence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub body: Vec<Stmt>,
}

impl Program {
    /// Every `assert` in source order.
    pub fn asserts(&self) -> Vec<&Stmt> {
        fn walk<'a>(stmts: &'a [Stmt], out: &mut Vec<&'a Stmt>) {
            for s in stmts {
                match &s.kind {
                    StmtKind::Assert(_) => out.push(s),
                    StmtKind::If(_, a, b) => {
                        walk(a, out);
                        walk(b, out);
                    }
                    StmtKind::While(_, body) => walk(body, out),
                    _ => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.body, &mut out);
        out.sort_by_key(|s| s.pos);
        out
    }

    /// Visits every expression of the program, nested ones included.
    pub fn for_each_expr(&self, f: &mut dyn FnMut(&Expr)) {
        fn expr(e: &Expr, f: &mut dyn FnMut(&Expr)) {
            f(e);
            match &e.kind {
                ExprKind::Unary(_, a) => expr(a, f),
                ExprKind::Binary(_, a, b) => {
                    expr(a, f);
                    expr(b, f);
                }
                ExprKind::Call(_, args) => args.iter().for_each(|a| expr(a, f)),
                _ => {}
            }
        }
        fn stmts(ss: &[Stmt], f: &mut dyn FnMut(&Expr)) {
            for s in ss {
                match &s.kind {
                    StmtKind::Skip => {}
                    StmtKind::Assign(_, e) | StmtKind::Assert(e) => expr(e, f),
                    StmtKind::If(c, a, b) => {
                        expr(c, f);
                        stmts(a, f);
                        stmts(b, f);
                    }
                    StmtKind::While(c, body) => {
                        expr(c, f);
                        stmts(body, f);
                    }
                }
            }
        }
        stmts(&self.body, f);
    }
}
