//! Big-step concrete interpreter, the oracle for soundness checks.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::imp::{BinOp, Builtin, Expr, ExprKind, Pos, Program, Stmt, StmtKind, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "{s:?}"),
        }
    }
}

pub type ConcreteMemory = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuntimeError {
    #[error("step budget exhausted")]
    OutOfFuel,
    #[error("{pos}: substring({from}, {to}) out of range for a string of length {len}")]
    SubstringOutOfRange {
        pos: Pos,
        from: i64,
        to: i64,
        len: usize,
    },
    #[error("{pos}: `{name}` is not bound")]
    Unbound { pos: Pos, name: String },
    #[error("{pos}: {message}")]
    TypeMismatch { pos: Pos, message: String },
    #[error("{pos}: division by zero")]
    DivisionByZero { pos: Pos },
    #[error("{pos}: integer overflow")]
    Overflow { pos: Pos },
}

/// Values returned by `read()` and `nondet`, consumed in order. Once a
/// queue runs out its last value repeats; an empty queue yields `""` and
/// `false`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Inputs {
    pub reads: Vec<String>,
    pub nondets: Vec<bool>,
}

impl Inputs {
    pub fn new(reads: Vec<String>, nondets: Vec<bool>) -> Inputs {
        Inputs { reads, nondets }
    }
}

/// Outcome of a terminating run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub memory: ConcreteMemory,
    /// Every executed assert with its outcome, in execution order.
    pub asserts: Vec<(Pos, bool)>,
}

/// Character length as an `i64`.
pub fn char_len(s: &str) -> i64 {
    s.chars().count() as i64
}

/// Characters `from..to` (end exclusive), if `0 ≤ from ≤ to ≤ |s|`.
pub fn substring(s: &str, from: i64, to: i64) -> Option<String> {
    if from < 0 || from > to || to > char_len(s) {
        return None;
    }
    Some(
        s.chars()
            .skip(from as usize)
            .take((to - from) as usize)
            .collect(),
    )
}

/// Character index of the first occurrence of `needle`, or -1.
pub fn index_of(s: &str, needle: &str) -> i64 {
    s.find(needle).map_or(-1, |b| char_len(&s[..b]))
}

/// All non-overlapping occurrences, leftmost first; identity when absent.
pub fn replace(s: &str, search: &str, repl: &str) -> String {
    if s.contains(search) {
        s.replace(search, repl)
    } else {
        s.to_string()
    }
}

pub fn concrete_run(
    p: &Program,
    memory: ConcreteMemory,
    inputs: &Inputs,
    fuel: u64,
) -> Result<Run, RuntimeError> {
    let mut m = Machine {
        memory,
        inputs,
        next_read: 0,
        next_nondet: 0,
        fuel,
        asserts: Vec::new(),
    };
    m.block(&p.body)?;
    Ok(Run {
        memory: m.memory,
        asserts: m.asserts,
    })
}

/// Evaluates one expression against a memory, without intrinsic inputs
/// (`read()` gives `""`, `nondet` gives `false`).
pub fn eval(e: &Expr, memory: &ConcreteMemory) -> Result<Value, RuntimeError> {
    let inputs = Inputs::default();
    let mut m = Machine {
        memory: memory.clone(),
        inputs: &inputs,
        next_read: 0,
        next_nondet: 0,
        fuel: 0,
        asserts: Vec::new(),
    };
    m.eval(e)
}

struct Machine<'a> {
    memory: ConcreteMemory,
    inputs: &'a Inputs,
    next_read: usize,
    next_nondet: usize,
    fuel: u64,
    asserts: Vec<(Pos, bool)>,
}

fn next<T: Clone>(queue: &[T], at: &mut usize, default: T) -> T {
    let v = queue.get(*at).or(queue.last()).cloned().unwrap_or(default);
    *at += 1;
    v
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), RuntimeError> {
        self.fuel = self.fuel.checked_sub(1).ok_or(RuntimeError::OutOfFuel)?;
        Ok(())
    }

    fn block(&mut self, stmts: &[Stmt]) -> Result<(), RuntimeError> {
        stmts.iter().try_for_each(|s| self.stmt(s))
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), RuntimeError> {
        self.tick()?;
        match &s.kind {
            StmtKind::Skip => {}
            StmtKind::Assign(x, e) => {
                let v = self.eval(e)?;
                self.memory.insert(x.clone(), v);
            }
            StmtKind::Assert(e) => {
                let b = self.boolean(e)?;
                self.asserts.push((s.pos, b));
            }
            StmtKind::If(c, a, b) => {
                if self.boolean(c)? {
                    self.block(a)?;
                } else {
                    self.block(b)?;
                }
            }
            StmtKind::While(c, body) => {
                while self.boolean(c)? {
                    self.tick()?;
                    self.block(body)?;
                }
            }
        }
        Ok(())
    }

    fn boolean(&mut self, e: &Expr) -> Result<bool, RuntimeError> {
        match self.eval(e)? {
            Value::Bool(b) => Ok(b),
            v => Err(mismatch(e.pos, "a boolean", &v)),
        }
    }

    fn int(&mut self, e: &Expr) -> Result<i64, RuntimeError> {
        match self.eval(e)? {
            Value::Int(i) => Ok(i),
            v => Err(mismatch(e.pos, "an integer", &v)),
        }
    }

    fn string(&mut self, e: &Expr) -> Result<String, RuntimeError> {
        match self.eval(e)? {
            Value::Str(s) => Ok(s),
            v => Err(mismatch(e.pos, "a string", &v)),
        }
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, RuntimeError> {
        let pos = e.pos;
        Ok(match &e.kind {
            ExprKind::Var(x) => {
                self.memory
                    .get(x)
                    .cloned()
                    .ok_or_else(|| RuntimeError::Unbound {
                        pos,
                        name: x.clone(),
                    })?
            }
            ExprKind::Int(v) => Value::Int(*v),
            ExprKind::Bool(b) => Value::Bool(*b),
            ExprKind::Str(s) => Value::Str(s.clone()),
            ExprKind::Read => {
                Value::Str(next(&self.inputs.reads, &mut self.next_read, String::new()))
            }
            ExprKind::Nondet => {
                Value::Bool(next(&self.inputs.nondets, &mut self.next_nondet, false))
            }
            ExprKind::Unary(UnOp::Not, a) => Value::Bool(!self.boolean(a)?),
            ExprKind::Unary(UnOp::Neg, a) => Value::Int(
                self.int(a)?
                    .checked_neg()
                    .ok_or(RuntimeError::Overflow { pos })?,
            ),
            ExprKind::Binary(op, a, b) => self.binary(*op, a, b, pos)?,
            ExprKind::Call(f, args) => self.call(*f, args, pos)?,
        })
    }

    fn binary(&mut self, op: BinOp, a: &Expr, b: &Expr, pos: Pos) -> Result<Value, RuntimeError> {
        let overflow = RuntimeError::Overflow { pos };
        match op {
            BinOp::And => {
                let (x, y) = (self.boolean(a)?, self.boolean(b)?);
                Ok(Value::Bool(x && y))
            }
            BinOp::Or => {
                let (x, y) = (self.boolean(a)?, self.boolean(b)?);
                Ok(Value::Bool(x || y))
            }
            BinOp::Eq => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                if core::mem::discriminant(&x) != core::mem::discriminant(&y) {
                    return Err(RuntimeError::TypeMismatch {
                        pos,
                        message: alloc::format!("cannot compare {x} with {y}"),
                    });
                }
                Ok(Value::Bool(x == y))
            }
            BinOp::Add => match (self.eval(a)?, self.eval(b)?) {
                (Value::Int(x), Value::Int(y)) => Ok(Value::Int(x.checked_add(y).ok_or(overflow)?)),
                (Value::Str(x), Value::Str(y)) => Ok(Value::Str(x + &y)),
                (x, y) => Err(RuntimeError::TypeMismatch {
                    pos,
                    message: alloc::format!("cannot add {x} and {y}"),
                }),
            },
            BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Lt => {
                let (x, y) = (self.int(a)?, self.int(b)?);
                Ok(match op {
                    BinOp::Sub => Value::Int(x.checked_sub(y).ok_or(overflow)?),
                    BinOp::Mul => Value::Int(x.checked_mul(y).ok_or(overflow)?),
                    BinOp::Div if y == 0 => return Err(RuntimeError::DivisionByZero { pos }),
                    BinOp::Div => Value::Int(x.checked_div(y).ok_or(overflow)?),
                    _ => Value::Bool(x < y),
                })
            }
        }
    }

    fn call(&mut self, f: Builtin, args: &[Expr], pos: Pos) -> Result<Value, RuntimeError> {
        Ok(match f {
            Builtin::Length => Value::Int(char_len(&self.string(&args[0])?)),
            Builtin::IndexOf => {
                let (s, t) = (self.string(&args[0])?, self.string(&args[1])?);
                Value::Int(index_of(&s, &t))
            }
            Builtin::Contains => {
                let (s, t) = (self.string(&args[0])?, self.string(&args[1])?);
                Value::Bool(s.contains(t.as_str()))
            }
            Builtin::Concat => {
                let (s, t) = (self.string(&args[0])?, self.string(&args[1])?);
                Value::Str(s + &t)
            }
            Builtin::Replace => {
                let s = self.string(&args[0])?;
                let (t, r) = (self.string(&args[1])?, self.string(&args[2])?);
                Value::Str(replace(&s, &t, &r))
            }
            Builtin::Substring => {
                let s = self.string(&args[0])?;
                let (from, to) = (self.int(&args[1])?, self.int(&args[2])?);
                Value::Str(
                    substring(&s, from, to).ok_or(RuntimeError::SubstringOutOfRange {
                        pos,
                        from,
                        to,
                        len: s.chars().count(),
                    })?,
                )
            }
        })
    }
}

fn mismatch(pos: Pos, wanted: &str, got: &Value) -> RuntimeError {
    RuntimeError::TypeMismatch {
        pos,
        message: alloc::format!("expected {wanted}, found {got}"),
    }
}
