//! Abstract interpreter: a structural fixpoint over the syntax tree with
//! bounded trace partitioning.
//!
//! Every program point holds a set of partitions, an abstract memory per
//! trace token. Conditionals split partitions by the branch taken. A loop
//! is first unrolled `partition_bound` times, each exit getting its own
//! token; the surviving traces are then merged and iterated with lub for
//! one warm-up round and widening afterwards.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::{AbstractMemory, AnalysisConfig};
use crate::imp::{BinOp, Builtin, Expr, ExprKind, Pos, Program, Stmt, StmtKind, UnOp};
use crate::value_domains::{AbstractValue, BoolSet, Interval, StringDomain};

/// One recorded control-flow decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decision {
    Branch {
        at: Pos,
        taken: bool,
    },
    /// Exit from the loop at `at` after `iteration` rounds; `None` once the
    /// loop has been summarized.
    LoopExit {
        at: Pos,
        iteration: Option<u32>,
    },
}

pub type Token = Vec<Decision>;

pub type Partitions<V> = BTreeMap<Token, AbstractMemory<V>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("loop at {at} did not stabilize within {iterations} iterations")]
    Diverged { at: Pos, iterations: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    /// The condition always holds.
    Proved,
    /// PA: the condition may fail.
    Possible,
    /// DA: the condition always fails.
    Definite,
    /// No trace reaches the assert.
    Unreachable,
}

impl Verdict {
    pub fn from_condition(b: BoolSet) -> Verdict {
        match (b.may_be_true, b.may_be_false) {
            (true, false) => Verdict::Proved,
            (true, true) => Verdict::Possible,
            (false, true) => Verdict::Definite,
            (false, false) => Verdict::Unreachable,
        }
    }

    /// "DA", "PA", or `None` when no alarm is raised.
    pub fn alarm(self) -> Option<&'static str> {
        match self {
            Verdict::Possible => Some("PA"),
            Verdict::Definite => Some("DA"),
            _ => None,
        }
    }
}

/// What the analysis knows at one assert, joined over every visit.
#[derive(Debug, Clone, PartialEq)]
pub struct AssertOutcome<V> {
    pub pos: Pos,
    pub condition: Expr,
    pub value: BoolSet,
    /// The identifiers the condition reads, with their joined values.
    pub variables: Vec<(String, AbstractValue<V>)>,
}

impl<V> AssertOutcome<V> {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_condition(self.value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult<V> {
    pub finals: Partitions<V>,
    /// One entry per assert of the program, in source order.
    pub asserts: Vec<AssertOutcome<V>>,
}

impl<V: Clone + PartialEq> AnalysisResult<V> {
    /// Join of every final partition.
    pub fn final_memory<D: StringDomain<Value = V>>(&self, dom: &D) -> AbstractMemory<V> {
        self.finals
            .values()
            .fold(AbstractMemory::new(), |acc, m| memory_lub(dom, &acc, m))
    }
}

pub fn abstract_run<D: StringDomain>(
    dom: &D,
    program: &Program,
    config: &AnalysisConfig,
) -> Result<AnalysisResult<D::Value>, AnalysisError> {
    let mut engine = Engine {
        dom,
        config,
        asserts: program
            .asserts()
            .into_iter()
            .map(|s| {
                let StmtKind::Assert(cond) = &s.kind else {
                    unreachable!("asserts() only yields asserts")
                };
                (
                    s.pos,
                    AssertOutcome {
                        pos: s.pos,
                        condition: cond.clone(),
                        value: BoolSet::BOTTOM,
                        variables: cond
                            .variables()
                            .into_iter()
                            .map(|x| (x, AbstractValue::Bottom))
                            .collect(),
                    },
                )
            })
            .collect(),
    };
    let start = Partitions::from([(Token::new(), AbstractMemory::new())]);
    let finals = engine.block(&program.body, start)?;
    Ok(AnalysisResult {
        finals,
        asserts: engine.asserts.into_values().collect(),
    })
}

pub fn memory_lub<D: StringDomain>(
    dom: &D,
    a: &AbstractMemory<D::Value>,
    b: &AbstractMemory<D::Value>,
) -> AbstractMemory<D::Value> {
    let mut out = a.clone();
    for (x, v) in b {
        let joined = match out.get(x) {
            Some(u) => u.lub(v, dom),
            None => v.clone(),
        };
        out.insert(x.clone(), joined);
    }
    out
}

/// `a ∇ b`, pointwise; identifiers only bound in `b` are taken as they are.
pub fn memory_widen<D: StringDomain>(
    dom: &D,
    a: &AbstractMemory<D::Value>,
    b: &AbstractMemory<D::Value>,
) -> AbstractMemory<D::Value> {
    let mut out = a.clone();
    for (x, v) in b {
        let widened = match out.get(x) {
            Some(u) => u.widen(v, dom),
            None => v.clone(),
        };
        out.insert(x.clone(), widened);
    }
    out
}

pub fn memory_leq<D: StringDomain>(
    dom: &D,
    a: &AbstractMemory<D::Value>,
    b: &AbstractMemory<D::Value>,
) -> bool {
    a.iter()
        .all(|(x, v)| b.get(x).is_some_and(|w| v.leq(w, dom)))
}

/// `next` adds nothing to `head`, by the domains' stability tests.
fn memory_stable<D: StringDomain>(
    dom: &D,
    head: &AbstractMemory<D::Value>,
    next: &AbstractMemory<D::Value>,
) -> bool {
    use AbstractValue as A;
    next.iter().all(|(x, v)| match (head.get(x), v) {
        (Some(A::Str(a)), A::Str(b)) => dom.stable(a, b),
        (Some(u), v) => v.leq(u, dom),
        (None, v) => v.is_bottom(),
    })
}

/// Abstract evaluation of `e`. Reading an unbound identifier or mixing
/// types yields bottom, as the concrete run would stop there.
pub fn eval<D: StringDomain>(
    dom: &D,
    e: &Expr,
    m: &AbstractMemory<D::Value>,
) -> AbstractValue<D::Value> {
    use AbstractValue as A;
    let v = match &e.kind {
        ExprKind::Var(x) => m.get(x).cloned().unwrap_or(A::Bottom),
        ExprKind::Int(v) => A::Int(Interval::constant(*v)),
        ExprKind::Bool(b) => A::Bool(BoolSet::from(*b)),
        ExprKind::Str(s) => A::Str(dom.constant(s)),
        ExprKind::Read => A::Str(dom.unknown()),
        ExprKind::Nondet => A::Bool(BoolSet::TOP),
        ExprKind::Unary(UnOp::Not, a) => match as_bool(&eval(dom, a, m)) {
            Some(b) => A::Bool(!b),
            None => A::Bottom,
        },
        ExprKind::Unary(UnOp::Neg, a) => match as_int(&eval(dom, a, m)) {
            Some(i) => A::Int(i.neg()),
            None => A::Bottom,
        },
        ExprKind::Binary(op, a, b) => {
            let (x, y) = (eval(dom, a, m), eval(dom, b, m));
            if x.is_bottom() || y.is_bottom() {
                return A::Bottom;
            }
            binary(dom, *op, &x, &y)
        }
        ExprKind::Call(f, args) => {
            let vals: Vec<_> = args.iter().map(|a| eval(dom, a, m)).collect();
            call(dom, *f, &vals)
        }
    };
    v.coalesce(dom)
}

fn as_bool<V>(v: &AbstractValue<V>) -> Option<BoolSet> {
    match v {
        AbstractValue::Bool(b) => Some(*b),
        AbstractValue::Top => Some(BoolSet::TOP),
        _ => None,
    }
}

fn as_int<V>(v: &AbstractValue<V>) -> Option<Interval> {
    match v {
        AbstractValue::Int(i) => Some(*i),
        AbstractValue::Top => Some(Interval::TOP),
        _ => None,
    }
}

fn as_str<D: StringDomain>(dom: &D, v: &AbstractValue<D::Value>) -> Option<D::Value> {
    match v {
        AbstractValue::Str(s) => Some(s.clone()),
        AbstractValue::Top => Some(dom.unknown()),
        _ => None,
    }
}

fn binary<D: StringDomain>(
    dom: &D,
    op: BinOp,
    x: &AbstractValue<D::Value>,
    y: &AbstractValue<D::Value>,
) -> AbstractValue<D::Value> {
    use AbstractValue as A;
    match op {
        BinOp::And | BinOp::Or => match (as_bool(x), as_bool(y)) {
            (Some(a), Some(b)) => A::Bool(if op == BinOp::And { a.and(b) } else { a.or(b) }),
            _ => A::Bottom,
        },
        BinOp::Add => match (x, y) {
            (A::Int(a), A::Int(b)) => A::Int(a.add(b)),
            (A::Str(a), A::Str(b)) => A::Str(dom.concat(a, b)),
            (A::Top, _) | (_, A::Top) => A::Top,
            _ => A::Bottom,
        },
        BinOp::Eq => match (x, y) {
            (A::Int(a), A::Int(b)) => A::Bool(a.equals(b)),
            (A::Str(a), A::Str(b)) => A::Bool(dom.equals(a, b)),
            (A::Bool(a), A::Bool(b)) => A::Bool(bool_equals(*a, *b)),
            (A::Top, _) | (_, A::Top) => A::Bool(BoolSet::TOP),
            _ => A::Bottom,
        },
        BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Lt => {
            let (Some(a), Some(b)) = (as_int(x), as_int(y)) else {
                return A::Bottom;
            };
            match op {
                BinOp::Sub => A::Int(a.sub(&b)),
                BinOp::Mul => A::Int(a.mul(&b)),
                BinOp::Div => A::Int(a.div(&b)),
                _ => A::Bool(a.less_than(&b)),
            }
        }
    }
}

fn bool_equals(a: BoolSet, b: BoolSet) -> BoolSet {
    let mut out = BoolSet::BOTTOM;
    for x in [true, false] {
        for y in [true, false] {
            if a.contains(x) && b.contains(y) {
                out = out.lub(BoolSet::from(x == y));
            }
        }
    }
    out
}

fn call<D: StringDomain>(
    dom: &D,
    f: Builtin,
    args: &[AbstractValue<D::Value>],
) -> AbstractValue<D::Value> {
    use AbstractValue as A;
    if args.iter().any(AbstractValue::is_bottom) {
        return A::Bottom;
    }
    let s = |i: usize| as_str(dom, &args[i]);
    match f {
        Builtin::Length => s(0).map_or(A::Bottom, |a| A::Int(dom.length(&a))),
        Builtin::IndexOf => match (s(0), s(1)) {
            (Some(a), Some(b)) => A::Int(dom.index_of(&a, &b)),
            _ => A::Bottom,
        },
        Builtin::Contains => match (s(0), s(1)) {
            (Some(a), Some(b)) => A::Bool(dom.contains(&a, &b)),
            _ => A::Bottom,
        },
        Builtin::Concat => match (s(0), s(1)) {
            (Some(a), Some(b)) => A::Str(dom.concat(&a, &b)),
            _ => A::Bottom,
        },
        Builtin::Replace => match (s(0), s(1), s(2)) {
            (Some(a), Some(b), Some(c)) => A::Str(dom.replace(&a, &b, &c)),
            _ => A::Bottom,
        },
        Builtin::Substring => match (s(0), as_int(&args[1]), as_int(&args[2])) {
            (Some(a), Some(i), Some(j)) => A::Str(dom.substring(&a, &i, &j)),
            _ => A::Bottom,
        },
    }
}

struct Engine<'a, D: StringDomain> {
    dom: &'a D,
    config: &'a AnalysisConfig,
    asserts: BTreeMap<Pos, AssertOutcome<D::Value>>,
}

impl<D: StringDomain> Engine<'_, D> {
    fn push(&self, token: &Token, d: Decision) -> Token {
        let mut t = token.clone();
        if t.len() < self.config.partition_bound {
            t.push(d);
        }
        t
    }

    fn insert(&self, parts: &mut Partitions<D::Value>, token: Token, m: AbstractMemory<D::Value>) {
        let joined = match parts.remove(&token) {
            Some(old) => memory_lub(self.dom, &old, &m),
            None => m,
        };
        parts.insert(token, joined);
    }

    fn block(
        &mut self,
        stmts: &[Stmt],
        mut parts: Partitions<D::Value>,
    ) -> Result<Partitions<D::Value>, AnalysisError> {
        for s in stmts {
            if parts.is_empty() {
                break;
            }
            parts = self.stmt(s, parts)?;
        }
        Ok(parts)
    }

    fn stmt(
        &mut self,
        s: &Stmt,
        parts: Partitions<D::Value>,
    ) -> Result<Partitions<D::Value>, AnalysisError> {
        match &s.kind {
            StmtKind::Skip => Ok(parts),
            StmtKind::Assign(x, e) => Ok(parts
                .into_iter()
                .filter_map(|(t, mut m)| {
                    let v = eval(self.dom, e, &m);
                    if v.is_bottom() {
                        return None;
                    }
                    m.insert(x.clone(), v);
                    Some((t, m))
                })
                .collect()),
            StmtKind::Assert(cond) => {
                self.record_assert(s.pos, cond, &parts);
                Ok(parts)
            }
            StmtKind::If(cond, a, b) => {
                let (mut yes, mut no) = (Partitions::new(), Partitions::new());
                for (t, m) in parts {
                    let g = guard(self.dom, cond, &m);
                    if g.may_be_true {
                        let tok = self.push(
                            &t,
                            Decision::Branch {
                                at: s.pos,
                                taken: true,
                            },
                        );
                        self.insert(&mut yes, tok, m.clone());
                    }
                    if g.may_be_false {
                        let tok = self.push(
                            &t,
                            Decision::Branch {
                                at: s.pos,
                                taken: false,
                            },
                        );
                        self.insert(&mut no, tok, m);
                    }
                }
                let mut out = self.block(a, yes)?;
                for (t, m) in self.block(b, no)? {
                    self.insert(&mut out, t, m);
                }
                Ok(out)
            }
            StmtKind::While(cond, body) => self.while_loop(s.pos, cond, body, parts),
        }
    }

    fn record_assert(&mut self, at: Pos, cond: &Expr, parts: &Partitions<D::Value>) {
        let dom = self.dom;
        let entry = self
            .asserts
            .get_mut(&at)
            .expect("asserts collected up front");
        for m in parts.values() {
            entry.value = entry.value.lub(guard(dom, cond, m));
            for (x, v) in &mut entry.variables {
                if let Some(w) = m.get(x) {
                    *v = v.lub(w, dom);
                }
            }
        }
    }

    fn while_loop(
        &mut self,
        at: Pos,
        cond: &Expr,
        body: &[Stmt],
        mut current: Partitions<D::Value>,
    ) -> Result<Partitions<D::Value>, AnalysisError> {
        let mut exits = Partitions::new();
        for iteration in 0..self.config.partition_bound {
            let mut inside = Partitions::new();
            for (t, m) in current {
                let g = guard(self.dom, cond, &m);
                if g.may_be_false {
                    let exit = Decision::LoopExit {
                        at,
                        iteration: Some(iteration as u32),
                    };
                    let tok = self.push(&t, exit);
                    self.insert(&mut exits, tok, m.clone());
                }
                if g.may_be_true {
                    self.insert(&mut inside, t, m);
                }
            }
            current = self.block(body, inside)?;
            if current.is_empty() {
                return Ok(exits);
            }
        }

        // summarize the remaining traces under their common token prefix
        let mut tokens = current.keys();
        let mut prefix = tokens.next().cloned().unwrap_or_default();
        for t in tokens {
            let common = prefix.iter().zip(t).take_while(|(a, b)| a == b).count();
            prefix.truncate(common);
        }
        let mut head = current.values().fold(AbstractMemory::new(), |acc, m| {
            memory_lub(self.dom, &acc, m)
        });
        let mut rounds = 0;
        loop {
            rounds += 1;
            if rounds > self.config.max_iterations {
                return Err(AnalysisError::Diverged {
                    at,
                    iterations: rounds - 1,
                });
            }
            let inside = filter(self.dom, cond, &head, true);
            let after = match inside {
                Some(m) => self
                    .block(body, Partitions::from([(prefix.clone(), m)]))?
                    .values()
                    .fold(AbstractMemory::new(), |acc, m| {
                        memory_lub(self.dom, &acc, m)
                    }),
                None => AbstractMemory::new(),
            };
            let joined = memory_lub(self.dom, &head, &after);
            let next = if rounds <= WARM_UP {
                joined
            } else {
                memory_widen(self.dom, &head, &joined)
            };
            // the warm-up rounds always run, so a summarized loop is widened
            // at least once
            if rounds > WARM_UP && memory_stable(self.dom, &head, &next) {
                break;
            }
            head = next;
        }
        if let Some(m) = filter(self.dom, cond, &head, false) {
            let tok = self.push(
                &prefix,
                Decision::LoopExit {
                    at,
                    iteration: None,
                },
            );
            self.insert(&mut exits, tok, m);
        }
        Ok(exits)
    }
}

/// Rounds of plain lub at a loop head before widening kicks in.
const WARM_UP: usize = 1;

/// The guard's truth values in `m`. Non-boolean guards stop the concrete
/// run, so they admit neither branch.
fn guard<D: StringDomain>(dom: &D, cond: &Expr, m: &AbstractMemory<D::Value>) -> BoolSet {
    as_bool(&eval(dom, cond, m)).unwrap_or(BoolSet::BOTTOM)
}

/// `m` if the guard may evaluate to `branch` in it.
fn filter<D: StringDomain>(
    dom: &D,
    cond: &Expr,
    m: &AbstractMemory<D::Value>,
    branch: bool,
) -> Option<AbstractMemory<D::Value>> {
    guard(dom, cond, m).contains(branch).then(|| m.clone())
}
