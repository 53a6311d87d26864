//! Static evaluation of full-format expressions down to ground LTL formulas.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ast::{BigOpKind, BinOp, Binder, Definition, Expr, ExprKind, Guard, Pos, Spec, UnaryOp};
use crate::ltl::{Connective, Formula, View};

pub const DEFAULT_RECURSION_LIMIT: usize = 10_000;

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Nat(u64),
    Bool(bool),
    /// Sorted and free of duplicates.
    Set(Vec<Value>),
    Signal(String),
    Bus {
        name: String,
        width: u64,
    },
    Formula(Formula),
}

impl Value {
    /// Builds a set value. Mixed signals, booleans and formulas are all
    /// lifted to formulas first so that equal formulas collapse.
    pub fn set(mut elems: Vec<Value>) -> Value {
        let kinds = |v: &Value| core::mem::discriminant(v);
        if let Some(first) = elems.first() {
            let k = kinds(first);
            if elems.iter().any(|v| kinds(v) != k) && elems.iter().all(Value::is_ltl_like) {
                elems = elems.into_iter().map(|v| Value::Formula(v.to_formula().unwrap())).collect();
            }
        }
        elems.sort();
        elems.dedup();
        Value::Set(elems)
    }

    pub fn is_ltl_like(&self) -> bool {
        matches!(self, Value::Bool(_) | Value::Signal(_) | Value::Formula(_))
    }

    /// The value as an LTL formula, if it is one.
    pub fn to_formula(&self) -> Option<Formula> {
        match self {
            Value::Bool(b) => Some(Formula::constant(*b)),
            Value::Signal(s) => Some(Formula::atom(s.as_str())),
            Value::Formula(f) => Some(f.clone()),
            _ => None,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Value::Nat(_) => "a natural number",
            Value::Bool(_) => "a boolean",
            Value::Set(_) => "a set",
            Value::Signal(_) => "a signal",
            Value::Bus { .. } => "a bus",
            Value::Formula(_) => "an LTL formula",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Set(elems) => {
                f.write_str("{")?;
                for (i, v) in elems.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            Value::Signal(s) => f.write_str(s),
            Value::Bus { name, width } => write!(f, "{name}[{width}]"),
            Value::Formula(phi) => write!(f, "{phi}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalErrorKind {
    Overflow(&'static str),
    /// Subtraction below zero.
    Underflow,
    DivisionByZero,
    EmptyMinMax(&'static str),
    /// `(*)` over no sets at all.
    EmptyIntersection,
    BusIndexOutOfRange {
        bus: String,
        index: u64,
        width: u64,
    },
    ZeroWidthBus(String),
    /// `{x, y .. z}` with `x >= y`.
    RangeStep {
        first: u64,
        second: u64,
    },
    /// `F[n:m]` or `G[n:m]` with `m < n`.
    EmptySugarRange {
        from: u64,
        to: u64,
    },
    RecursionLimit(usize),
    NoGuardMatched(String),
    Unbound(String),
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    CyclicBinding(String),
    /// A value of the wrong kind; only reachable for input that skipped the type checker.
    Type {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub pos: Pos,
    pub kind: EvalErrorKind,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EvalErrorKind::Overflow(op) => write!(f, "arithmetic overflow in '{op}'"),
            EvalErrorKind::Underflow => f.write_str("subtraction below zero"),
            EvalErrorKind::DivisionByZero => f.write_str("division by zero"),
            EvalErrorKind::EmptyMinMax(op) => write!(f, "{op} of an empty set"),
            EvalErrorKind::EmptyIntersection => f.write_str("intersection over no sets"),
            EvalErrorKind::BusIndexOutOfRange { bus, index, width } => {
                write!(f, "index {index} out of range for bus '{bus}' of width {width}")
            }
            EvalErrorKind::ZeroWidthBus(bus) => write!(f, "bus '{bus}' has width 0"),
            EvalErrorKind::RangeStep { first, second } => {
                write!(f, "range {{{first}, {second} .. _}} needs its first element below the second")
            }
            EvalErrorKind::EmptySugarRange { from, to } => {
                write!(f, "empty step range [{from}:{to}]")
            }
            EvalErrorKind::RecursionLimit(limit) => {
                write!(f, "recursion limit of {limit} nested calls exceeded")
            }
            EvalErrorKind::NoGuardMatched(name) => write!(f, "no guard of '{name}' applies"),
            EvalErrorKind::Unbound(name) => write!(f, "unbound identifier '{name}'"),
            EvalErrorKind::Arity { name, expected, found } => {
                write!(f, "'{name}' takes {expected} argument(s) but {found} were given")
            }
            EvalErrorKind::CyclicBinding(name) => write!(f, "'{name}' is defined in terms of itself"),
            EvalErrorKind::Type { expected, found } => write!(f, "expected {expected}, found {found}"),
        }
    }
}

impl core::error::Error for EvalError {}

type Result<T> = core::result::Result<T, EvalError>;

fn fail<T>(pos: Pos, kind: EvalErrorKind) -> Result<T> {
    Err(EvalError { pos, kind })
}

fn wrong(pos: Pos, expected: &'static str, found: &Value) -> EvalError {
    EvalError { pos, kind: EvalErrorKind::Type { expected, found: found.kind_name() } }
}

#[derive(Debug, Clone)]
enum Global {
    Ready(Value),
    Pending(Expr),
    Resolving,
}

/// Global values, function definitions, the local scope and the call depth.
#[derive(Debug, Clone)]
pub struct Env {
    globals: BTreeMap<String, Global>,
    functions: BTreeMap<String, Definition>,
    locals: Vec<(String, Value)>,
    depth: usize,
    limit: usize,
}

impl Default for Env {
    fn default() -> Self {
        Env::new()
    }
}

impl Env {
    pub fn new() -> Self {
        Env {
            globals: BTreeMap::new(),
            functions: BTreeMap::new(),
            locals: Vec::new(),
            depth: 0,
            limit: DEFAULT_RECURSION_LIMIT,
        }
    }

    pub fn with_recursion_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn recursion_limit(&self) -> usize {
        self.limit
    }

    pub fn bind(&mut self, name: &str, value: Value) -> &mut Self {
        self.globals.insert(name.into(), Global::Ready(value));
        self
    }

    /// Adds a function, or a plain binding evaluated on first use.
    pub fn define(&mut self, def: Definition) -> &mut Self {
        if def.is_function() {
            self.functions.insert(def.name.text.clone(), def);
        } else {
            let expr = def.bodies[0].expr.clone();
            self.globals.insert(def.name.text.clone(), Global::Pending(expr));
        }
        self
    }

    /// Environment of a specification: parameters (with `overrides` taking
    /// precedence), definitions, and the declared signals and buses.
    pub fn for_spec(spec: &Spec, overrides: &BTreeMap<String, u64>) -> Result<Env> {
        let mut env = Env::new();
        for p in &spec.parameters {
            let global = match overrides.get(p.name.as_str()) {
                Some(n) => Global::Ready(Value::Nat(*n)),
                None => Global::Pending(p.value.clone()),
            };
            env.globals.insert(p.name.text.clone(), global);
        }
        for d in &spec.definitions {
            env.define(d.clone());
        }
        for s in spec.inputs.iter().chain(&spec.outputs) {
            let value = match &s.width {
                None => Value::Signal(s.name.text.clone()),
                Some(w) => match env.eval(w)? {
                    Value::Nat(0) => return fail(s.name.pos, EvalErrorKind::ZeroWidthBus(s.name.text.clone())),
                    Value::Nat(width) => Value::Bus { name: s.name.text.clone(), width },
                    v => return Err(wrong(w.pos, "a natural number", &v)),
                },
            };
            env.bind(s.name.as_str(), value);
        }
        Ok(env)
    }

    /// Value of a global name, evaluating a pending binding if needed.
    pub fn global(&mut self, name: &str, pos: Pos) -> Result<Value> {
        match self.globals.get(name) {
            Some(Global::Ready(v)) => Ok(v.clone()),
            Some(Global::Resolving) => fail(pos, EvalErrorKind::CyclicBinding(name.into())),
            None => fail(pos, EvalErrorKind::Unbound(name.into())),
            Some(Global::Pending(e)) => {
                let e = e.clone();
                self.globals.insert(name.into(), Global::Resolving);
                let saved = core::mem::take(&mut self.locals);
                let result = self.eval(&e);
                self.locals = saved;
                match result {
                    Ok(v) => {
                        self.globals.insert(name.into(), Global::Ready(v.clone()));
                        Ok(v)
                    }
                    Err(err) => {
                        self.globals.insert(name.into(), Global::Pending(e));
                        Err(err)
                    }
                }
            }
        }
    }

    fn lookup(&mut self, name: &str, pos: Pos) -> Result<Value> {
        match self.locals.iter().rev().find(|(n, _)| n == name) {
            Some((_, v)) => Ok(v.clone()),
            None => self.global(name, pos),
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Value> {
        eval(e, self)
    }
}

/// Evaluates `e`. Arithmetic is checked; connectives over two booleans
/// stay boolean, anything involving a signal or temporal operator becomes a
/// formula without simplification.
pub fn eval(e: &Expr, env: &mut Env) -> Result<Value> {
    let pos = e.pos;
    match &e.kind {
        ExprKind::Nat(n) => Ok(Value::Nat(*n)),
        ExprKind::Bool(b) => Ok(Value::Bool(*b)),
        ExprKind::Id(id) => env.lookup(id.as_str(), id.pos),
        ExprKind::Wildcard => fail(pos, EvalErrorKind::Type { expected: "an expression", found: "'_'" }),
        ExprKind::BusIndex { bus, index } => {
            let b = env.lookup(bus.as_str(), bus.pos)?;
            let i = nat(env, index)?;
            match b {
                Value::Bus { name, width } if i < width => Ok(Value::Signal(format!("{name}@{i}"))),
                Value::Bus { name, width } => {
                    fail(index.pos, EvalErrorKind::BusIndexOutOfRange { bus: name, index: i, width })
                }
                v => Err(wrong(bus.pos, "a bus", &v)),
            }
        }
        ExprKind::Unary(op, arg) => {
            let v = eval(arg, env)?;
            unary(*op, v, arg.pos)
        }
        ExprKind::Binary(op, a, b) => {
            let x = eval(a, env)?;
            let y = eval(b, env)?;
            binary(*op, x, y, pos, a.pos, b.pos)
        }
        ExprKind::SetLiteral(elems) => {
            let values = elems.iter().map(|x| eval(x, env)).collect::<Result<Vec<_>>>()?;
            Ok(Value::set(values))
        }
        ExprKind::SetRange(x, y, z) => {
            let (x, y, z) = (nat(env, x)?, nat(env, y)?, nat(env, z)?);
            eval_range(x, y, z).map_err(|kind| EvalError { pos, kind })
        }
        ExprKind::Interval { lo, lo_strict, hi, hi_strict } => {
            let lo = nat(env, lo)?;
            let hi = nat(env, hi)?;
            Ok(interval(lo, *lo_strict, hi, *hi_strict))
        }
        ExprKind::BigOp { kind, binders, body } => expand_big_op(*kind, binders, body, env, pos),
        ExprKind::FnApp { name, args } => {
            let def = match env.functions.get(name.as_str()) {
                Some(d) => d.clone(),
                None => return fail(name.pos, EvalErrorKind::Unbound(name.text.clone())),
            };
            let args = args.iter().map(|a| eval(a, env)).collect::<Result<Vec<_>>>()?;
            apply_function(&def, args, env, pos)
        }
        ExprKind::NextN { count, body } => {
            let n = nat(env, count)?;
            let phi = formula(env, body)?;
            Ok(Value::Formula(next_n(n, phi)))
        }
        ExprKind::FinallyRange { from, to, body } | ExprKind::GloballyRange { from, to, body } => {
            let (n, m) = (nat(env, from)?, nat(env, to)?);
            if m < n {
                return fail(pos, EvalErrorKind::EmptySugarRange { from: n, to: m });
            }
            let phi = formula(env, body)?;
            let join = if matches!(e.kind, ExprKind::FinallyRange { .. }) { Formula::or } else { Formula::and };
            let mut acc = phi.clone();
            for _ in n..m {
                acc = join(phi.clone(), Formula::next(acc));
            }
            Ok(Value::Formula(next_n(n, acc)))
        }
    }
}

fn next_n(n: u64, mut phi: Formula) -> Formula {
    for _ in 0..n {
        phi = Formula::next(phi);
    }
    phi
}

fn nat(env: &mut Env, e: &Expr) -> Result<u64> {
    match eval(e, env)? {
        Value::Nat(n) => Ok(n),
        v => Err(wrong(e.pos, "a natural number", &v)),
    }
}

fn formula(env: &mut Env, e: &Expr) -> Result<Formula> {
    let v = eval(e, env)?;
    v.to_formula().ok_or_else(|| wrong(e.pos, "an LTL formula", &v))
}

fn set_elems(v: Value, pos: Pos) -> Result<Vec<Value>> {
    match v {
        Value::Set(elems) => Ok(elems),
        v => Err(wrong(pos, "a set", &v)),
    }
}

/// `{x, y .. z}`: every `x + j(y - x)` up to `z`.
pub fn eval_range(x: u64, y: u64, z: u64) -> core::result::Result<Value, EvalErrorKind> {
    if x >= y {
        return Err(EvalErrorKind::RangeStep { first: x, second: y });
    }
    let step = y - x;
    let mut out = Vec::new();
    let mut n = x;
    while n <= z {
        out.push(Value::Nat(n));
        match n.checked_add(step) {
            Some(next) => n = next,
            None => break,
        }
    }
    Ok(Value::Set(out))
}

fn interval(lo: u64, lo_strict: bool, hi: u64, hi_strict: bool) -> Value {
    let first = if lo_strict { lo.checked_add(1) } else { Some(lo) };
    let last = if hi_strict { hi.checked_sub(1) } else { Some(hi) };
    match (first, last) {
        (Some(a), Some(b)) if a <= b => Value::Set((a..=b).map(Value::Nat).collect()),
        _ => Value::Set(Vec::new()),
    }
}

fn unary(op: UnaryOp, v: Value, pos: Pos) -> Result<Value> {
    match op {
        UnaryOp::Neg => match v {
            Value::Bool(b) => Ok(Value::Bool(!b)),
            v => lift(v, pos).map(|f| Value::Formula(Formula::not(f))),
        },
        UnaryOp::Next => lift(v, pos).map(|f| Value::Formula(Formula::next(f))),
        UnaryOp::Finally => lift(v, pos).map(|f| Value::Formula(Formula::finally(f))),
        UnaryOp::Globally => lift(v, pos).map(|f| Value::Formula(Formula::globally(f))),
        UnaryOp::SetSize => Ok(Value::Nat(set_elems(v, pos)?.len() as u64)),
        UnaryOp::SetMin | UnaryOp::SetMax => {
            let name = if op == UnaryOp::SetMin { "MIN" } else { "MAX" };
            let elems = set_elems(v, pos)?;
            let picked = if op == UnaryOp::SetMin { elems.first() } else { elems.last() };
            match picked {
                Some(Value::Nat(n)) => Ok(Value::Nat(*n)),
                Some(other) => Err(wrong(pos, "a set of naturals", other)),
                None => fail(pos, EvalErrorKind::EmptyMinMax(name)),
            }
        }
        UnaryOp::SizeOf => match v {
            Value::Bus { width, .. } => Ok(Value::Nat(width)),
            v => Err(wrong(pos, "a bus", &v)),
        },
    }
}

fn lift(v: Value, pos: Pos) -> Result<Formula> {
    v.to_formula().ok_or_else(|| wrong(pos, "an LTL formula", &v))
}

fn arith(op: BinOp, x: u64, y: u64, pos: Pos) -> Result<u64> {
    let r = match op {
        BinOp::Add => x.checked_add(y).ok_or(EvalErrorKind::Overflow("+")),
        BinOp::Mul => x.checked_mul(y).ok_or(EvalErrorKind::Overflow("*")),
        BinOp::Sub => x.checked_sub(y).ok_or(EvalErrorKind::Underflow),
        BinOp::Div => x.checked_div(y).ok_or(EvalErrorKind::DivisionByZero),
        BinOp::Mod => x.checked_rem(y).ok_or(EvalErrorKind::DivisionByZero),
        _ => unreachable!("{op:?} is not arithmetic"),
    };
    r.map_err(|kind| EvalError { pos, kind })
}

fn connective(op: BinOp) -> Option<Connective> {
    Some(match op {
        BinOp::And => Connective::And,
        BinOp::Or => Connective::Or,
        BinOp::Implies => Connective::Implies,
        BinOp::Equiv => Connective::Equiv,
        BinOp::Until => Connective::Until,
        BinOp::Release => Connective::Release,
        BinOp::WeakUntil => Connective::WeakUntil,
        _ => return None,
    })
}

fn same(a: &Value, b: &Value) -> bool {
    match (a.to_formula(), b.to_formula()) {
        (Some(x), Some(y)) => x == y,
        _ => a == b,
    }
}

fn binary(op: BinOp, x: Value, y: Value, pos: Pos, xpos: Pos, ypos: Pos) -> Result<Value> {
    match op {
        BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod => match (x, y) {
            (Value::Nat(a), Value::Nat(b)) => arith(op, a, b, pos).map(Value::Nat),
            (Value::Nat(_), y) => Err(wrong(ypos, "a natural number", &y)),
            (x, _) => Err(wrong(xpos, "a natural number", &x)),
        },
        BinOp::Eq | BinOp::Neq | BinOp::Lt | BinOp::Leq | BinOp::Gt | BinOp::Geq => match (x, y) {
            (Value::Nat(a), Value::Nat(b)) => Ok(Value::Bool(match op {
                BinOp::Eq => a == b,
                BinOp::Neq => a != b,
                BinOp::Lt => a < b,
                BinOp::Leq => a <= b,
                BinOp::Gt => a > b,
                _ => a >= b,
            })),
            (Value::Nat(_), y) => Err(wrong(ypos, "a natural number", &y)),
            (x, _) => Err(wrong(xpos, "a natural number", &x)),
        },
        BinOp::And | BinOp::Or | BinOp::Implies | BinOp::Equiv
            if matches!((&x, &y), (Value::Bool(_), Value::Bool(_))) =>
        {
            let (Value::Bool(a), Value::Bool(b)) = (x, y) else { unreachable!() };
            Ok(Value::Bool(match op {
                BinOp::And => a && b,
                BinOp::Or => a || b,
                BinOp::Implies => !a || b,
                _ => a == b,
            }))
        }
        BinOp::In => {
            let elems = set_elems(y, ypos)?;
            Ok(Value::Bool(elems.iter().any(|v| same(v, &x))))
        }
        BinOp::Cup | BinOp::Cap | BinOp::SetMinus => {
            let a = set_elems(x, xpos)?;
            let b = set_elems(y, ypos)?;
            Ok(set_op(op, a, b))
        }
        BinOp::PatternMatch | BinOp::Guard => {
            fail(pos, EvalErrorKind::Type { expected: "an expression", found: "a guard" })
        }
        _ => {
            let c = connective(op).expect("remaining operators are LTL connectives");
            let a = lift(x, xpos)?;
            let b = lift(y, ypos)?;
            Ok(Value::Formula(Formula::binary(c, a, b)))
        }
    }
}

fn set_op(op: BinOp, a: Vec<Value>, b: Vec<Value>) -> Value {
    match op {
        BinOp::Cup => Value::set(a.into_iter().chain(b).collect()),
        BinOp::Cap => Value::set(a.into_iter().filter(|v| b.iter().any(|w| same(v, w))).collect()),
        _ => Value::set(a.into_iter().filter(|v| !b.iter().any(|w| same(v, w))).collect()),
    }
}

/// Applies a function: the first body whose guard holds, in declaration
/// order, and `otherwise` only when no other guard holds.
pub fn apply_function(def: &Definition, args: Vec<Value>, env: &mut Env, pos: Pos) -> Result<Value> {
    let params = def.params.as_deref().unwrap_or(&[]);
    if params.len() != args.len() {
        return fail(
            pos,
            EvalErrorKind::Arity { name: def.name.text.clone(), expected: params.len(), found: args.len() },
        );
    }
    if env.depth >= env.limit {
        return fail(pos, EvalErrorKind::RecursionLimit(env.limit));
    }
    let frame: Vec<(String, Value)> = params.iter().map(|p| p.text.clone()).zip(args).collect();
    let saved = core::mem::replace(&mut env.locals, frame);
    env.depth += 1;
    let result = select_body(def, env, pos);
    env.depth -= 1;
    env.locals = saved;
    result
}

fn select_body(def: &Definition, env: &mut Env, pos: Pos) -> Result<Value> {
    let mut fallback = None;
    for body in &def.bodies {
        let mark = env.locals.len();
        let holds = match &body.guard {
            Guard::Always => true,
            Guard::Otherwise => {
                fallback.get_or_insert(body);
                false
            }
            Guard::When(g) => match &g.kind {
                ExprKind::Binary(BinOp::PatternMatch, subject, pattern) => {
                    let subject = formula(env, subject)?;
                    match match_pattern(&subject, pattern) {
                        Some(captures) => {
                            env.locals.extend(captures.into_iter().map(|(n, f)| (n, Value::Formula(f))));
                            true
                        }
                        None => false,
                    }
                }
                _ => match eval(g, env)? {
                    Value::Bool(b) => b,
                    v => return Err(wrong(g.pos, "a boolean guard", &v)),
                },
            },
        };
        if holds {
            let v = eval(&body.expr, env);
            env.locals.truncate(mark);
            return v;
        }
    }
    match fallback {
        Some(body) => eval(&body.expr, env),
        None => fail(pos, EvalErrorKind::NoGuardMatched(def.name.text.clone())),
    }
}

fn pattern_connective(e: &Expr) -> Option<Connective> {
    match &e.kind {
        ExprKind::Unary(op, _) => Some(match op {
            UnaryOp::Neg => Connective::Not,
            UnaryOp::Next => Connective::Next,
            UnaryOp::Finally => Connective::Finally,
            UnaryOp::Globally => Connective::Globally,
            _ => return None,
        }),
        ExprKind::Binary(op, _, _) => connective(*op),
        _ => None,
    }
}

/// Matches `subject` against `pattern` node for node. Each identifier
/// captures the subtree in its place; an identifier used twice must capture
/// equal subtrees.
pub fn match_pattern(subject: &Formula, pattern: &Expr) -> Option<Vec<(String, Formula)>> {
    let mut captures = Vec::new();
    matches(subject, pattern, &mut captures).then_some(captures)
}

fn matches(subject: &Formula, pattern: &Expr, captures: &mut Vec<(String, Formula)>) -> bool {
    match (&pattern.kind, subject.view()) {
        (ExprKind::Wildcard, _) => true,
        (ExprKind::Id(id), _) => match captures.iter().find(|(n, _)| n == id.as_str()) {
            Some((_, bound)) => bound == subject,
            None => {
                captures.push((id.text.clone(), subject.clone()));
                true
            }
        },
        (ExprKind::Bool(b), View::Const(c)) => *b == c,
        (ExprKind::Unary(_, p), View::Unary(c, s)) => pattern_connective(pattern) == Some(c) && matches(s, p, captures),
        (ExprKind::Binary(_, p, q), View::Binary(c, s, t)) => {
            pattern_connective(pattern) == Some(c) && matches(s, p, captures) && matches(t, q, captures)
        }
        _ => false,
    }
}

/// Folds the body over every combination of binder values. Later binder
/// domains are evaluated with the earlier binders in scope.
pub fn expand_big_op(kind: BigOpKind, binders: &[Binder], body: &Expr, env: &mut Env, pos: Pos) -> Result<Value> {
    let mut leaves = Vec::new();
    let mark = env.locals.len();
    let r = collect_leaves(binders, body, env, &mut leaves);
    env.locals.truncate(mark);
    r?;
    let mut acc: Option<Value> = None;
    for (v, at) in leaves {
        acc = Some(match acc {
            None => v,
            Some(a) => fold_step(kind, a, v, pos, at)?,
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => match kind {
            BigOpKind::And => Ok(Value::Bool(true)),
            BigOpKind::Or => Ok(Value::Bool(false)),
            BigOpKind::Sum => Ok(Value::Nat(0)),
            BigOpKind::Prod => Ok(Value::Nat(1)),
            BigOpKind::Cup => Ok(Value::Set(Vec::new())),
            BigOpKind::Cap => fail(pos, EvalErrorKind::EmptyIntersection),
        },
    }
}

fn collect_leaves(binders: &[Binder], body: &Expr, env: &mut Env, out: &mut Vec<(Value, Pos)>) -> Result<()> {
    let Some((first, rest)) = binders.split_first() else {
        out.push((eval(body, env)?, body.pos));
        return Ok(());
    };
    let domain = set_elems(eval(&first.domain, env)?, first.domain.pos)?;
    for v in domain {
        env.locals.push((first.var.text.clone(), v));
        let r = collect_leaves(rest, body, env, out);
        env.locals.pop();
        r?;
    }
    Ok(())
}

fn fold_step(kind: BigOpKind, a: Value, b: Value, pos: Pos, bpos: Pos) -> Result<Value> {
    let op = match kind {
        BigOpKind::Sum => BinOp::Add,
        BigOpKind::Prod => BinOp::Mul,
        BigOpKind::Cup => BinOp::Cup,
        BigOpKind::Cap => BinOp::Cap,
        BigOpKind::And => BinOp::And,
        BigOpKind::Or => BinOp::Or,
    };
    binary(op, a, b, pos, pos, bpos)
}

/// Rewrites one sugar node into the core constructs it abbreviates.
///
/// `X[n]`, `F[n:m]` and `G[n:m]` unfold into nested `X`; a bound range
/// binder `lo <= i < hi` becomes `i IN {lo', lo'+1 .. hi'}` with the bounds
/// adjusted for strictness, or `i IN {}` when it is empty. Other
/// expressions are returned unchanged.
pub fn expand_sugar(e: &Expr, env: &mut Env) -> Result<Expr> {
    let pos = e.pos;
    let next = |x: Expr| Expr::new(ExprKind::Unary(UnaryOp::Next, x.into()), pos);
    match &e.kind {
        ExprKind::NextN { count, body } => {
            let n = nat(env, count)?;
            Ok((0..n).fold((**body).clone(), |acc, _| next(acc)))
        }
        ExprKind::FinallyRange { from, to, body } | ExprKind::GloballyRange { from, to, body } => {
            let (n, m) = (nat(env, from)?, nat(env, to)?);
            if m < n {
                return fail(pos, EvalErrorKind::EmptySugarRange { from: n, to: m });
            }
            let op = if matches!(e.kind, ExprKind::FinallyRange { .. }) { BinOp::Or } else { BinOp::And };
            let mut acc = (**body).clone();
            for _ in n..m {
                acc = Expr::new(ExprKind::Binary(op, body.clone(), next(acc).into()), pos);
            }
            Ok((0..n).fold(acc, |acc, _| next(acc)))
        }
        ExprKind::BigOp { kind, binders, body } => {
            let mut out = Vec::with_capacity(binders.len());
            for b in binders {
                let domain = match &b.domain.kind {
                    ExprKind::Interval { lo, lo_strict, hi, hi_strict } => {
                        let d = b.domain.pos;
                        let lo = nat(env, lo)?;
                        let hi = nat(env, hi)?;
                        let first = if *lo_strict { lo.checked_add(1) } else { Some(lo) };
                        let last = if *hi_strict { hi.checked_sub(1) } else { Some(hi) };
                        let kind = match (first, last) {
                            (Some(a), Some(z)) if a <= z && a < u64::MAX => ExprKind::SetRange(
                                Expr::new(ExprKind::Nat(a), d).into(),
                                Expr::new(ExprKind::Nat(a + 1), d).into(),
                                Expr::new(ExprKind::Nat(z), d).into(),
                            ),
                            (Some(a), Some(z)) if a <= z => {
                                ExprKind::SetLiteral(alloc::vec![Expr::new(ExprKind::Nat(a), d)])
                            }
                            _ => ExprKind::SetLiteral(Vec::new()),
                        };
                        Expr::new(kind, d)
                    }
                    _ => b.domain.clone(),
                };
                out.push(Binder { var: b.var.clone(), domain });
            }
            Ok(Expr::new(ExprKind::BigOp { kind: *kind, binders: out, body: body.clone() }, pos))
        }
        _ => Ok(e.clone()),
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, g) in &self.globals {
            if let Global::Ready(v) = g {
                writeln!(f, "{name} = {v}")?;
            }
        }
        for name in self.functions.keys() {
            writeln!(f, "{name}(..)")?;
        }
        Ok(())
    }
}
