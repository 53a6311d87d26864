//! Static types for full-format specifications.
//!
//! Functions are checked once per tuple of argument types (monomorphized at
//! the call site). A recursive instantiation starts from an unknown result
//! type and is re-checked until its result type stops changing.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ast::{BigOpKind, BinOp, Definition, Expr, ExprKind, Guard, Ident, Pos, Spec, Ty, UnaryOp};

const UNKNOWN: Ty = Ty::Var(0);
const MAX_INSTANTIATION_DEPTH: usize = 64;
const MAX_FIXPOINT_ROUNDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeErrorKind {
    Mismatch {
        expected: String,
        found: Ty,
    },
    /// Two operands, set elements or function branches whose types have no
    /// common supertype.
    Incompatible {
        what: &'static str,
        left: Ty,
        right: Ty,
    },
    Unbound(String),
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    NotAFunction(String),
    FunctionWithoutArguments(String),
    CyclicBinding(Vec<String>),
    DuplicateName(String),
    /// A construct outside the place it may appear, such as `_` outside a pattern.
    Misplaced(&'static str),
    InvalidPattern,
    /// Instantiations nest deeper than the checker follows, or a recursive
    /// result type does not settle.
    Unresolvable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub pos: Pos,
    pub kind: TypeErrorKind,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TypeErrorKind::Mismatch { expected, found } => {
                write!(f, "type mismatch: expected {expected}, found {found}")
            }
            TypeErrorKind::Incompatible { what, left, right } => {
                write!(f, "{what} of incompatible types {left} and {right}")
            }
            TypeErrorKind::Unbound(name) => write!(f, "unbound identifier '{name}'"),
            TypeErrorKind::Arity { name, expected, found } => {
                write!(f, "'{name}' takes {expected} argument(s) but {found} were given")
            }
            TypeErrorKind::NotAFunction(name) => write!(f, "'{name}' is not a function"),
            TypeErrorKind::FunctionWithoutArguments(name) => {
                write!(f, "function '{name}' used without arguments")
            }
            TypeErrorKind::CyclicBinding(cycle) => {
                write!(f, "cyclic binding: {}", cycle.join(" -> "))
            }
            TypeErrorKind::DuplicateName(name) => write!(f, "'{name}' is declared more than once"),
            TypeErrorKind::Misplaced(what) => write!(f, "{what}"),
            TypeErrorKind::InvalidPattern => {
                f.write_str("patterns may only use identifiers, '_', true, false and LTL connectives")
            }
            TypeErrorKind::Unresolvable(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for TypeError {}

fn err<T>(pos: Pos, kind: TypeErrorKind) -> Result<T, TypeError> {
    Err(TypeError { pos, kind })
}

fn expect(pos: Pos, expected: &str, found: &Ty) -> TypeError {
    TypeError { pos, kind: TypeErrorKind::Mismatch { expected: expected.into(), found: found.clone() } }
}

/// Least common supertype, if any.
pub fn join(a: &Ty, b: &Ty) -> Option<Ty> {
    match (a, b) {
        (Ty::Var(_), t) | (t, Ty::Var(_)) => Some(t.clone()),
        (Ty::Set(x), Ty::Set(y)) => Some(Ty::set_of(join(x, y)?)),
        (x, y) if x == y => Some(x.clone()),
        (x, y) if x.is_ltl_like() && y.is_ltl_like() => Some(Ty::Ltl),
        _ => None,
    }
}

fn is_nat(t: &Ty) -> bool {
    matches!(t, Ty::Nat | Ty::Var(_))
}

fn is_bool(t: &Ty) -> bool {
    matches!(t, Ty::Bool | Ty::Var(_))
}

#[derive(Debug, Clone, PartialEq)]
enum Global {
    Typed(Ty),
    /// A parameter or plain binding whose type is computed on first use.
    Pending(Expr),
    Function {
        def: Definition,
        instances: BTreeMap<Vec<Ty>, Instance>,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Instance {
    /// Being checked; recursive calls see the current assumption.
    Assumed(Ty),
    Done(Ty),
}

/// Types of every global name: parameters, signals, buses, plain bindings,
/// and the instantiations of each function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TypeEnv {
    globals: BTreeMap<String, Global>,
}

impl TypeEnv {
    pub fn new() -> Self {
        TypeEnv::default()
    }

    /// Binds `name` to a fixed type.
    pub fn bind(&mut self, name: &str, ty: Ty) -> &mut Self {
        self.globals.insert(name.into(), Global::Typed(ty));
        self
    }

    pub fn define(&mut self, def: Definition) -> &mut Self {
        let name = def.name.text.clone();
        let global = if def.is_function() {
            Global::Function { def, instances: BTreeMap::new() }
        } else {
            Global::Pending(def.bodies[0].expr.clone())
        };
        self.globals.insert(name, global);
        self
    }

    /// Type of a non-function global, when already resolved.
    pub fn lookup(&self, name: &str) -> Option<&Ty> {
        match self.globals.get(name)? {
            Global::Typed(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_function(&self, name: &str) -> bool {
        matches!(self.globals.get(name), Some(Global::Function { .. }))
    }

    /// Checked instantiations of a function: argument types and result type.
    pub fn instances(&self, name: &str) -> Vec<(Vec<Ty>, Ty)> {
        match self.globals.get(name) {
            Some(Global::Function { instances, .. }) => instances
                .iter()
                .filter_map(|(args, inst)| match inst {
                    Instance::Done(t) => Some((args.clone(), t.clone())),
                    Instance::Assumed(_) => None,
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Result type of `name` applied to arguments of the given types, if
    /// that instantiation was checked.
    pub fn result_type(&self, name: &str, args: &[Ty]) -> Option<Ty> {
        self.instances(name).into_iter().find(|(a, _)| a == args).map(|(_, t)| t)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.globals.keys().map(String::as_str)
    }
}

/// Infers the type of `e` with global names resolved in `env`.
pub fn infer(e: &Expr, env: &TypeEnv) -> Result<Ty, TypeError> {
    let mut checker = Checker { env: env.clone(), resolving: Vec::new(), depth: 0 };
    checker.infer(e, &mut Vec::new())
}

/// Checks a whole specification and returns the types of its global names.
pub fn check_spec(spec: &Spec) -> Result<TypeEnv, TypeError> {
    let mut env = TypeEnv::new();
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    let names = spec
        .parameters
        .iter()
        .map(|p| &p.name)
        .chain(spec.definitions.iter().map(|d| &d.name))
        .chain(spec.inputs.iter().chain(&spec.outputs).map(|s| &s.name));
    for name in names {
        if seen.insert(name.as_str(), name.pos).is_some() {
            return err(name.pos, TypeErrorKind::DuplicateName(name.text.clone()));
        }
    }

    for p in &spec.parameters {
        env.globals.insert(p.name.text.clone(), Global::Pending(p.value.clone()));
    }
    for d in &spec.definitions {
        env.define(d.clone());
    }
    for s in spec.inputs.iter().chain(&spec.outputs) {
        env.bind(s.name.as_str(), if s.width.is_some() { Ty::Bus } else { Ty::Signal });
    }

    let mut checker = Checker { env, resolving: Vec::new(), depth: 0 };
    for p in &spec.parameters {
        let t = checker.resolve(&p.name)?;
        if !is_nat(&t) {
            return Err(expect(p.value.pos, "a natural number", &t));
        }
    }
    for s in spec.inputs.iter().chain(&spec.outputs) {
        if let Some(width) = &s.width {
            let t = checker.infer(width, &mut Vec::new())?;
            if !is_nat(&t) {
                return Err(expect(width.pos, "a natural bus width", &t));
            }
        }
    }
    for d in spec.definitions.iter().filter(|d| !d.is_function()) {
        checker.resolve(&d.name)?;
    }
    for section in [&spec.assumptions, &spec.invariants, &spec.guarantees] {
        for e in section {
            let t = checker.infer(e, &mut Vec::new())?;
            if !t.is_ltl_like() {
                return Err(expect(e.pos, "an LTL formula", &t));
            }
        }
    }
    // Functions never called are still checked, with unknown arguments.
    for d in spec.definitions.iter().filter(|d| d.is_function()) {
        if checker.env.instances(d.name.as_str()).is_empty() {
            checker.instantiate(&d.name, vec![UNKNOWN; d.arity()])?;
        }
    }
    Ok(checker.env)
}

struct Checker {
    env: TypeEnv,
    /// Plain bindings under resolution, for cycle reports.
    resolving: Vec<String>,
    depth: usize,
}

type Scope = Vec<(String, Ty)>;

impl Checker {
    fn resolve(&mut self, name: &Ident) -> Result<Ty, TypeError> {
        match self.env.globals.get(name.as_str()) {
            None => err(name.pos, TypeErrorKind::Unbound(name.text.clone())),
            Some(Global::Typed(t)) => Ok(t.clone()),
            Some(Global::Function { .. }) => err(name.pos, TypeErrorKind::FunctionWithoutArguments(name.text.clone())),
            Some(Global::Pending(e)) => {
                if let Some(start) = self.resolving.iter().position(|n| n == name.as_str()) {
                    let mut cycle = self.resolving[start..].to_vec();
                    cycle.push(name.text.clone());
                    return err(name.pos, TypeErrorKind::CyclicBinding(cycle));
                }
                let e = e.clone();
                self.resolving.push(name.text.clone());
                // Bindings see only global names, never the caller's locals.
                let t = self.infer(&e, &mut Vec::new());
                self.resolving.pop();
                let t = t?;
                self.env.globals.insert(name.text.clone(), Global::Typed(t.clone()));
                Ok(t)
            }
        }
    }

    fn lookup(&mut self, id: &Ident, scope: &Scope) -> Result<Ty, TypeError> {
        match scope.iter().rev().find(|(n, _)| n == id.as_str()) {
            Some((_, t)) => Ok(t.clone()),
            None => self.resolve(id),
        }
    }

    fn instantiate(&mut self, name: &Ident, args: Vec<Ty>) -> Result<Ty, TypeError> {
        let def = match self.env.globals.get(name.as_str()) {
            Some(Global::Function { def, instances }) => match instances.get(&args) {
                Some(Instance::Done(t) | Instance::Assumed(t)) => return Ok(t.clone()),
                None => def.clone(),
            },
            Some(_) => return err(name.pos, TypeErrorKind::NotAFunction(name.text.clone())),
            None => return err(name.pos, TypeErrorKind::Unbound(name.text.clone())),
        };
        if def.arity() != args.len() {
            return err(
                name.pos,
                TypeErrorKind::Arity { name: name.text.clone(), expected: def.arity(), found: args.len() },
            );
        }
        if self.depth >= MAX_INSTANTIATION_DEPTH {
            return err(
                name.pos,
                TypeErrorKind::Unresolvable(format!(
                    "instantiations of '{name}' nest more than {MAX_INSTANTIATION_DEPTH} deep"
                )),
            );
        }

        self.depth += 1;
        let result = self.settle(&def, &args);
        self.depth -= 1;
        let set = |env: &mut TypeEnv, inst: Option<Instance>| {
            if let Some(Global::Function { instances, .. }) = env.globals.get_mut(name.as_str()) {
                match inst {
                    Some(i) => instances.insert(args.clone(), i),
                    None => instances.remove(&args),
                };
            }
        };
        match result {
            Ok(t) => {
                set(&mut self.env, Some(Instance::Done(t.clone())));
                Ok(t)
            }
            Err(e) => {
                set(&mut self.env, None);
                Err(e)
            }
        }
    }

    /// Re-checks the bodies until the assumed result type is reproduced.
    fn settle(&mut self, def: &Definition, args: &[Ty]) -> Result<Ty, TypeError> {
        let mut assumed = UNKNOWN;
        for _ in 0..MAX_FIXPOINT_ROUNDS {
            if let Some(Global::Function { instances, .. }) = self.env.globals.get_mut(def.name.as_str()) {
                instances.insert(args.to_vec(), Instance::Assumed(assumed.clone()));
            }
            let t = self.bodies(def, args)?;
            if t == assumed {
                return Ok(t);
            }
            assumed = t;
        }
        err(def.name.pos, TypeErrorKind::Unresolvable(format!("the result type of '{}' does not settle", def.name)))
    }

    fn bodies(&mut self, def: &Definition, args: &[Ty]) -> Result<Ty, TypeError> {
        let params = def.params.as_deref().unwrap_or(&[]);
        let mut result = UNKNOWN;
        for body in &def.bodies {
            let mut scope: Scope = params.iter().map(|p| p.text.clone()).zip(args.iter().cloned()).collect();
            if let Guard::When(g) = &body.guard {
                match &g.kind {
                    ExprKind::Binary(BinOp::PatternMatch, subject, pattern) => {
                        let t = self.infer(subject, &mut scope)?;
                        if !t.is_ltl_like() {
                            return Err(expect(subject.pos, "an LTL formula to match", &t));
                        }
                        check_pattern(pattern)?;
                        for var in crate::ast::pattern_variables(pattern) {
                            scope.push((var, Ty::Ltl));
                        }
                    }
                    _ => {
                        let t = self.infer(g, &mut scope)?;
                        if !is_bool(&t) {
                            return Err(expect(g.pos, "a boolean guard", &t));
                        }
                    }
                }
            }
            let t = self.infer(&body.expr, &mut scope)?;
            result = join(&result, &t).ok_or_else(|| TypeError {
                pos: body.expr.pos,
                kind: TypeErrorKind::Incompatible { what: "function branches", left: result.clone(), right: t.clone() },
            })?;
        }
        Ok(result)
    }

    fn ltl_operand(&mut self, e: &Expr, scope: &mut Scope) -> Result<Ty, TypeError> {
        let t = self.infer(e, scope)?;
        if t.is_ltl_like() {
            Ok(t)
        } else {
            Err(expect(e.pos, "an LTL formula", &t))
        }
    }

    fn nat_operand(&mut self, e: &Expr, scope: &mut Scope) -> Result<(), TypeError> {
        let t = self.infer(e, scope)?;
        if is_nat(&t) {
            Ok(())
        } else {
            Err(expect(e.pos, "a natural number", &t))
        }
    }

    fn set_operand(&mut self, e: &Expr, scope: &mut Scope) -> Result<Ty, TypeError> {
        match self.infer(e, scope)? {
            Ty::Set(inner) => Ok(*inner),
            Ty::Var(_) => Ok(UNKNOWN),
            t => Err(expect(e.pos, "a set", &t)),
        }
    }

    fn domain(&mut self, e: &Expr, scope: &mut Scope) -> Result<Ty, TypeError> {
        match &e.kind {
            ExprKind::Interval { lo, hi, .. } => {
                self.nat_operand(lo, scope)?;
                self.nat_operand(hi, scope)?;
                Ok(Ty::Nat)
            }
            _ => self.set_operand(e, scope),
        }
    }

    /// `Bool` when both sides are static booleans, `Ltl` otherwise.
    fn connective(&mut self, a: &Expr, b: &Expr, scope: &mut Scope) -> Result<Ty, TypeError> {
        let ta = self.ltl_operand(a, scope)?;
        let tb = self.ltl_operand(b, scope)?;
        Ok(match (&ta, &tb) {
            (Ty::Bool, Ty::Bool) => Ty::Bool,
            (Ty::Var(_), Ty::Var(_) | Ty::Bool) | (Ty::Bool, Ty::Var(_)) => UNKNOWN,
            _ => Ty::Ltl,
        })
    }

    fn infer(&mut self, e: &Expr, scope: &mut Scope) -> Result<Ty, TypeError> {
        match &e.kind {
            ExprKind::Nat(_) => Ok(Ty::Nat),
            ExprKind::Bool(_) => Ok(Ty::Bool),
            ExprKind::Id(id) => self.lookup(id, scope),
            ExprKind::Wildcard => err(e.pos, TypeErrorKind::Misplaced("'_' may only appear in patterns")),
            ExprKind::BusIndex { bus, index } => {
                let t = self.lookup(bus, scope)?;
                if !matches!(t, Ty::Bus | Ty::Var(_)) {
                    return Err(expect(bus.pos, "a bus", &t));
                }
                self.nat_operand(index, scope)?;
                Ok(Ty::Signal)
            }
            ExprKind::Unary(op, arg) => match op {
                UnaryOp::Neg => {
                    let t = self.ltl_operand(arg, scope)?;
                    Ok(if is_bool(&t) { t } else { Ty::Ltl })
                }
                UnaryOp::Next | UnaryOp::Globally | UnaryOp::Finally => {
                    self.ltl_operand(arg, scope)?;
                    Ok(Ty::Ltl)
                }
                UnaryOp::SetSize => {
                    self.set_operand(arg, scope)?;
                    Ok(Ty::Nat)
                }
                UnaryOp::SetMin | UnaryOp::SetMax => {
                    let inner = self.set_operand(arg, scope)?;
                    if is_nat(&inner) {
                        Ok(Ty::Nat)
                    } else {
                        Err(expect(arg.pos, "a set of naturals", &Ty::set_of(inner)))
                    }
                }
                UnaryOp::SizeOf => {
                    let t = self.infer(arg, scope)?;
                    if matches!(t, Ty::Bus | Ty::Var(_)) {
                        Ok(Ty::Nat)
                    } else {
                        Err(expect(arg.pos, "a bus", &t))
                    }
                }
            },
            ExprKind::Binary(op, a, b) => self.binary(*op, a, b, e.pos, scope),
            ExprKind::SetLiteral(elems) => {
                let mut inner = UNKNOWN;
                for elem in elems {
                    let t = self.infer(elem, scope)?;
                    inner = join(&inner, &t).ok_or_else(|| TypeError {
                        pos: elem.pos,
                        kind: TypeErrorKind::Incompatible {
                            what: "set elements",
                            left: inner.clone(),
                            right: t.clone(),
                        },
                    })?;
                }
                Ok(Ty::set_of(inner))
            }
            ExprKind::SetRange(x, y, z) => {
                self.nat_operand(x, scope)?;
                self.nat_operand(y, scope)?;
                self.nat_operand(z, scope)?;
                Ok(Ty::set_of(Ty::Nat))
            }
            ExprKind::Interval { .. } => {
                err(e.pos, TypeErrorKind::Misplaced("a bound range may only appear as a binder"))
            }
            ExprKind::BigOp { kind, binders, body } => {
                let mark = scope.len();
                let result = (|| {
                    for binder in binders {
                        let t = self.domain(&binder.domain, scope)?;
                        scope.push((binder.var.text.clone(), t));
                    }
                    let t = self.infer(body, scope)?;
                    match kind {
                        BigOpKind::Sum | BigOpKind::Prod if is_nat(&t) => Ok(Ty::Nat),
                        BigOpKind::Sum | BigOpKind::Prod => Err(expect(body.pos, "a natural number", &t)),
                        BigOpKind::Cup | BigOpKind::Cap => match t {
                            Ty::Set(_) | Ty::Var(_) => Ok(t),
                            _ => Err(expect(body.pos, "a set", &t)),
                        },
                        BigOpKind::And | BigOpKind::Or => match t {
                            Ty::Bool | Ty::Var(_) => Ok(t),
                            t if t.is_ltl_like() => Ok(Ty::Ltl),
                            _ => Err(expect(body.pos, "a boolean or LTL formula", &t)),
                        },
                    }
                })();
                scope.truncate(mark);
                result
            }
            ExprKind::FnApp { name, args } => {
                if scope.iter().any(|(n, _)| n == name.as_str()) {
                    return err(name.pos, TypeErrorKind::NotAFunction(name.text.clone()));
                }
                let mut tys = Vec::with_capacity(args.len());
                for arg in args {
                    tys.push(self.infer(arg, scope)?);
                }
                self.instantiate(name, tys)
            }
            ExprKind::NextN { count, body } => {
                self.nat_operand(count, scope)?;
                self.ltl_operand(body, scope)?;
                Ok(Ty::Ltl)
            }
            ExprKind::FinallyRange { from, to, body } | ExprKind::GloballyRange { from, to, body } => {
                self.nat_operand(from, scope)?;
                self.nat_operand(to, scope)?;
                self.ltl_operand(body, scope)?;
                Ok(Ty::Ltl)
            }
        }
    }

    fn binary(&mut self, op: BinOp, a: &Expr, b: &Expr, pos: Pos, scope: &mut Scope) -> Result<Ty, TypeError> {
        match op {
            BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod => {
                self.nat_operand(a, scope)?;
                self.nat_operand(b, scope)?;
                Ok(Ty::Nat)
            }
            BinOp::Eq | BinOp::Neq | BinOp::Lt | BinOp::Leq | BinOp::Gt | BinOp::Geq => {
                self.nat_operand(a, scope)?;
                self.nat_operand(b, scope)?;
                Ok(Ty::Bool)
            }
            BinOp::And | BinOp::Or | BinOp::Implies | BinOp::Equiv => self.connective(a, b, scope),
            BinOp::Until | BinOp::Release | BinOp::WeakUntil => {
                self.ltl_operand(a, scope)?;
                self.ltl_operand(b, scope)?;
                Ok(Ty::Ltl)
            }
            BinOp::In => {
                let elem = self.infer(a, scope)?;
                let inner = self.set_operand(b, scope)?;
                match join(&elem, &inner) {
                    Some(_) => Ok(Ty::Bool),
                    None => err(
                        pos,
                        TypeErrorKind::Incompatible { what: "membership test", left: elem, right: Ty::set_of(inner) },
                    ),
                }
            }
            BinOp::Cup | BinOp::Cap | BinOp::SetMinus => {
                let x = self.set_operand(a, scope)?;
                let y = self.set_operand(b, scope)?;
                match join(&x, &y) {
                    Some(t) => Ok(Ty::set_of(t)),
                    None => err(
                        pos,
                        TypeErrorKind::Incompatible { what: "set operands", left: Ty::set_of(x), right: Ty::set_of(y) },
                    ),
                }
            }
            BinOp::PatternMatch => err(pos, TypeErrorKind::Misplaced("a pattern match may only guard a function body")),
            BinOp::Guard => err(pos, TypeErrorKind::Misplaced("a guard may only appear in a function body")),
        }
    }
}

/// Patterns are pure LTL shapes over fresh identifiers and `_`.
fn check_pattern(p: &Expr) -> Result<(), TypeError> {
    match &p.kind {
        ExprKind::Id(_) | ExprKind::Wildcard | ExprKind::Bool(_) => Ok(()),
        ExprKind::Unary(UnaryOp::Neg | UnaryOp::Next | UnaryOp::Globally | UnaryOp::Finally, a) => check_pattern(a),
        ExprKind::Binary(
            BinOp::And | BinOp::Or | BinOp::Implies | BinOp::Equiv | BinOp::Until | BinOp::Release | BinOp::WeakUntil,
            a,
            b,
        ) => {
            check_pattern(a)?;
            check_pattern(b)
        }
        _ => err(p.pos, TypeErrorKind::InvalidPattern),
    }
}

impl fmt::Display for TypeEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, global) in &self.globals {
            match global {
                Global::Typed(t) => writeln!(f, "{name} : {t}")?,
                Global::Pending(_) => writeln!(f, "{name} : unchecked")?,
                Global::Function { instances, .. } => {
                    for (args, inst) in instances {
                        if let Instance::Done(t) = inst {
                            let args: Vec<_> = args.iter().map(ToString::to_string).collect();
                            writeln!(f, "{name} : ({}) -> {t}", args.join(", "))?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
