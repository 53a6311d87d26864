//! Syntax tree and specification types shared by every stage of the pipeline.
//!
//! Every [`Expr`] node carries the source [`Pos`] it was parsed from. Equality
//! on expressions and identifiers ignores positions, so `==` is structural
//! equality of trees.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A 1-based line/column location in the source text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub const fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Every word that may not be used as an identifier.
///
/// This is the single table of reserved words: temporal and set operators,
/// the alternative operator names, literals, and section keywords.
pub const KEYWORDS: &[&str] = &[
    // temporal operators
    "X",
    "F",
    "G",
    "U",
    "R",
    "W",
    // literals and guards
    "true",
    "false",
    "otherwise",
    // set and numeric prefix operators
    "IN",
    "ELEM",
    "MIN",
    "MAX",
    "SIZE",
    "SIZEOF",
    // alternative operator names
    "SUM",
    "PROD",
    "MUL",
    "DIV",
    "MOD",
    "PLUS",
    "MINUS",
    "CAP",
    "CUP",
    "SETMINUS",
    "EQ",
    "NEQ",
    "LE",
    "LEQ",
    "GE",
    "GEQ",
    "GEG",
    "NOT",
    "AND",
    "OR",
    "FORALL",
    "EXISTS",
    "IMPLIES",
    "EQUIV",
    // sections
    "INFO",
    "TITLE",
    "DESCRIPTION",
    "SEMANTICS",
    "TARGET",
    "TAGS",
    "GLOBAL",
    "PARAMETERS",
    "DEFINITIONS",
    "MAIN",
    "INPUTS",
    "OUTPUTS",
    "ASSUMPTIONS",
    "INVARIANTS",
    "GUARANTEES",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '@'
}

pub fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '@'
}

/// Whether `text` is a legal identifier: the right charset and not reserved.
pub fn is_valid_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => {}
        _ => return false,
    }
    chars.all(is_ident_continue) && !is_keyword(text)
}

/// Compared, ordered and hashed by name only.
#[derive(Debug, Clone)]
pub struct Ident {
    pub text: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(text: impl Into<String>, pos: Pos) -> Self {
        Ident { text: text.into(), pos }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Ident {}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.text.cmp(&other.text)
    }
}

impl core::hash::Hash for Ident {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.text.hash(state);
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Static types of expressions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Signal,
    Bus,
    Nat,
    Bool,
    Ltl,
    Set(Box<Ty>),
    /// Not yet known. Compatible with every type.
    Var(u32),
}

impl Ty {
    pub fn set_of(inner: Ty) -> Ty {
        Ty::Set(Box::new(inner))
    }

    /// `self ⊑ other`. Boolean expressions and signals are LTL expressions;
    /// an unknown type is compatible with everything.
    pub fn is_subtype_of(&self, other: &Ty) -> bool {
        match (self, other) {
            (Ty::Var(_), _) | (_, Ty::Var(_)) => true,
            (Ty::Bool | Ty::Signal, Ty::Ltl) => true,
            (Ty::Set(a), Ty::Set(b)) => a.is_subtype_of(b),
            (a, b) => a == b,
        }
    }

    pub fn is_ltl_like(&self) -> bool {
        self.is_subtype_of(&Ty::Ltl)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Signal => f.write_str("signal"),
            Ty::Bus => f.write_str("bus"),
            Ty::Nat => f.write_str("natural"),
            Ty::Bool => f.write_str("boolean"),
            Ty::Ltl => f.write_str("LTL"),
            Ty::Set(inner) => write!(f, "set of {inner}"),
            Ty::Var(_) => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryOp {
    Neg,
    Next,
    Globally,
    Finally,
    SetSize,
    SetMin,
    SetMax,
    SizeOf,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "!",
            UnaryOp::Next => "X",
            UnaryOp::Globally => "G",
            UnaryOp::Finally => "F",
            UnaryOp::SetSize => "SIZE",
            UnaryOp::SetMin => "MIN",
            UnaryOp::SetMax => "MAX",
            UnaryOp::SizeOf => "SIZEOF",
        }
    }

    /// Precedence row of the prefix operator (1 binds tightest).
    pub fn precedence(self) -> u8 {
        match self {
            UnaryOp::SetSize | UnaryOp::SetMin | UnaryOp::SetMax | UnaryOp::SizeOf => 1,
            UnaryOp::Neg | UnaryOp::Next | UnaryOp::Globally | UnaryOp::Finally => 11,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assoc {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    And,
    Or,
    Implies,
    Equiv,
    Until,
    Release,
    WeakUntil,
    Eq,
    Neq,
    Lt,
    Leq,
    Gt,
    Geq,
    In,
    Cup,
    Cap,
    SetMinus,
    PatternMatch,
    Guard,
}

impl BinOp {
    pub const ALL: [BinOp; 24] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Mod,
        BinOp::And,
        BinOp::Or,
        BinOp::Implies,
        BinOp::Equiv,
        BinOp::Until,
        BinOp::Release,
        BinOp::WeakUntil,
        BinOp::Eq,
        BinOp::Neq,
        BinOp::Lt,
        BinOp::Leq,
        BinOp::Gt,
        BinOp::Geq,
        BinOp::In,
        BinOp::Cup,
        BinOp::Cap,
        BinOp::SetMinus,
        BinOp::PatternMatch,
        BinOp::Guard,
    ];

    /// Precedence row of the operator (1 binds tightest, 19 loosest).
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Mul => 2,
            BinOp::Div | BinOp::Mod => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::SetMinus => 6,
            BinOp::Cap => 7,
            BinOp::Cup => 8,
            BinOp::Eq | BinOp::Neq | BinOp::Lt | BinOp::Leq | BinOp::Gt | BinOp::Geq => 9,
            BinOp::In => 10,
            BinOp::And => 12,
            BinOp::Or => 13,
            BinOp::Implies | BinOp::Equiv => 14,
            BinOp::WeakUntil => 15,
            BinOp::Until => 16,
            BinOp::Release => 17,
            BinOp::PatternMatch => 18,
            BinOp::Guard => 19,
        }
    }

    pub fn assoc(self) -> Assoc {
        match self {
            BinOp::Div
            | BinOp::Mod
            | BinOp::SetMinus
            | BinOp::Implies
            | BinOp::Equiv
            | BinOp::WeakUntil
            | BinOp::Until => Assoc::Right,
            _ => Assoc::Left,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::And => "&&",
            BinOp::Or => "||",
            BinOp::Implies => "->",
            BinOp::Equiv => "<->",
            BinOp::Until => "U",
            BinOp::Release => "R",
            BinOp::WeakUntil => "W",
            BinOp::Eq => "==",
            BinOp::Neq => "!=",
            BinOp::Lt => "<",
            BinOp::Leq => "<=",
            BinOp::Gt => ">",
            BinOp::Geq => ">=",
            BinOp::In => "IN",
            BinOp::Cup => "(+)",
            BinOp::Cap => "(*)",
            BinOp::SetMinus => "(\\)",
            BinOp::PatternMatch => "~",
            BinOp::Guard => ":",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BigOpKind {
    Sum,
    Prod,
    Cup,
    Cap,
    And,
    Or,
}

impl BigOpKind {
    pub fn symbol(self) -> &'static str {
        match self {
            BigOpKind::Sum => "+",
            BigOpKind::Prod => "*",
            BigOpKind::Cup => "(+)",
            BigOpKind::Cap => "(*)",
            BigOpKind::And => "&&",
            BigOpKind::Or => "||",
        }
    }

    pub fn precedence(self) -> u8 {
        match self {
            BigOpKind::Sum | BigOpKind::Prod => 1,
            BigOpKind::Cup | BigOpKind::Cap => 5,
            BigOpKind::And | BigOpKind::Or => 11,
        }
    }
}

/// `var IN domain`, or `lo <= var < hi` when `domain` is an [`ExprKind::Interval`].
#[derive(Debug, Clone, PartialEq)]
pub struct Binder {
    pub var: Ident,
    pub domain: Expr,
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Nat(u64),
    Bool(bool),
    Id(Ident),
    /// `_`, only meaningful inside patterns.
    Wildcard,
    BusIndex {
        bus: Ident,
        index: Box<Expr>,
    },
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    SetLiteral(Vec<Expr>),
    /// `{x, y .. z}`
    SetRange(Box<Expr>, Box<Expr>, Box<Expr>),
    /// Binder domain of the `n <= i < m` form; each bound is open when strict.
    Interval {
        lo: Box<Expr>,
        lo_strict: bool,
        hi: Box<Expr>,
        hi_strict: bool,
    },
    BigOp {
        kind: BigOpKind,
        binders: Vec<Binder>,
        body: Box<Expr>,
    },
    FnApp {
        name: Ident,
        args: Vec<Expr>,
    },
    /// `X[n] body`
    NextN {
        count: Box<Expr>,
        body: Box<Expr>,
    },
    /// `F[n:m] body`
    FinallyRange {
        from: Box<Expr>,
        to: Box<Expr>,
        body: Box<Expr>,
    },
    /// `G[n:m] body`
    GloballyRange {
        from: Box<Expr>,
        to: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    pub fn nat(n: u64) -> Self {
        Expr::new(ExprKind::Nat(n), Pos::default())
    }

    pub fn boolean(b: bool) -> Self {
        Expr::new(ExprKind::Bool(b), Pos::default())
    }

    pub fn id(name: &str) -> Self {
        Expr::new(ExprKind::Id(Ident::new(name, Pos::default())), Pos::default())
    }

    pub fn unary(op: UnaryOp, arg: Expr) -> Self {
        let pos = arg.pos;
        Expr::new(ExprKind::Unary(op, Box::new(arg)), pos)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        let pos = lhs.pos;
        Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos)
    }

    /// Structural equality ignoring source positions.
    pub fn structural_eq(&self, other: &Expr) -> bool {
        self == other
    }

    /// Identifiers occurring free in the expression.
    pub fn free_identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }
}

pub fn structural_eq(a: &Expr, b: &Expr) -> bool {
    a.structural_eq(b)
}

pub fn free_identifiers(e: &Expr) -> BTreeSet<String> {
    e.free_identifiers()
}

/// Identifiers bound by a pattern (everything except `_`).
pub fn pattern_variables(pattern: &Expr) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut ignore = Vec::new();
    collect_free(pattern, &mut ignore, &mut out);
    out
}

fn note(name: &Ident, bound: &[String], out: &mut BTreeSet<String>) {
    if !bound.iter().any(|b| b == &name.text) {
        out.insert(name.text.clone());
    }
}

fn collect_free(e: &Expr, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match &e.kind {
        ExprKind::Nat(_) | ExprKind::Bool(_) | ExprKind::Wildcard => {}
        ExprKind::Id(id) => note(id, bound, out),
        ExprKind::BusIndex { bus, index } => {
            note(bus, bound, out);
            collect_free(index, bound, out);
        }
        ExprKind::Unary(_, arg) => collect_free(arg, bound, out),
        ExprKind::Binary(BinOp::Guard, guard, rhs) => {
            if let ExprKind::Binary(BinOp::PatternMatch, subject, pattern) = &guard.kind {
                collect_free(subject, bound, out);
                let vars = pattern_variables(pattern);
                let mark = bound.len();
                bound.extend(vars);
                collect_free(rhs, bound, out);
                bound.truncate(mark);
            } else {
                collect_free(guard, bound, out);
                collect_free(rhs, bound, out);
            }
        }
        ExprKind::Binary(BinOp::PatternMatch, subject, _) => collect_free(subject, bound, out),
        ExprKind::Binary(_, lhs, rhs) => {
            collect_free(lhs, bound, out);
            collect_free(rhs, bound, out);
        }
        ExprKind::SetLiteral(elems) => {
            for elem in elems {
                collect_free(elem, bound, out);
            }
        }
        ExprKind::SetRange(x, y, z) => {
            collect_free(x, bound, out);
            collect_free(y, bound, out);
            collect_free(z, bound, out);
        }
        ExprKind::Interval { lo, hi, .. } => {
            collect_free(lo, bound, out);
            collect_free(hi, bound, out);
        }
        ExprKind::BigOp { binders, body, .. } => {
            let mark = bound.len();
            for binder in binders {
                collect_free(&binder.domain, bound, out);
                bound.push(binder.var.text.clone());
            }
            collect_free(body, bound, out);
            bound.truncate(mark);
        }
        ExprKind::FnApp { name, args } => {
            note(name, bound, out);
            for arg in args {
                collect_free(arg, bound, out);
            }
        }
        ExprKind::NextN { count, body } => {
            collect_free(count, bound, out);
            collect_free(body, bound, out);
        }
        ExprKind::FinallyRange { from, to, body } | ExprKind::GloballyRange { from, to, body } => {
            collect_free(from, bound, out);
            collect_free(to, bound, out);
            collect_free(body, bound, out);
        }
    }
}

/// Fully parenthesized rendering; parsing it back yields an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Nat(n) => write!(f, "{n}"),
            ExprKind::Bool(b) => write!(f, "{b}"),
            ExprKind::Id(id) => write!(f, "{id}"),
            ExprKind::Wildcard => f.write_str("_"),
            ExprKind::BusIndex { bus, index } => write!(f, "{bus}[{index}]"),
            ExprKind::Unary(UnaryOp::SetSize, arg) => match arg.kind {
                // `||` would lex as a disjunction
                ExprKind::Unary(UnaryOp::SetSize, _) => write!(f, "|({arg})|"),
                _ => write!(f, "|{arg}|"),
            },
            ExprKind::Unary(op, arg) => write!(f, "({} {arg})", op.symbol()),
            ExprKind::Binary(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
            ExprKind::SetLiteral(elems) => {
                f.write_str("{")?;
                for (i, elem) in elems.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{elem}")?;
                }
                f.write_str("}")
            }
            ExprKind::SetRange(x, y, z) => write!(f, "{{{x}, {y} .. {z}}}"),
            ExprKind::Interval { lo, lo_strict, hi, hi_strict } => write!(
                f,
                "[{lo} {} _ {} {hi}]",
                if *lo_strict { "<" } else { "<=" },
                if *hi_strict { "<" } else { "<=" }
            ),
            ExprKind::BigOp { kind, binders, body } => {
                write!(f, "({}[", kind.symbol())?;
                for (i, binder) in binders.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{binder}")?;
                }
                write!(f, "] {body})")
            }
            ExprKind::FnApp { name, args } => {
                write!(f, "{name}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
            ExprKind::NextN { count, body } => write!(f, "(X[{count}] {body})"),
            ExprKind::FinallyRange { from, to, body } => {
                write!(f, "(F[{from} : {to}] {body})")
            }
            ExprKind::GloballyRange { from, to, body } => {
                write!(f, "(G[{from} : {to}] {body})")
            }
        }
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.domain.kind {
            ExprKind::Interval { lo, lo_strict, hi, hi_strict } => write!(
                f,
                "{lo} {} {} {} {hi}",
                if *lo_strict { "<" } else { "<=" },
                self.var,
                if *hi_strict { "<" } else { "<=" }
            ),
            _ => write!(f, "{} IN {}", self.var, self.domain),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Mealy,
    Moore,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Mealy => "Mealy",
            Target::Moore => "Moore",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Mealy,
    Moore,
    MealyStrict,
    MooreStrict,
}

impl Semantics {
    pub fn model(self) -> Target {
        match self {
            Semantics::Mealy | Semantics::MealyStrict => Target::Mealy,
            Semantics::Moore | Semantics::MooreStrict => Target::Moore,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Semantics::MealyStrict | Semantics::MooreStrict)
    }

    pub fn from_parts(model: Target, strict: bool) -> Self {
        match (model, strict) {
            (Target::Mealy, false) => Semantics::Mealy,
            (Target::Moore, false) => Semantics::Moore,
            (Target::Mealy, true) => Semantics::MealyStrict,
            (Target::Moore, true) => Semantics::MooreStrict,
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Mealy => "Mealy",
            Semantics::Moore => "Moore",
            Semantics::MealyStrict => "Mealy,Strict",
            Semantics::MooreStrict => "Moore,Strict",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Info {
    pub title: String,
    pub description: String,
    pub semantics: Semantics,
    pub target: Target,
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalDecl {
    pub name: Ident,
    /// Present for buses.
    pub width: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parameter {
    pub name: Ident,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Guard {
    /// No guard; implicitly `true`.
    Always,
    Otherwise,
    /// A boolean condition or a pattern match `subject ~ pattern`.
    When(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub guard: Guard,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: Ident,
    /// `None` for a plain binding `name = e`, otherwise the function parameters.
    pub params: Option<Vec<Ident>>,
    pub bodies: Vec<Body>,
}

impl Definition {
    pub fn is_function(&self) -> bool {
        self.params.is_some()
    }

    pub fn arity(&self) -> usize {
        self.params.as_ref().map_or(0, Vec::len)
    }
}

/// A parsed full-format specification.
#[derive(Debug, Clone, PartialEq)]
pub struct Spec {
    pub info: Info,
    pub parameters: Vec<Parameter>,
    pub definitions: Vec<Definition>,
    pub inputs: Vec<SignalDecl>,
    pub outputs: Vec<SignalDecl>,
    pub assumptions: Vec<Expr>,
    pub invariants: Vec<Expr>,
    pub guarantees: Vec<Expr>,
}

/// The three formula subsections of MAIN.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Assumptions,
    Invariants,
    Guarantees,
}

impl Section {
    pub const ALL: [Section; 3] = [Section::Assumptions, Section::Invariants, Section::Guarantees];

    pub fn keyword(self) -> &'static str {
        match self {
            Section::Assumptions => "ASSUMPTIONS",
            Section::Invariants => "INVARIANTS",
            Section::Guarantees => "GUARANTEES",
        }
    }
}

impl Spec {
    pub fn section(&self, section: Section) -> &[Expr] {
        match section {
            Section::Assumptions => &self.assumptions,
            Section::Invariants => &self.invariants,
            Section::Guarantees => &self.guarantees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ident(s: &str) -> Ident {
        Ident::new(s, Pos::default())
    }

    #[test]
    fn identifier_charset() {
        assert!(is_valid_identifier("a"));
        assert!(is_valid_identifier("_x'"));
        assert!(is_valid_identifier("@b@0"));
        assert!(is_valid_identifier("Xa"));
        assert!(!is_valid_identifier("0a"));
        assert!(!is_valid_identifier("'a"));
        assert!(!is_valid_identifier("X"));
        assert!(!is_valid_identifier("otherwise"));
        assert!(!is_valid_identifier("a-b"));
        assert!(!is_valid_identifier(""));
    }

    #[test]
    fn free_identifiers_of_atom() {
        let e = Expr::id("a");
        assert_eq!(e.free_identifiers().into_iter().collect::<Vec<_>>(), vec!["a"]);
    }

    #[test]
    fn big_op_binder_shadows() {
        let body = Expr::new(ExprKind::BusIndex { bus: ident("b"), index: Box::new(Expr::id("i")) }, Pos::default());
        let e = Expr::new(
            ExprKind::BigOp {
                kind: BigOpKind::And,
                binders: vec![Binder {
                    var: ident("i"),
                    domain: Expr::new(ExprKind::SetLiteral(vec![Expr::nat(0), Expr::nat(1)]), Pos::default()),
                }],
                body: Box::new(body),
            },
            Pos::default(),
        );
        assert_eq!(e.free_identifiers().into_iter().collect::<Vec<_>>(), vec!["b"]);
    }

    #[test]
    fn function_application_is_free_in_name_and_args() {
        let e = Expr::new(ExprKind::FnApp { name: ident("f"), args: vec![Expr::id("x")] }, Pos::default());
        assert_eq!(e.free_identifiers().into_iter().collect::<Vec<_>>(), vec!["f", "x"]);
    }

    #[test]
    fn pattern_bindings_scope_over_guard_rhs() {
        // f ~ x U _ : x && y
        let guard = Expr::binary(
            BinOp::PatternMatch,
            Expr::id("f"),
            Expr::binary(BinOp::Until, Expr::id("x"), Expr::new(ExprKind::Wildcard, Pos::default())),
        );
        let e = Expr::binary(BinOp::Guard, guard, Expr::binary(BinOp::And, Expr::id("x"), Expr::id("y")));
        assert_eq!(e.free_identifiers().into_iter().collect::<Vec<_>>(), vec!["f", "y"]);
    }

    #[test]
    fn equality_ignores_positions() {
        let a = Expr::new(ExprKind::Unary(UnaryOp::Globally, Box::new(Expr::id("a"))), Pos::new(3, 1));
        let mut b = a.clone();
        b.pos = Pos::new(9, 4);
        assert!(structural_eq(&a, &b));
        let x = Expr::unary(UnaryOp::Next, Expr::id("a"));
        assert!(structural_eq(&x, &x.clone()));
        let ab = Expr::binary(BinOp::And, Expr::id("a"), Expr::id("b"));
        let ba = Expr::binary(BinOp::And, Expr::id("b"), Expr::id("a"));
        assert!(!structural_eq(&ab, &ba));
    }

    #[test]
    fn subtyping() {
        assert!(Ty::Bool.is_subtype_of(&Ty::Ltl));
        assert!(Ty::Signal.is_subtype_of(&Ty::Ltl));
        assert!(!Ty::Ltl.is_subtype_of(&Ty::Bool));
        assert!(!Ty::Nat.is_subtype_of(&Ty::Ltl));
        assert!(!Ty::Bus.is_subtype_of(&Ty::Ltl));
        assert!(Ty::set_of(Ty::Signal).is_subtype_of(&Ty::set_of(Ty::Ltl)));
    }
}
