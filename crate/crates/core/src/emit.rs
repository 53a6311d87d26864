//! Output: basic-format TLSF text and flat LTL under configurable operator
//! spellings.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::ast::{is_ident_continue, is_ident_start, Pos};
use crate::frontend::{ParseError, ParseErrorKind};
use crate::ltl::{Connective, Formula, View};
use crate::reduce::BasicSpec;

/// Spellings of the eleven connectives and two constants.
/// `None` marks an operator the target format lacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spellings {
    pub true_: String,
    pub false_: Option<String>,
    pub not: String,
    pub and: Option<String>,
    pub or: String,
    pub implies: Option<String>,
    pub equiv: Option<String>,
    pub next: String,
    pub finally: Option<String>,
    pub globally: Option<String>,
    pub until: String,
    pub release: Option<String>,
    pub weak_until: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parens {
    /// Every subformula in its own parentheses, as in the basic format.
    Full,
    /// Only where precedence and associativity would otherwise regroup.
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsupportedPolicy {
    Error,
    /// Replace unsupported operators by their definitions.
    RewriteAway,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtlProfile {
    pub name: String,
    pub spellings: Spellings,
    pub parens: Parens,
    pub policy: UnsupportedPolicy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmitError {
    InvalidProfile(String),
    Unsupported {
        profile: String,
        operator: &'static str,
    },
    /// An atom is spelled like one of the profile's operators.
    AtomClash(String),
}

impl fmt::Display for EmitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmitError::InvalidProfile(msg) => write!(f, "invalid LTL profile: {msg}"),
            EmitError::Unsupported { profile, operator } => {
                write!(f, "profile '{profile}' has no spelling for {operator}")
            }
            EmitError::AtomClash(atom) => {
                write!(f, "atom '{atom}' is spelled like an operator of the profile")
            }
        }
    }
}

impl core::error::Error for EmitError {}

fn s(text: &str) -> String {
    text.to_string()
}

impl LtlProfile {
    /// The spellings of the TLSF full format.
    pub fn tlsf() -> Self {
        LtlProfile {
            name: s("tlsf"),
            spellings: Spellings {
                true_: s("true"),
                false_: Some(s("false")),
                not: s("!"),
                and: Some(s("&&")),
                or: s("||"),
                implies: Some(s("->")),
                equiv: Some(s("<->")),
                next: s("X"),
                finally: Some(s("F")),
                globally: Some(s("G")),
                until: s("U"),
                release: Some(s("R")),
                weak_until: Some(s("W")),
            },
            parens: Parens::Minimal,
            policy: UnsupportedPolicy::Error,
        }
    }

    /// Single-character boolean connectives as used by many LTL tools.
    pub fn classic() -> Self {
        let mut p = LtlProfile::tlsf();
        p.name = s("classic");
        p.spellings.not = s("!");
        p.spellings.and = Some(s("&"));
        p.spellings.or = s("|");
        p
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "tlsf" => Some(LtlProfile::tlsf()),
            "classic" => Some(LtlProfile::classic()),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 2] = ["tlsf", "classic"];

    pub fn with_parens(mut self, parens: Parens) -> Self {
        self.parens = parens;
        self
    }

    fn all_spellings(&self) -> Vec<(&'static str, Option<&str>)> {
        let sp = &self.spellings;
        alloc::vec![
            ("true", Some(sp.true_.as_str())),
            ("false", sp.false_.as_deref()),
            ("negation", Some(sp.not.as_str())),
            ("conjunction", sp.and.as_deref()),
            ("disjunction", Some(sp.or.as_str())),
            ("implication", sp.implies.as_deref()),
            ("equivalence", sp.equiv.as_deref()),
            ("next", Some(sp.next.as_str())),
            ("finally", sp.finally.as_deref()),
            ("globally", sp.globally.as_deref()),
            ("until", Some(sp.until.as_str())),
            ("release", sp.release.as_deref()),
            ("weak until", sp.weak_until.as_deref()),
        ]
    }

    /// Spellings nonempty, pairwise distinct, each a single word or a single
    /// symbol; a profile without weak until must rewrite it away.
    pub fn validate(&self) -> Result<(), EmitError> {
        let invalid = |msg: String| Err(EmitError::InvalidProfile(msg));
        let present: Vec<_> = self.all_spellings().into_iter().filter_map(|(op, sp)| Some((op, sp?))).collect();
        for (i, (op, sp)) in present.iter().enumerate() {
            if sp.is_empty() {
                return invalid(format!("empty spelling for {op}"));
            }
            let word = sp.chars().all(is_ident_continue) && sp.starts_with(is_ident_start);
            let symbol = sp.chars().all(|c| !is_ident_continue(c) && !c.is_whitespace() && c != '(' && c != ')');
            if !word && !symbol {
                return invalid(format!("spelling '{sp}' for {op} mixes word and symbol characters"));
            }
            if let Some((other, _)) = present[..i].iter().find(|(_, o)| o == sp) {
                return invalid(format!("{other} and {op} are both spelled '{sp}'"));
            }
        }
        if self.spellings.weak_until.is_none() && self.policy == UnsupportedPolicy::Error {
            return invalid(s("without weak until the policy must be rewrite-away"));
        }
        Ok(())
    }

    fn spelling(&self, c: Connective) -> Option<&str> {
        let sp = &self.spellings;
        match c {
            Connective::Not => Some(&sp.not),
            Connective::Next => Some(&sp.next),
            Connective::Or => Some(&sp.or),
            Connective::Until => Some(&sp.until),
            Connective::Finally => sp.finally.as_deref(),
            Connective::Globally => sp.globally.as_deref(),
            Connective::And => sp.and.as_deref(),
            Connective::Implies => sp.implies.as_deref(),
            Connective::Equiv => sp.equiv.as_deref(),
            Connective::Release => sp.release.as_deref(),
            Connective::WeakUntil => sp.weak_until.as_deref(),
        }
    }

    fn is_word_spelling(&self, word: &str) -> bool {
        self.all_spellings().into_iter().any(|(_, sp)| sp == Some(word))
    }
}

fn connective_name(c: Connective) -> &'static str {
    match c {
        Connective::Not => "negation",
        Connective::Next => "next",
        Connective::Finally => "finally",
        Connective::Globally => "globally",
        Connective::And => "conjunction",
        Connective::Or => "disjunction",
        Connective::Implies => "implication",
        Connective::Equiv => "equivalence",
        Connective::Until => "until",
        Connective::Release => "release",
        Connective::WeakUntil => "weak until",
    }
}

/// Precedence row of a binary connective; prefix connectives sit on row 11.
fn row(c: Connective) -> u8 {
    match c {
        Connective::Not | Connective::Next | Connective::Finally | Connective::Globally => 11,
        Connective::And => 12,
        Connective::Or => 13,
        Connective::Implies | Connective::Equiv => 14,
        Connective::WeakUntil => 15,
        Connective::Until => 16,
        Connective::Release => 17,
    }
}

fn right_assoc(c: Connective) -> bool {
    matches!(c, Connective::Implies | Connective::Equiv | Connective::WeakUntil | Connective::Until)
}

/// Replaces operators the profile cannot spell by their definitions.
pub fn rewrite_unsupported(phi: &Formula, profile: &LtlProfile) -> Formula {
    use Formula as F;
    let sp = &profile.spellings;
    let phi = phi.map_children(|c| rewrite_unsupported(c, profile));
    let again = |f: Formula| rewrite_unsupported(&f, profile);
    match phi {
        F::False if sp.false_.is_none() => F::not(F::True),
        F::And(a, b) if sp.and.is_none() => F::not(F::or(F::not(*a), F::not(*b))),
        F::Implies(a, b) if sp.implies.is_none() => F::or(F::not(*a), *b),
        F::Equiv(a, b) if sp.equiv.is_none() => {
            again(F::and(F::implies((*a).clone(), (*b).clone()), F::implies(*b, *a)))
        }
        F::Finally(a) if sp.finally.is_none() => F::until(F::True, *a),
        F::Globally(a) if sp.globally.is_none() => again(F::not(F::finally(F::not(*a)))),
        F::Release(a, b) if sp.release.is_none() => F::not(F::until(F::not(*a), F::not(*b))),
        F::WeakUntil(a, b) if sp.weak_until.is_none() => again(F::or(F::until((*a).clone(), *b), F::globally(*a))),
        other => other,
    }
}

/// Renders `φ` as one line of flat LTL.
pub fn print_formula(phi: &Formula, profile: &LtlProfile) -> Result<String, EmitError> {
    profile.validate()?;
    let rewritten;
    let phi = match profile.policy {
        UnsupportedPolicy::RewriteAway => {
            rewritten = rewrite_unsupported(phi, profile);
            &rewritten
        }
        UnsupportedPolicy::Error => phi,
    };
    let mut out = String::new();
    match profile.parens {
        Parens::Full => full(phi, profile, &mut out)?,
        Parens::Minimal => minimal(phi, profile, 17, &mut out)?,
    }
    Ok(out)
}

fn leaf(phi: &Formula, profile: &LtlProfile) -> Result<Option<String>, EmitError> {
    Ok(match phi.view() {
        View::Const(true) => Some(profile.spellings.true_.clone()),
        View::Const(false) => Some(
            profile
                .spellings
                .false_
                .clone()
                .ok_or(EmitError::Unsupported { profile: profile.name.clone(), operator: "false" })?,
        ),
        View::Atom(a) => {
            if profile.is_word_spelling(a) {
                return Err(EmitError::AtomClash(a.into()));
            }
            Some(a.into())
        }
        _ => None,
    })
}

fn spell(c: Connective, profile: &LtlProfile) -> Result<&str, EmitError> {
    profile.spelling(c).ok_or(EmitError::Unsupported { profile: profile.name.clone(), operator: connective_name(c) })
}

fn full(phi: &Formula, profile: &LtlProfile, out: &mut String) -> Result<(), EmitError> {
    if let Some(text) = leaf(phi, profile)? {
        let _ = write!(out, "({text})");
        return Ok(());
    }
    out.push('(');
    match phi.view() {
        View::Unary(c, a) => {
            out.push_str(spell(c, profile)?);
            out.push(' ');
            full(a, profile, out)?;
        }
        View::Binary(c, a, b) => {
            full(a, profile, out)?;
            let _ = write!(out, " {} ", spell(c, profile)?);
            full(b, profile, out)?;
        }
        View::Const(_) | View::Atom(_) => unreachable!(),
    }
    out.push(')');
    Ok(())
}

/// Prints `φ` so that parsing it at loosest row `limit` regroups nothing.
fn minimal(phi: &Formula, profile: &LtlProfile, limit: u8, out: &mut String) -> Result<(), EmitError> {
    if let Some(text) = leaf(phi, profile)? {
        out.push_str(&text);
        return Ok(());
    }
    match phi.view() {
        View::Unary(c, a) => {
            let op = spell(c, profile)?;
            let mut arg = String::new();
            minimal(a, profile, 10, &mut arg)?;
            let symbolic = !op.starts_with(is_ident_start);
            let glued = symbolic && arg.starts_with(|ch: char| is_ident_continue(ch) || ch == '(');
            out.push_str(op);
            if !glued {
                out.push(' ');
            }
            out.push_str(&arg);
        }
        View::Binary(c, a, b) => {
            let p = row(c);
            let wrap = p > limit;
            if wrap {
                out.push('(');
            }
            let (left, right) = if right_assoc(c) { (p - 1, p) } else { (p, p - 1) };
            minimal(a, profile, left, out)?;
            let _ = write!(out, " {} ", spell(c, profile)?);
            minimal(b, profile, right, out)?;
            if wrap {
                out.push(')');
            }
        }
        View::Const(_) | View::Atom(_) => unreachable!(),
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(String),
    Const(bool),
    Op(Connective),
    Open,
    Close,
    End,
}

fn flat_error(pos: Pos, expected: &str, found: impl Into<String>) -> ParseError {
    ParseError { pos, expected: expected.into(), found: found.into(), kind: ParseErrorKind::Syntax }
}

fn flat_tokens(text: &str, profile: &LtlProfile) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let sp = &profile.spellings;
    let mut table: Vec<(&str, Tok)> = alloc::vec![(sp.true_.as_str(), Tok::Const(true))];
    if let Some(f) = &sp.false_ {
        table.push((f, Tok::Const(false)));
    }
    for c in Connective::UNARY.into_iter().chain(Connective::BINARY) {
        if let Some(spelling) = profile.spelling(c) {
            table.push((spelling, Tok::Op(c)));
        }
    }
    table.sort_by_key(|(sp, _)| core::cmp::Reverse(sp.len()));

    let mut toks = Vec::new();
    let (mut line, mut col) = (1u32, 1u32);
    let mut rest = text;
    loop {
        let trimmed = rest.trim_start();
        for ch in rest[..rest.len() - trimmed.len()].chars() {
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        rest = trimmed;
        let pos = Pos::new(line, col);
        let Some(ch) = rest.chars().next() else {
            toks.push((Tok::End, pos));
            return Ok(toks);
        };
        let (tok, len) = if ch == '(' {
            (Tok::Open, 1)
        } else if ch == ')' {
            (Tok::Close, 1)
        } else if is_ident_start(ch) {
            let len = rest.find(|c: char| !is_ident_continue(c)).unwrap_or(rest.len());
            let word = &rest[..len];
            match table.iter().find(|(sp, _)| *sp == word) {
                Some((_, tok)) => (tok.clone(), len),
                None => (Tok::Atom(word.into()), len),
            }
        } else {
            match table.iter().find(|(sp, _)| !sp.starts_with(is_ident_start) && rest.starts_with(sp)) {
                Some((sp, tok)) => (tok.clone(), sp.len()),
                None => return Err(flat_error(pos, "an operator, atom or parenthesis", ch.to_string())),
            }
        };
        col += rest[..len].chars().count() as u32;
        rest = &rest[len..];
        toks.push((tok, pos));
    }
}

struct FlatParser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl FlatParser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn error(&self, expected: &str) -> ParseError {
        let (tok, pos) = &self.toks[self.at];
        let found = match tok {
            Tok::End => s("end of input"),
            Tok::Atom(a) => format!("'{a}'"),
            other => format!("{other:?}"),
        };
        flat_error(*pos, expected, found)
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn expr(&mut self, limit: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.operand()?;
        loop {
            let Tok::Op(c) = *self.peek() else { return Ok(lhs) };
            if Connective::UNARY.contains(&c) {
                return Err(self.error("a binary operator"));
            }
            let p = row(c);
            if p > limit {
                return Ok(lhs);
            }
            self.bump();
            let rhs = self.expr(if right_assoc(c) { p } else { p - 1 })?;
            lhs = Formula::binary(c, lhs, rhs);
        }
    }

    fn operand(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Atom(a) => {
                self.bump();
                Ok(Formula::Atom(a))
            }
            Tok::Const(b) => {
                self.bump();
                Ok(Formula::constant(b))
            }
            Tok::Op(c) if Connective::UNARY.contains(&c) => {
                self.bump();
                Ok(Formula::unary(c, self.operand()?))
            }
            Tok::Open => {
                self.bump();
                let inner = self.expr(17)?;
                if self.bump() != Tok::Close {
                    self.at -= 1;
                    return Err(self.error("')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("an atom, constant, prefix operator or '('")),
        }
    }
}

/// Parses flat LTL written with the profile's spellings, using the same
/// precedence rows as the full format.
pub fn parse_formula(text: &str, profile: &LtlProfile) -> Result<Formula, ParseError> {
    if let Err(e) = profile.validate() {
        return Err(flat_error(Pos::new(1, 1), "a valid profile", e.to_string()));
    }
    let mut p = FlatParser { toks: flat_tokens(text, profile)?, at: 0 };
    let phi = p.expr(17)?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(phi)
}

/// A basic-format formula: every subformula parenthesized, TLSF spellings.
pub fn print_basic_formula(phi: &Formula) -> String {
    let mut out = String::new();
    full(phi, &LtlProfile::tlsf(), &mut out).expect("the TLSF profile spells every operator");
    out
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for ch in text.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Renders a reduced specification as basic-format TLSF.
pub fn print_basic(b: &BasicSpec) -> String {
    let mut out = String::new();
    let info = &b.info;
    out.push_str("INFO {\n");
    let _ = writeln!(out, "  TITLE:       {}", quote(&info.title));
    let _ = writeln!(out, "  DESCRIPTION: {}", quote(&info.description));
    let _ = writeln!(out, "  SEMANTICS:   {}", info.semantics);
    let _ = writeln!(out, "  TARGET:      {}", info.target);
    if !info.tags.is_empty() {
        let tags: Vec<_> = info.tags.iter().map(|t| quote(t)).collect();
        let _ = writeln!(out, "  TAGS:        {}", tags.join(", "));
    }
    out.push_str("}\n\nMAIN {\n");
    for (name, signals) in [("INPUTS", &b.inputs), ("OUTPUTS", &b.outputs)] {
        let _ = writeln!(out, "  {name} {{");
        for signal in signals {
            let _ = writeln!(out, "    {signal};");
        }
        out.push_str("  }\n");
    }
    for (name, formulas) in
        [("ASSUMPTIONS", &b.assumptions), ("INVARIANTS", &b.invariants), ("GUARANTEES", &b.guarantees)]
    {
        if formulas.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  {name} {{");
        for phi in formulas {
            let _ = writeln!(out, "    {};", print_basic_formula(phi));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
