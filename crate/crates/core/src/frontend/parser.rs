use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::token::{Token, TokenKind};
use super::{ParseError, ParseErrorKind};
use crate::ast::{
    BigOpKind, BinOp, Binder, Body, Definition, Expr, ExprKind, Guard, Ident, Info, Parameter, Pos, Semantics,
    SignalDecl, Spec, Target, UnaryOp,
};

/// Loosest row allowed in ordinary expressions; pattern matches (18) and
/// guards (19) only appear in function bodies.
const EXPR_LEVEL: u8 = 17;
const PATTERN_LEVEL: u8 = 18;

pub(super) struct Parser<'t> {
    tokens: &'t [Token],
    at: usize,
    /// Loosest precedence row accepted inside parentheses.
    paren_level: u8,
}

pub(super) type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    pub(super) fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, at: 0, paren_level: EXPR_LEVEL }
    }

    pub(super) fn peek(&self) -> &'t Token {
        &self.tokens[self.at.min(self.tokens.len() - 1)]
    }

    pub(super) fn peek_kind(&self) -> &'t TokenKind {
        &self.peek().kind
    }

    fn peek_nth(&self, n: usize) -> &'t TokenKind {
        &self.tokens[(self.at + n).min(self.tokens.len() - 1)].kind
    }

    pub(super) fn advance(&mut self) -> &'t Token {
        let tok = self.peek();
        if self.at < self.tokens.len() - 1 {
            self.at += 1;
        }
        tok
    }

    pub(super) fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    pub(super) fn error(&self, expected: impl Into<String>) -> ParseError {
        let tok = self.peek();
        ParseError { pos: tok.pos, expected: expected.into(), found: tok.to_string(), kind: ParseErrorKind::Syntax }
    }

    pub(super) fn expect(&mut self, kind: &TokenKind, what: &str) -> PResult<&'t Token> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.error(what))
        }
    }

    pub(super) fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek_kind() {
            TokenKind::Ident(name) => {
                let pos = self.advance().pos;
                Ok(Ident::new(name.clone(), pos))
            }
            _ => Err(self.error(what)),
        }
    }

    pub(super) fn string(&mut self, what: &str) -> PResult<String> {
        match self.peek_kind() {
            TokenKind::Str(s) => {
                self.advance();
                Ok(s.clone())
            }
            _ => Err(self.error(what)),
        }
    }

    pub(super) fn expect_eof(&self) -> PResult<()> {
        if matches!(self.peek_kind(), TokenKind::Eof) {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    // ---------------------------------------------------------------- INFO

    pub(super) fn info_section(&mut self) -> PResult<Info> {
        let open = self.expect(&TokenKind::LBrace, "'{' after INFO")?.pos;
        let mut title = None;
        let mut description = None;
        let mut semantics = None;
        let mut target = None;
        let mut tags = None;

        loop {
            let field = match self.peek_kind() {
                TokenKind::RBrace => break,
                TokenKind::Section(word) => *word,
                _ => return Err(self.error("an INFO field (TITLE, DESCRIPTION, SEMANTICS, TARGET, TAGS)")),
            };
            let field_tok = self.peek();
            let duplicate = match field {
                "TITLE" => title.is_some(),
                "DESCRIPTION" => description.is_some(),
                "SEMANTICS" => semantics.is_some(),
                "TARGET" => target.is_some(),
                "TAGS" => tags.is_some(),
                _ => return Err(self.error("an INFO field (TITLE, DESCRIPTION, SEMANTICS, TARGET, TAGS)")),
            };
            if duplicate {
                return Err(self.error(format!("at most one {field} field")));
            }
            self.advance();
            self.expect(&TokenKind::Colon, &format!("':' after {}", field_tok.text))?;
            match field {
                "TITLE" => title = Some(self.string("a string literal")?),
                "DESCRIPTION" => description = Some(self.string("a string literal")?),
                "SEMANTICS" => semantics = Some(self.semantics()?),
                "TARGET" => target = Some(self.target()?),
                _ => tags = Some(self.tags()?),
            }
        }
        let close = self.advance();

        let missing = |name: &str| ParseError {
            pos: close.pos,
            expected: format!("{name} field in INFO section opened at {open}"),
            found: close.to_string(),
            kind: ParseErrorKind::Syntax,
        };
        Ok(Info {
            title: title.ok_or_else(|| missing("TITLE"))?,
            description: description.ok_or_else(|| missing("DESCRIPTION"))?,
            semantics: semantics.ok_or_else(|| missing("SEMANTICS"))?,
            target: target.ok_or_else(|| missing("TARGET"))?,
            tags: tags.unwrap_or_default(),
        })
    }

    fn model(&mut self, what: &str) -> PResult<Target> {
        match self.peek_kind() {
            TokenKind::Ident(word) if word == "Mealy" => {
                self.advance();
                Ok(Target::Mealy)
            }
            TokenKind::Ident(word) if word == "Moore" => {
                self.advance();
                Ok(Target::Moore)
            }
            _ => Err(self.error(what)),
        }
    }

    fn semantics(&mut self) -> PResult<Semantics> {
        let model = self.model("Mealy, Moore, Mealy,Strict or Moore,Strict")?;
        let strict = if self.eat(&TokenKind::Comma) {
            match self.peek_kind() {
                TokenKind::Ident(word) if word == "Strict" => {
                    self.advance();
                    true
                }
                _ => return Err(self.error("'Strict'")),
            }
        } else {
            false
        };
        Ok(Semantics::from_parts(model, strict))
    }

    fn target(&mut self) -> PResult<Target> {
        self.model("Mealy or Moore")
    }

    fn tags(&mut self) -> PResult<Vec<String>> {
        let mut tags = Vec::new();
        loop {
            match self.peek_kind() {
                TokenKind::Str(s) | TokenKind::Ident(s) => {
                    tags.push(s.clone());
                    self.advance();
                }
                _ if tags.is_empty() => return Ok(tags),
                _ => return Err(self.error("a tag")),
            }
            if !self.eat(&TokenKind::Comma) {
                return Ok(tags);
            }
        }
    }

    // ---------------------------------------------------------- full format

    fn global_section(&mut self, spec: &mut SpecParts) -> PResult<()> {
        self.expect(&TokenKind::LBrace, "'{' after GLOBAL")?;
        let mut seen_params = false;
        let mut seen_defs = false;
        loop {
            match self.peek_kind() {
                TokenKind::RBrace => {
                    self.advance();
                    return Ok(());
                }
                TokenKind::Section("PARAMETERS") if !seen_params => {
                    seen_params = true;
                    self.advance();
                    self.expect(&TokenKind::LBrace, "'{' after PARAMETERS")?;
                    while !self.eat(&TokenKind::RBrace) {
                        let name = self.ident("a parameter name")?;
                        self.expect(&TokenKind::Assign, "'='")?;
                        let value = self.expr()?;
                        self.expect(&TokenKind::Semi, "';'")?;
                        spec.parameters.push(Parameter { name, value });
                    }
                }
                TokenKind::Section("DEFINITIONS") if !seen_defs => {
                    seen_defs = true;
                    self.advance();
                    self.expect(&TokenKind::LBrace, "'{' after DEFINITIONS")?;
                    while !self.eat(&TokenKind::RBrace) {
                        let def = self.definition()?;
                        spec.definitions.push(def);
                    }
                }
                TokenKind::Section(word @ ("PARAMETERS" | "DEFINITIONS")) => {
                    return Err(self.error(format!("at most one {word} subsection")));
                }
                _ => return Err(self.error("PARAMETERS, DEFINITIONS or '}'")),
            }
        }
    }

    fn definition(&mut self) -> PResult<Definition> {
        let name = self.ident("a definition name")?;
        if !self.eat(&TokenKind::LParen) {
            self.expect(&TokenKind::Assign, "'=' or '('")?;
            let expr = self.expr()?;
            self.expect(&TokenKind::Semi, "';'")?;
            return Ok(Definition { name, params: None, bodies: alloc::vec![Body { guard: Guard::Always, expr }] });
        }

        let mut params = Vec::new();
        if !self.eat(&TokenKind::RParen) {
            loop {
                params.push(self.ident("a parameter name")?);
                if self.eat(&TokenKind::RParen) {
                    break;
                }
                self.expect(&TokenKind::Comma, "',' or ')'")?;
            }
        }
        self.expect(&TokenKind::Assign, "'='")?;

        let saved = self.paren_level;
        self.paren_level = PATTERN_LEVEL;
        let bodies = self.bodies();
        self.paren_level = saved;
        let bodies = bodies?;

        self.expect(&TokenKind::Semi, "';'")?;
        Ok(Definition { name, params: Some(params), bodies })
    }

    fn bodies(&mut self) -> PResult<Vec<Body>> {
        let mut bodies = Vec::new();
        let mut otherwise_seen = false;
        loop {
            if matches!(self.peek_kind(), TokenKind::Otherwise) {
                if otherwise_seen {
                    return Err(self.error("at most one 'otherwise' guard"));
                }
                otherwise_seen = true;
                self.advance();
                self.expect(&TokenKind::Colon, "':' after otherwise")?;
                let expr = self.expr_level(EXPR_LEVEL)?;
                bodies.push(Body { guard: Guard::Otherwise, expr });
            } else {
                let first = self.expr_level(PATTERN_LEVEL)?;
                if self.eat(&TokenKind::Colon) {
                    let expr = self.expr_level(EXPR_LEVEL)?;
                    bodies.push(Body { guard: Guard::When(first), expr });
                } else {
                    bodies.push(Body { guard: Guard::Always, expr: first });
                }
            }
            if matches!(self.peek_kind(), TokenKind::Semi) {
                return Ok(bodies);
            }
        }
    }

    fn signal_decls(&mut self, out: &mut Vec<SignalDecl>) -> PResult<()> {
        self.expect(&TokenKind::LBrace, "'{'")?;
        while !self.eat(&TokenKind::RBrace) {
            let name = self.ident("a signal name")?;
            let width = if self.eat(&TokenKind::LBracket) {
                let w = self.expr()?;
                self.expect(&TokenKind::RBracket, "']'")?;
                Some(w)
            } else {
                None
            };
            self.expect(&TokenKind::Semi, "';'")?;
            out.push(SignalDecl { name, width });
        }
        Ok(())
    }

    fn formulas(&mut self, out: &mut Vec<Expr>) -> PResult<()> {
        self.expect(&TokenKind::LBrace, "'{'")?;
        while !self.eat(&TokenKind::RBrace) {
            out.push(self.expr()?);
            self.expect(&TokenKind::Semi, "';'")?;
        }
        Ok(())
    }

    fn main_section(&mut self, spec: &mut SpecParts) -> PResult<()> {
        self.main_with(spec, |p, out| p.formulas(out), |p, out| p.signal_decls(out))
    }

    /// Parses the MAIN section body, delegating entries to the given readers.
    pub(super) fn main_with(
        &mut self,
        spec: &mut SpecParts,
        mut formulas: impl FnMut(&mut Self, &mut Vec<Expr>) -> PResult<()>,
        mut decls: impl FnMut(&mut Self, &mut Vec<SignalDecl>) -> PResult<()>,
    ) -> PResult<()> {
        self.expect(&TokenKind::LBrace, "'{' after MAIN")?;
        let mut seen: Vec<&str> = Vec::new();
        loop {
            let word = match self.peek_kind() {
                TokenKind::RBrace => {
                    self.advance();
                    return Ok(());
                }
                TokenKind::Section(w @ ("INPUTS" | "OUTPUTS" | "ASSUMPTIONS" | "INVARIANTS" | "GUARANTEES")) => *w,
                _ => return Err(self.error("INPUTS, OUTPUTS, ASSUMPTIONS, INVARIANTS, GUARANTEES or '}'")),
            };
            if seen.contains(&word) {
                return Err(self.error(format!("at most one {word} subsection")));
            }
            seen.push(word);
            self.advance();
            match word {
                "INPUTS" => decls(self, &mut spec.inputs)?,
                "OUTPUTS" => decls(self, &mut spec.outputs)?,
                "ASSUMPTIONS" => formulas(self, &mut spec.assumptions)?,
                "INVARIANTS" => formulas(self, &mut spec.invariants)?,
                _ => formulas(self, &mut spec.guarantees)?,
            }
        }
    }

    // ---------------------------------------------------------- expressions

    pub(super) fn expr(&mut self) -> PResult<Expr> {
        self.expr_level(EXPR_LEVEL)
    }

    fn peek_binop(&self) -> Option<BinOp> {
        let op = match self.peek_kind() {
            TokenKind::Plus => BinOp::Add,
            TokenKind::Minus => BinOp::Sub,
            TokenKind::Star => BinOp::Mul,
            TokenKind::Slash => BinOp::Div,
            TokenKind::Percent => BinOp::Mod,
            TokenKind::AndAnd => BinOp::And,
            TokenKind::OrOr => BinOp::Or,
            TokenKind::Implies => BinOp::Implies,
            TokenKind::Equiv => BinOp::Equiv,
            TokenKind::Until => BinOp::Until,
            TokenKind::Release => BinOp::Release,
            TokenKind::WeakUntil => BinOp::WeakUntil,
            TokenKind::EqEq => BinOp::Eq,
            TokenKind::NotEq => BinOp::Neq,
            TokenKind::Lt => BinOp::Lt,
            TokenKind::Le => BinOp::Leq,
            TokenKind::Gt => BinOp::Gt,
            TokenKind::Ge => BinOp::Geq,
            TokenKind::In => BinOp::In,
            TokenKind::Cup => BinOp::Cup,
            TokenKind::Cap => BinOp::Cap,
            TokenKind::SetMinus => BinOp::SetMinus,
            TokenKind::Tilde => BinOp::PatternMatch,
            _ => return None,
        };
        Some(op)
    }

    /// Precedence climbing: consumes binary operators whose row is at most `limit`.
    pub(super) fn expr_level(&mut self, limit: u8) -> PResult<Expr> {
        let mut lhs = self.prefix()?;
        while let Some(op) = self.peek_binop() {
            let prec = op.precedence();
            if prec > limit {
                break;
            }
            self.advance();
            let rhs = match op.assoc() {
                crate::ast::Assoc::Left => self.expr_level(prec - 1)?,
                crate::ast::Assoc::Right => self.expr_level(prec)?,
            };
            let pos = lhs.pos;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn big_op_kind(&self) -> Option<BigOpKind> {
        let kind = match self.peek_kind() {
            TokenKind::Plus | TokenKind::BigSum => BigOpKind::Sum,
            TokenKind::Star | TokenKind::BigProd => BigOpKind::Prod,
            TokenKind::Cup => BigOpKind::Cup,
            TokenKind::Cap => BigOpKind::Cap,
            TokenKind::AndAnd | TokenKind::BigAnd => BigOpKind::And,
            TokenKind::OrOr | TokenKind::BigOr => BigOpKind::Or,
            _ => return None,
        };
        Some(kind)
    }

    fn prefix(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        let pos = tok.pos;

        if let Some(kind) = self.big_op_kind() {
            let named =
                matches!(tok.kind, TokenKind::BigSum | TokenKind::BigProd | TokenKind::BigAnd | TokenKind::BigOr);
            if !matches!(self.peek_nth(1), TokenKind::LBracket) {
                if named {
                    self.advance();
                    return Err(self.error("'[' opening the binder list"));
                }
                return Err(self.error("an expression"));
            }
            self.advance();
            self.advance();
            let binders = self.binders()?;
            let body = self.expr_level(kind.precedence() - 1)?;
            return Ok(Expr::new(ExprKind::BigOp { kind, binders, body: Box::new(body) }, pos));
        }

        let unary = |p: &mut Self, op: UnaryOp| -> PResult<Expr> {
            p.advance();
            let arg = p.expr_level(op.precedence() - 1)?;
            Ok(Expr::new(ExprKind::Unary(op, Box::new(arg)), pos))
        };

        match tok.kind {
            TokenKind::Not => unary(self, UnaryOp::Neg),
            TokenKind::Min => unary(self, UnaryOp::SetMin),
            TokenKind::Max => unary(self, UnaryOp::SetMax),
            TokenKind::Size => unary(self, UnaryOp::SetSize),
            TokenKind::SizeOf => unary(self, UnaryOp::SizeOf),
            TokenKind::Next if matches!(self.peek_nth(1), TokenKind::LBracket) => {
                self.advance();
                self.advance();
                let count = self.expr()?;
                self.expect(&TokenKind::RBracket, "']'")?;
                let body = self.expr_level(10)?;
                Ok(Expr::new(ExprKind::NextN { count: Box::new(count), body: Box::new(body) }, pos))
            }
            TokenKind::Finally | TokenKind::Globally if matches!(self.peek_nth(1), TokenKind::LBracket) => {
                let finally = matches!(tok.kind, TokenKind::Finally);
                self.advance();
                self.advance();
                let from = Box::new(self.expr()?);
                self.expect(&TokenKind::Colon, "':' in the step range")?;
                let to = Box::new(self.expr()?);
                self.expect(&TokenKind::RBracket, "']'")?;
                let body = Box::new(self.expr_level(10)?);
                let kind = if finally {
                    ExprKind::FinallyRange { from, to, body }
                } else {
                    ExprKind::GloballyRange { from, to, body }
                };
                Ok(Expr::new(kind, pos))
            }
            TokenKind::Next => unary(self, UnaryOp::Next),
            TokenKind::Finally => unary(self, UnaryOp::Finally),
            TokenKind::Globally => unary(self, UnaryOp::Globally),
            TokenKind::Pipe => {
                self.advance();
                let inner = self.expr()?;
                self.expect(&TokenKind::Pipe, "'|' closing the size expression")?;
                Ok(Expr::new(ExprKind::Unary(UnaryOp::SetSize, Box::new(inner)), pos))
            }
            _ => self.primary(),
        }
    }

    fn binders(&mut self) -> PResult<Vec<Binder>> {
        let mut binders: Vec<Binder> = Vec::new();
        loop {
            let at = self.peek().pos;
            let e = self.expr()?;
            let binder = into_binder(e).ok_or_else(|| ParseError {
                pos: at,
                expected: "a binder 'id IN set' or 'n <= id < m'".into(),
                found: self.tokens[self.at.saturating_sub(1)].to_string(),
                kind: ParseErrorKind::Syntax,
            })?;
            if binders.iter().any(|b| b.var == binder.var) {
                return Err(ParseError {
                    pos: binder.var.pos,
                    expected: "pairwise distinct binder identifiers".into(),
                    found: format!("'{}'", binder.var),
                    kind: ParseErrorKind::Syntax,
                });
            }
            binders.push(binder);
            if self.eat(&TokenKind::RBracket) {
                return Ok(binders);
            }
            self.expect(&TokenKind::Comma, "',' or ']' in the binder list")?;
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        let pos = tok.pos;
        let kind = match &tok.kind {
            TokenKind::Nat(n) => {
                self.advance();
                ExprKind::Nat(*n)
            }
            TokenKind::True => {
                self.advance();
                ExprKind::Bool(true)
            }
            TokenKind::False => {
                self.advance();
                ExprKind::Bool(false)
            }
            TokenKind::Wildcard => {
                self.advance();
                ExprKind::Wildcard
            }
            TokenKind::Ident(_) => {
                let name = self.ident("an identifier")?;
                if self.eat(&TokenKind::LParen) {
                    let mut args = Vec::new();
                    if !self.eat(&TokenKind::RParen) {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(&TokenKind::RParen) {
                                break;
                            }
                            self.expect(&TokenKind::Comma, "',' or ')' in the argument list")?;
                        }
                    }
                    ExprKind::FnApp { name, args }
                } else if self.eat(&TokenKind::LBracket) {
                    let index = self.expr()?;
                    self.expect(&TokenKind::RBracket, "']'")?;
                    ExprKind::BusIndex { bus: name, index: Box::new(index) }
                } else {
                    ExprKind::Id(name)
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr_level(self.paren_level)?;
                self.expect(&TokenKind::RParen, "')'")?;
                return Ok(inner);
            }
            TokenKind::LBrace => {
                self.advance();
                return self.set_expr(pos);
            }
            _ => return Err(self.error("an expression")),
        };
        Ok(Expr::new(kind, pos))
    }

    fn set_expr(&mut self, pos: Pos) -> PResult<Expr> {
        if self.eat(&TokenKind::RBrace) {
            return Ok(Expr::new(ExprKind::SetLiteral(Vec::new()), pos));
        }
        let first = self.expr()?;
        if self.eat(&TokenKind::RBrace) {
            return Ok(Expr::new(ExprKind::SetLiteral(alloc::vec![first]), pos));
        }
        self.expect(&TokenKind::Comma, "',' or '}'")?;
        let second = self.expr()?;
        if self.eat(&TokenKind::DotDot) {
            let last = self.expr()?;
            self.expect(&TokenKind::RBrace, "'}' closing the range")?;
            return Ok(Expr::new(ExprKind::SetRange(Box::new(first), Box::new(second), Box::new(last)), pos));
        }
        let mut elems = alloc::vec![first, second];
        while !self.eat(&TokenKind::RBrace) {
            self.expect(&TokenKind::Comma, "',' or '}'")?;
            elems.push(self.expr()?);
        }
        Ok(Expr::new(ExprKind::SetLiteral(elems), pos))
    }
}

/// Reads `id IN S` or `n <= id < m` (either comparison may be strict).
fn into_binder(e: Expr) -> Option<Binder> {
    match e.kind {
        ExprKind::Binary(BinOp::In, var, domain) => match var.kind {
            ExprKind::Id(var) => Some(Binder { var, domain: *domain }),
            _ => None,
        },
        ExprKind::Binary(hi_op @ (BinOp::Lt | BinOp::Leq), lower, hi) => match lower.kind {
            ExprKind::Binary(lo_op @ (BinOp::Lt | BinOp::Leq), lo, var) => match var.kind {
                ExprKind::Id(var) => {
                    let domain = Expr::new(
                        ExprKind::Interval { lo, lo_strict: lo_op == BinOp::Lt, hi, hi_strict: hi_op == BinOp::Lt },
                        e.pos,
                    );
                    Some(Binder { var, domain })
                }
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

#[derive(Default)]
pub(super) struct SpecParts {
    pub(super) parameters: Vec<Parameter>,
    pub(super) definitions: Vec<Definition>,
    pub(super) inputs: Vec<SignalDecl>,
    pub(super) outputs: Vec<SignalDecl>,
    pub(super) assumptions: Vec<Expr>,
    pub(super) invariants: Vec<Expr>,
    pub(super) guarantees: Vec<Expr>,
}

impl SpecParts {
    pub(super) fn finish(self, info: Info) -> Spec {
        Spec {
            info,
            parameters: self.parameters,
            definitions: self.definitions,
            inputs: self.inputs,
            outputs: self.outputs,
            assumptions: self.assumptions,
            invariants: self.invariants,
            guarantees: self.guarantees,
        }
    }
}

/// Parses a full-format specification: `INFO`, optional `GLOBAL`, and `MAIN`.
pub fn parse_spec(tokens: &[Token]) -> Result<Spec, ParseError> {
    let mut p = Parser::new(tokens);
    let mut parts = SpecParts::default();
    let mut info = None;
    let mut seen_global = false;
    let mut seen_main = false;

    loop {
        match p.peek_kind() {
            TokenKind::Eof => break,
            TokenKind::Section("INFO") if info.is_none() => {
                p.advance();
                info = Some(p.info_section()?);
            }
            TokenKind::Section("GLOBAL") if !seen_global => {
                seen_global = true;
                p.advance();
                p.global_section(&mut parts)?;
            }
            TokenKind::Section("MAIN") if !seen_main => {
                seen_main = true;
                p.advance();
                p.main_section(&mut parts)?;
            }
            TokenKind::Section(word @ ("INFO" | "GLOBAL" | "MAIN")) => {
                return Err(p.error(format!("at most one {word} section")));
            }
            _ => return Err(p.error("INFO, GLOBAL or MAIN section")),
        }
    }

    let Some(info) = info else { return Err(p.error("an INFO section")) };
    if !seen_main {
        return Err(p.error("a MAIN section"));
    }
    Ok(parts.finish(info))
}

/// Parses a single expression spanning all of `tokens`.
pub fn parse_expr(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser::new(tokens);
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}
