//! Strict reader for the basic format: scalar signals only and every LTL
//! subexpression wrapped in its own pair of parentheses.

use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::lexer::tokenize;
use super::parser::{PResult, Parser, SpecParts};
use super::token::TokenKind;
use super::{ParseError, ParseErrorKind};
use crate::ast::{BinOp, Expr, ExprKind, SignalDecl, Spec, UnaryOp};

fn reject(p: &Parser<'_>, kind: ParseErrorKind, expected: &str) -> ParseError {
    let tok = p.peek();
    ParseError { pos: tok.pos, expected: expected.into(), found: tok.to_string(), kind }
}

fn basic_binop(kind: &TokenKind) -> Option<BinOp> {
    let op = match kind {
        TokenKind::AndAnd => BinOp::And,
        TokenKind::OrOr => BinOp::Or,
        TokenKind::Implies => BinOp::Implies,
        TokenKind::Equiv => BinOp::Equiv,
        TokenKind::Until => BinOp::Until,
        TokenKind::Release => BinOp::Release,
        TokenKind::WeakUntil => BinOp::WeakUntil,
        _ => return None,
    };
    Some(op)
}

fn is_full_format_only(kind: &TokenKind) -> bool {
    !matches!(
        kind,
        TokenKind::Ident(_)
            | TokenKind::True
            | TokenKind::False
            | TokenKind::Not
            | TokenKind::Next
            | TokenKind::Finally
            | TokenKind::Globally
            | TokenKind::LParen
            | TokenKind::RParen
            | TokenKind::Semi
            | TokenKind::Eof
    ) && basic_binop(kind).is_none()
}

/// `φ ≡ "(" φ' ")"`
fn phi(p: &mut Parser<'_>) -> PResult<Expr> {
    if !matches!(p.peek_kind(), TokenKind::LParen) {
        let kind = if is_full_format_only(p.peek_kind()) {
            ParseErrorKind::NotBasic
        } else {
            ParseErrorKind::NotParenthesized
        };
        return Err(reject(p, kind, "'(' opening a basic LTL expression"));
    }
    p.advance();
    let inner = phi_inner(p)?;
    if !matches!(p.peek_kind(), TokenKind::RParen) {
        let kind = if basic_binop(p.peek_kind()).is_some() {
            ParseErrorKind::NotParenthesized
        } else if is_full_format_only(p.peek_kind()) {
            ParseErrorKind::NotBasic
        } else {
            ParseErrorKind::Syntax
        };
        return Err(reject(p, kind, "')'"));
    }
    p.advance();
    Ok(inner)
}

fn phi_inner(p: &mut Parser<'_>) -> PResult<Expr> {
    let tok = p.peek();
    let pos = tok.pos;
    let unary = match tok.kind {
        TokenKind::Not => Some(UnaryOp::Neg),
        TokenKind::Next => Some(UnaryOp::Next),
        TokenKind::Finally => Some(UnaryOp::Finally),
        TokenKind::Globally => Some(UnaryOp::Globally),
        _ => None,
    };
    if let Some(op) = unary {
        p.advance();
        if matches!(p.peek_kind(), TokenKind::LBracket) {
            return Err(reject(p, ParseErrorKind::NotBasic, "a parenthesized operand"));
        }
        let arg = phi(p)?;
        return Ok(Expr::new(ExprKind::Unary(op, Box::new(arg)), pos));
    }
    match &tok.kind {
        TokenKind::True | TokenKind::False => {
            p.advance();
            Ok(Expr::new(ExprKind::Bool(matches!(tok.kind, TokenKind::True)), pos))
        }
        TokenKind::Ident(_) => {
            let name = p.ident("a signal")?;
            if matches!(p.peek_kind(), TokenKind::LParen | TokenKind::LBracket) {
                return Err(reject(p, ParseErrorKind::NotBasic, "')'"));
            }
            Ok(Expr::new(ExprKind::Id(name), pos))
        }
        TokenKind::LParen => {
            let lhs = phi(p)?;
            let Some(op) = basic_binop(p.peek_kind()) else {
                let kind =
                    if is_full_format_only(p.peek_kind()) { ParseErrorKind::NotBasic } else { ParseErrorKind::Syntax };
                return Err(reject(p, kind, "a binary LTL operator"));
            };
            p.advance();
            let rhs = phi(p)?;
            Ok(Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos))
        }
        kind if is_full_format_only(kind) => Err(reject(p, ParseErrorKind::NotBasic, "a basic LTL expression")),
        _ => Err(reject(p, ParseErrorKind::Syntax, "a basic LTL expression")),
    }
}

fn basic_formulas(p: &mut Parser<'_>, out: &mut Vec<Expr>) -> PResult<()> {
    p.expect(&TokenKind::LBrace, "'{'")?;
    while !p.eat(&TokenKind::RBrace) {
        out.push(phi(p)?);
        p.expect(&TokenKind::Semi, "';'")?;
    }
    Ok(())
}

fn basic_decls(p: &mut Parser<'_>, out: &mut Vec<SignalDecl>) -> PResult<()> {
    p.expect(&TokenKind::LBrace, "'{'")?;
    while !p.eat(&TokenKind::RBrace) {
        let name = p.ident("a signal name")?;
        if matches!(p.peek_kind(), TokenKind::LBracket) {
            return Err(reject(p, ParseErrorKind::NotBasic, "';' (buses are not basic)"));
        }
        p.expect(&TokenKind::Semi, "';'")?;
        out.push(SignalDecl { name, width: None });
    }
    Ok(())
}

/// Parses text restricted to the basic format.
///
/// Rejects `GLOBAL`, buses, and any expression that is not fully
/// parenthesized.
pub fn parse_basic_spec(source: &str) -> Result<Spec, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser::new(&tokens);
    let mut parts = SpecParts::default();
    let mut info = None;
    let mut seen_main = false;
    loop {
        match p.peek_kind() {
            TokenKind::Eof => break,
            TokenKind::Section("INFO") if info.is_none() => {
                p.advance();
                info = Some(p.info_section()?);
            }
            TokenKind::Section("MAIN") if !seen_main => {
                seen_main = true;
                p.advance();
                p.main_with(&mut parts, basic_formulas, basic_decls)?;
            }
            TokenKind::Section("GLOBAL") => {
                return Err(reject(&p, ParseErrorKind::NotBasic, "INFO or MAIN section"));
            }
            TokenKind::Section(word @ ("INFO" | "MAIN")) => {
                return Err(p.error(alloc::format!("at most one {word} section")));
            }
            _ => return Err(p.error("INFO or MAIN section")),
        }
    }
    let Some(info) = info else { return Err(p.error("an INFO section")) };
    if !seen_main {
        return Err(p.error("a MAIN section"));
    }
    Ok(parts.finish(info))
}
