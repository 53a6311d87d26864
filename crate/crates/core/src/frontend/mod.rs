//! Tokenizer and parsers for the full and the basic specification format.

mod basic;
mod lexer;
mod parser;
mod token;

use alloc::string::String;
use core::fmt;

use crate::ast::{Expr, Pos, Spec};

pub use basic::parse_basic_spec;
pub use lexer::tokenize;
pub use parser::{parse_expr, parse_spec};
pub use token::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    /// A full-format construct in input read with the basic grammar.
    NotBasic,
    /// A basic-format expression that is not fully parenthesized.
    NotParenthesized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub expected: String,
    pub found: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ParseErrorKind::NotBasic => f.write_str("not in basic format: ")?,
            ParseErrorKind::NotParenthesized => f.write_str("not fully parenthesized: ")?,
            ParseErrorKind::Lexical | ParseErrorKind::Syntax => {}
        }
        write!(f, "expected {}, found {}", self.expected, self.found)
    }
}

impl core::error::Error for ParseError {}

/// Tokenizes and parses a full-format specification.
pub fn parse(source: &str) -> Result<Spec, ParseError> {
    parse_spec(&tokenize(source)?)
}

/// Tokenizes and parses a single full-format expression.
pub fn parse_expression(source: &str) -> Result<Expr, ParseError> {
    parse_expr(&tokenize(source)?)
}
