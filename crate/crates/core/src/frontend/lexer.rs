use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::token::{keyword, Token, TokenKind, SYMBOLS};
use super::{ParseError, ParseErrorKind};
use crate::ast::{is_ident_continue, is_ident_start, Pos};

struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn bump_str(&mut self, s: &str) {
        for _ in s.chars() {
            self.bump();
        }
    }
}

fn lex_error(pos: Pos, expected: &str, found: impl Into<String>) -> ParseError {
    ParseError { pos, expected: expected.into(), found: found.into(), kind: ParseErrorKind::Lexical }
}

/// Splits TLSF source text into tokens, dropping whitespace and comments.
///
/// Block comments nest. The returned vector always ends with an
/// [`TokenKind::Eof`] token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor { src: source, offset: 0, line: 1, col: 1 };
    let mut tokens = Vec::new();

    loop {
        skip_trivia(&mut cur)?;
        let pos = cur.pos();
        let start = cur.offset;
        let Some(c) = cur.peek() else {
            tokens.push(Token { kind: TokenKind::Eof, text: String::new(), pos });
            return Ok(tokens);
        };

        let kind = if is_ident_start(c) {
            while cur.peek().is_some_and(is_ident_continue) {
                cur.bump();
            }
            let word = &source[start..cur.offset];
            if word == "_" {
                TokenKind::Wildcard
            } else {
                keyword(word).unwrap_or_else(|| TokenKind::Ident(word.to_string()))
            }
        } else if c.is_ascii_digit() {
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
            }
            let digits = &source[start..cur.offset];
            if cur.peek().is_some_and(is_ident_start) {
                return Err(lex_error(pos, "identifier not starting with a digit", digits));
            }
            let n = digits.parse::<u64>().map_err(|_| lex_error(pos, "natural number below 2^64", digits))?;
            TokenKind::Nat(n)
        } else if c == '"' {
            cur.bump();
            TokenKind::Str(lex_string(&mut cur, pos)?)
        } else if c == '\'' {
            return Err(lex_error(pos, "identifier not starting with a prime", "'"));
        } else {
            let rest = cur.rest();
            match SYMBOLS.iter().find(|(sym, _)| rest.starts_with(sym)) {
                Some((sym, kind)) => {
                    cur.bump_str(sym);
                    kind.clone()
                }
                None => return Err(lex_error(pos, "a token", c.to_string())),
            }
        };

        tokens.push(Token { kind, text: source[start..cur.offset].to_string(), pos });
    }
}

fn skip_trivia(cur: &mut Cursor<'_>) -> Result<(), ParseError> {
    loop {
        let rest = cur.rest();
        if rest.starts_with("//") {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
        } else if rest.starts_with("/*") {
            let open = cur.pos();
            cur.bump_str("/*");
            let mut depth = 1usize;
            while depth > 0 {
                let rest = cur.rest();
                if rest.is_empty() {
                    return Err(lex_error(open, "'*/' closing the block comment", "end of input"));
                }
                if rest.starts_with("/*") {
                    depth += 1;
                    cur.bump_str("/*");
                } else if rest.starts_with("*/") {
                    depth -= 1;
                    cur.bump_str("*/");
                } else {
                    cur.bump();
                }
            }
        } else if cur.peek().is_some_and(char::is_whitespace) {
            cur.bump();
        } else {
            return Ok(());
        }
    }
}

fn lex_string(cur: &mut Cursor<'_>, open: Pos) -> Result<String, ParseError> {
    let mut out = String::new();
    loop {
        match cur.bump() {
            None => return Err(lex_error(open, "'\"' closing the string literal", "end of input")),
            Some('"') => return Ok(out),
            Some('\\') => {
                let at = cur.pos();
                match cur.bump() {
                    Some(c @ ('"' | '\\')) => out.push(c),
                    Some(c) => return Err(lex_error(at, "escape '\\\"' or '\\\\'", c.to_string())),
                    None => return Err(lex_error(open, "'\"' closing the string literal", "end of input")),
                }
            }
            Some(c) => out.push(c),
        }
    }
}
