use alloc::string::String;
use core::fmt;

use crate::ast::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Nat(u64),
    Str(String),
    /// `_`
    Wildcard,

    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    DotDot,
    Assign,
    Pipe,
    Tilde,

    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    AndAnd,
    OrOr,
    Not,
    Implies,
    Equiv,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    In,
    Cup,
    Cap,
    SetMinus,

    Next,
    Finally,
    Globally,
    Until,
    Release,
    WeakUntil,
    True,
    False,
    Otherwise,
    Min,
    Max,
    Size,
    SizeOf,
    /// `SUM`, only valid as a big-operator head.
    BigSum,
    /// `PROD`
    BigProd,
    /// `FORALL`
    BigAnd,
    /// `EXISTS`
    BigOr,
    /// A section or INFO field keyword such as `MAIN` or `TITLE`.
    Section(&'static str),

    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// The source text of the token.
    pub text: String,
    pub pos: Pos,
}

impl Token {
    pub fn is(&self, kind: &TokenKind) -> bool {
        &self.kind == kind
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Eof => f.write_str("end of input"),
            _ => write!(f, "'{}'", self.text),
        }
    }
}

pub(crate) const SECTION_WORDS: &[&str] = &[
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

/// Keyword spellings, including every alternative operator name.
pub(crate) fn keyword(word: &str) -> Option<TokenKind> {
    let kind = match word {
        "X" => TokenKind::Next,
        "F" => TokenKind::Finally,
        "G" => TokenKind::Globally,
        "U" => TokenKind::Until,
        "R" => TokenKind::Release,
        "W" => TokenKind::WeakUntil,
        "true" => TokenKind::True,
        "false" => TokenKind::False,
        "otherwise" => TokenKind::Otherwise,
        "MIN" => TokenKind::Min,
        "MAX" => TokenKind::Max,
        "SIZE" => TokenKind::Size,
        "SIZEOF" => TokenKind::SizeOf,
        "SUM" => TokenKind::BigSum,
        "PROD" => TokenKind::BigProd,
        "FORALL" => TokenKind::BigAnd,
        "EXISTS" => TokenKind::BigOr,
        "MUL" => TokenKind::Star,
        "DIV" => TokenKind::Slash,
        "MOD" => TokenKind::Percent,
        "PLUS" => TokenKind::Plus,
        "MINUS" => TokenKind::Minus,
        "CAP" => TokenKind::Cap,
        "CUP" => TokenKind::Cup,
        "SETMINUS" => TokenKind::SetMinus,
        "EQ" => TokenKind::EqEq,
        "NEQ" => TokenKind::NotEq,
        "LE" => TokenKind::Lt,
        "LEQ" => TokenKind::Le,
        "GE" => TokenKind::Gt,
        "GEQ" | "GEG" => TokenKind::Ge,
        "IN" | "ELEM" => TokenKind::In,
        "NOT" => TokenKind::Not,
        "AND" => TokenKind::AndAnd,
        "OR" => TokenKind::OrOr,
        "IMPLIES" => TokenKind::Implies,
        "EQUIV" => TokenKind::Equiv,
        _ => {
            let section = SECTION_WORDS.iter().find(|w| **w == word)?;
            TokenKind::Section(section)
        }
    };
    Some(kind)
}

/// Symbolic spellings, longest first so that the lexer takes the longest match.
pub(crate) const SYMBOLS: &[(&str, TokenKind)] = &[
    ("(+)", TokenKind::Cup),
    ("(*)", TokenKind::Cap),
    ("(\\)", TokenKind::SetMinus),
    ("(-)", TokenKind::SetMinus),
    ("<->", TokenKind::Equiv),
    ("->", TokenKind::Implies),
    ("<-", TokenKind::In),
    ("<=", TokenKind::Le),
    (">=", TokenKind::Ge),
    ("==", TokenKind::EqEq),
    ("!=", TokenKind::NotEq),
    ("/=", TokenKind::NotEq),
    ("&&", TokenKind::AndAnd),
    ("||", TokenKind::OrOr),
    ("..", TokenKind::DotDot),
    ("(", TokenKind::LParen),
    (")", TokenKind::RParen),
    ("{", TokenKind::LBrace),
    ("}", TokenKind::RBrace),
    ("[", TokenKind::LBracket),
    ("]", TokenKind::RBracket),
    (",", TokenKind::Comma),
    (";", TokenKind::Semi),
    (":", TokenKind::Colon),
    ("=", TokenKind::Assign),
    ("|", TokenKind::Pipe),
    ("~", TokenKind::Tilde),
    ("+", TokenKind::Plus),
    ("-", TokenKind::Minus),
    ("*", TokenKind::Star),
    ("/", TokenKind::Slash),
    ("%", TokenKind::Percent),
    ("!", TokenKind::Not),
    ("<", TokenKind::Lt),
    (">", TokenKind::Gt),
];
