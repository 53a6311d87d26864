//! Compiler toolkit for the Temporal Logic Synthesis Format (TLSF).
//!
//! The pipeline runs [`frontend`] (text to [`ast::Spec`]), [`typecheck`],
//! [`reduce`] (evaluation of every high-level construct into a
//! [`reduce::BasicSpec`]), [`semantics`] (one plain LTL formula under the
//! declared semantics and target) and finally [`emit`]. The [`ltl`] module
//! holds the formula algebra together with the lasso-word and machine
//! oracles used to test every transformation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod ast;
pub mod emit;
pub mod eval;
pub mod frontend;
pub mod ltl;
pub mod reduce;
pub mod semantics;
pub mod typecheck;

#[cfg(test)]
mod fixtures;

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use ast::Pos;

/// Any failure between source text and emitted output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse(frontend::ParseError),
    Type(typecheck::TypeError),
    Reduce(reduce::ReduceError),
    Emit(emit::EmitError),
}

impl Error {
    /// Source position of the offending construct, when there is one.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            Error::Parse(e) => Some(e.pos),
            Error::Type(e) => Some(e.pos),
            Error::Reduce(e) => e.pos(),
            Error::Emit(_) => None,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "{e}"),
            Error::Type(e) => write!(f, "{e}"),
            Error::Reduce(e) => write!(f, "{e}"),
            Error::Emit(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<frontend::ParseError> for Error {
    fn from(e: frontend::ParseError) -> Self {
        Error::Parse(e)
    }
}

impl From<typecheck::TypeError> for Error {
    fn from(e: typecheck::TypeError) -> Self {
        Error::Type(e)
    }
}

impl From<reduce::ReduceError> for Error {
    fn from(e: reduce::ReduceError) -> Self {
        match e {
            reduce::ReduceError::Type(t) => Error::Type(t),
            e => Error::Reduce(e),
        }
    }
}

impl From<emit::EmitError> for Error {
    fn from(e: emit::EmitError) -> Self {
        Error::Emit(e)
    }
}

/// Parses full-format source and reduces it to the basic format.
pub fn compile(source: &str, overrides: &BTreeMap<String, u64>) -> Result<reduce::BasicSpec, Error> {
    let spec = frontend::parse(source)?;
    Ok(reduce::elaborate(&spec, overrides)?)
}
