//! Ground LTL formulas, rewrites, and the oracles that check them: exact
//! evaluation on lasso words and Mealy/Moore machine simulation.

mod fixpoint;
mod lasso;
mod machine;
mod rewrite;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

pub use fixpoint::{eval_fixpoint, eval_fixpoint_lanes};
pub use lasso::{
    enumerate_lassos, eval_lasso, eval_lasso_lanes, for_each_lasso_batch, Lane, LassoBatch, LassoWord, Letter,
};
pub use machine::{check_machine, find_counterexample, run_machine, Machine, MachineKind};
pub use rewrite::{
    expand_derived, is_core, is_nnf, pull_next, push_eventually, push_globally, push_next, to_nnf, Rewrite,
};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
    Globally(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Equiv(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
}

/// Connective at the root of a formula, without its operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Not,
    Next,
    Finally,
    Globally,
    And,
    Or,
    Implies,
    Equiv,
    Until,
    Release,
    WeakUntil,
}

impl Connective {
    pub const UNARY: [Connective; 4] = [Connective::Not, Connective::Next, Connective::Finally, Connective::Globally];
    pub const BINARY: [Connective; 7] = [
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Equiv,
        Connective::Until,
        Connective::Release,
        Connective::WeakUntil,
    ];

    pub fn is_temporal(self) -> bool {
        matches!(
            self,
            Connective::Next
                | Connective::Finally
                | Connective::Globally
                | Connective::Until
                | Connective::Release
                | Connective::WeakUntil
        )
    }
}

/// A borrowed view of one formula node.
pub enum View<'a> {
    Const(bool),
    Atom(&'a str),
    Unary(Connective, &'a Formula),
    Binary(Connective, &'a Formula, &'a Formula),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn constant(b: bool) -> Self {
        if b {
            Formula::True
        } else {
            Formula::False
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn next(a: Formula) -> Self {
        Formula::Next(Box::new(a))
    }

    pub fn finally(a: Formula) -> Self {
        Formula::Finally(Box::new(a))
    }

    pub fn globally(a: Formula) -> Self {
        Formula::Globally(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn equiv(a: Formula, b: Formula) -> Self {
        Formula::Equiv(Box::new(a), Box::new(b))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Self {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Formula, b: Formula) -> Self {
        Formula::WeakUntil(Box::new(a), Box::new(b))
    }

    pub fn unary(c: Connective, a: Formula) -> Self {
        match c {
            Connective::Not => Formula::not(a),
            Connective::Next => Formula::next(a),
            Connective::Finally => Formula::finally(a),
            Connective::Globally => Formula::globally(a),
            _ => panic!("{c:?} is not a unary connective"),
        }
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Self {
        match c {
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
            Connective::Implies => Formula::implies(a, b),
            Connective::Equiv => Formula::equiv(a, b),
            Connective::Until => Formula::until(a, b),
            Connective::Release => Formula::release(a, b),
            Connective::WeakUntil => Formula::weak_until(a, b),
            _ => panic!("{c:?} is not a binary connective"),
        }
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn view(&self) -> View<'_> {
        match self {
            Formula::True => View::Const(true),
            Formula::False => View::Const(false),
            Formula::Atom(a) => View::Atom(a),
            Formula::Not(a) => View::Unary(Connective::Not, a),
            Formula::Next(a) => View::Unary(Connective::Next, a),
            Formula::Finally(a) => View::Unary(Connective::Finally, a),
            Formula::Globally(a) => View::Unary(Connective::Globally, a),
            Formula::And(a, b) => View::Binary(Connective::And, a, b),
            Formula::Or(a, b) => View::Binary(Connective::Or, a, b),
            Formula::Implies(a, b) => View::Binary(Connective::Implies, a, b),
            Formula::Equiv(a, b) => View::Binary(Connective::Equiv, a, b),
            Formula::Until(a, b) => View::Binary(Connective::Until, a, b),
            Formula::Release(a, b) => View::Binary(Connective::Release, a, b),
            Formula::WeakUntil(a, b) => View::Binary(Connective::WeakUntil, a, b),
        }
    }

    pub fn connective(&self) -> Option<Connective> {
        match self.view() {
            View::Unary(c, _) | View::Binary(c, _, _) => Some(c),
            _ => None,
        }
    }

    /// Rebuilds the node with its children mapped by `f`.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        match self.view() {
            View::Const(_) | View::Atom(_) => self.clone(),
            View::Unary(c, a) => Formula::unary(c, f(a)),
            View::Binary(c, a, b) => {
                let a = f(a);
                Formula::binary(c, a, f(b))
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self.view() {
            View::Const(_) => {}
            View::Atom(a) => {
                out.insert(a.into());
            }
            View::Unary(_, a) => a.collect_atoms(out),
            View::Binary(_, a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self.view() {
            View::Const(_) | View::Atom(_) => 1,
            View::Unary(_, a) => 1 + a.size(),
            View::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self.view() {
            View::Const(_) | View::Atom(_) => 0,
            View::Unary(_, a) => 1 + a.depth(),
            View::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_temporal(&self) -> bool {
        match self.view() {
            View::Const(_) | View::Atom(_) => false,
            View::Unary(c, a) => c.is_temporal() || a.is_temporal(),
            View::Binary(c, a, b) => c.is_temporal() || a.is_temporal() || b.is_temporal(),
        }
    }

    /// Number of occurrences of atoms satisfying `pred`.
    pub fn count_atoms(&self, pred: &impl Fn(&str) -> bool) -> usize {
        match self.view() {
            View::Const(_) => 0,
            View::Atom(a) => usize::from(pred(a)),
            View::Unary(_, a) => a.count_atoms(pred),
            View::Binary(_, a, b) => a.count_atoms(pred) + b.count_atoms(pred),
        }
    }

    /// Replaces every atom occurrence by `f(name)`.
    pub fn substitute_atoms(&self, f: &impl Fn(&str) -> Formula) -> Formula {
        match self {
            Formula::Atom(a) => f(a),
            _ => self.map_children(|c| c.substitute_atoms(f)),
        }
    }
}

/// Renders with the TLSF operator spellings and minimal parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = crate::emit::print_formula(self, &crate::emit::LtlProfile::tlsf()).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LtlError {
    /// The formula mentions an atom outside the word's alphabet.
    UnknownAtom(String),
    /// The machine's alphabet does not match the word or formula.
    AlphabetMismatch(String),
}

impl fmt::Display for LtlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtlError::UnknownAtom(a) => write!(f, "atom '{a}' is not in the alphabet"),
            LtlError::AlphabetMismatch(msg) => write!(f, "alphabet mismatch: {msg}"),
        }
    }
}

impl core::error::Error for LtlError {}
