//! Lowering of full-format specifications to the basic format.
//!
//! A bus `b` of width `n` becomes the scalar signals `b@0` to `b@(n-1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ast::{Info, Pos, Section, Spec};
use crate::eval::{Env, EvalError, Value};
use crate::ltl::Formula;
use crate::typecheck::{check_spec, TypeError};

/// A specification with scalar signals and ground formulas only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSpec {
    pub info: Info,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub assumptions: Vec<Formula>,
    pub invariants: Vec<Formula>,
    pub guarantees: Vec<Formula>,
}

impl BasicSpec {
    pub fn section(&self, section: Section) -> &[Formula] {
        match section {
            Section::Assumptions => &self.assumptions,
            Section::Invariants => &self.invariants,
            Section::Guarantees => &self.guarantees,
        }
    }

    pub fn section_mut(&mut self, section: Section) -> &mut Vec<Formula> {
        match section {
            Section::Assumptions => &mut self.assumptions,
            Section::Invariants => &mut self.invariants,
            Section::Guarantees => &mut self.guarantees,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.assumptions.iter().chain(&self.invariants).chain(&self.guarantees)
    }

    /// Inputs followed by outputs.
    pub fn signals(&self) -> impl Iterator<Item = &str> {
        self.inputs.iter().chain(&self.outputs).map(String::as_str)
    }

    /// Applies `f` to every formula of every section.
    pub fn map_formulas(&self, mut f: impl FnMut(&Formula) -> Formula) -> BasicSpec {
        let mut out = self.clone();
        for section in Section::ALL {
            for phi in out.section_mut(section) {
                *phi = f(phi);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    UnknownParameter(String),
    Type(TypeError),
    /// Raised while setting up parameters, buses and bindings.
    Eval(EvalError),
    /// Raised in the formula at `index` (0-based) of `section`.
    InSection {
        section: Section,
        index: usize,
        error: EvalError,
    },
    /// A formula section entry that is not an LTL formula.
    NotAFormula {
        section: Section,
        index: usize,
        pos: Pos,
        found: Value,
    },
    NameCollision(String),
    UndeclaredSignal {
        section: Section,
        index: usize,
        name: String,
    },
}

impl ReduceError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            ReduceError::Type(e) => Some(e.pos),
            ReduceError::Eval(e) | ReduceError::InSection { error: e, .. } => Some(e.pos),
            ReduceError::NotAFormula { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::UnknownParameter(p) => write!(f, "no parameter named '{p}'"),
            ReduceError::Type(e) => write!(f, "{e}"),
            ReduceError::Eval(e) => write!(f, "{e}"),
            ReduceError::InSection { section, index, error } => {
                write!(f, "{error} (in {} entry {})", section.keyword(), index + 1)
            }
            ReduceError::NotAFormula { section, index, found, .. } => {
                write!(f, "{} entry {} evaluates to {found}, not an LTL formula", section.keyword(), index + 1)
            }
            ReduceError::NameCollision(name) => {
                write!(f, "signal '{name}' clashes with a bus signal of the same name")
            }
            ReduceError::UndeclaredSignal { section, index, name } => {
                write!(f, "undeclared signal '{name}' in {} entry {}", section.keyword(), index + 1)
            }
        }
    }
}

impl core::error::Error for ReduceError {}

impl From<TypeError> for ReduceError {
    fn from(e: TypeError) -> Self {
        ReduceError::Type(e)
    }
}

impl From<EvalError> for ReduceError {
    fn from(e: EvalError) -> Self {
        ReduceError::Eval(e)
    }
}

/// Type checks and evaluates `spec` with the given parameter values.
pub fn elaborate(spec: &Spec, overrides: &BTreeMap<String, u64>) -> Result<BasicSpec, ReduceError> {
    elaborate_with(spec, overrides, Env::new().recursion_limit())
}

/// [`elaborate`] with an explicit bound on nested function calls.
pub fn elaborate_with(
    spec: &Spec,
    overrides: &BTreeMap<String, u64>,
    recursion_limit: usize,
) -> Result<BasicSpec, ReduceError> {
    for name in overrides.keys() {
        if !spec.parameters.iter().any(|p| p.name.as_str() == name) {
            return Err(ReduceError::UnknownParameter(name.clone()));
        }
    }
    check_spec(spec)?;
    let mut env = Env::for_spec(spec, overrides)?.with_recursion_limit(recursion_limit);

    let mut declared = BTreeSet::new();
    let mut scalarize = |decls: &[crate::ast::SignalDecl], env: &mut Env| -> Result<Vec<String>, ReduceError> {
        let mut names = Vec::new();
        for d in decls {
            match env.global(d.name.as_str(), d.name.pos)? {
                Value::Bus { name, width } => names.extend((0..width).map(|i| format!("{name}@{i}"))),
                _ => names.push(d.name.text.clone()),
            }
        }
        for n in &names {
            if !declared.insert(n.clone()) {
                return Err(ReduceError::NameCollision(n.clone()));
            }
        }
        Ok(names)
    };
    let inputs = scalarize(&spec.inputs, &mut env)?;
    let outputs = scalarize(&spec.outputs, &mut env)?;

    let mut basic = BasicSpec {
        info: spec.info.clone(),
        inputs,
        outputs,
        assumptions: Vec::new(),
        invariants: Vec::new(),
        guarantees: Vec::new(),
    };
    for section in Section::ALL {
        for (index, e) in spec.section(section).iter().enumerate() {
            let v = env.eval(e).map_err(|error| ReduceError::InSection { section, index, error })?;
            let phi = v.to_formula().ok_or_else(|| ReduceError::NotAFormula {
                section,
                index,
                pos: e.pos,
                found: v.clone(),
            })?;
            if let Some(name) = phi.atoms().into_iter().find(|a| !declared.contains(a)) {
                return Err(ReduceError::UndeclaredSignal { section, index, name });
            }
            basic.section_mut(section).push(phi);
        }
    }
    Ok(basic)
}
