//! Mealy and Moore machines over letters of signal sets, simulated on lasso
//! inputs. Used as a bounded stand-in for realizability checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::lasso::{enumerate_lassos, Compiled, LassoWord, Letter};
use super::{Formula, LtlError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MachineKind {
    Mealy,
    Moore,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    pub kind: MachineKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub initial: usize,
    /// `delta[q][σ]`, for every input letter `σ < 2^|inputs|`.
    pub delta: Vec<Vec<usize>>,
    /// Mealy: `lambda[q][σ]`. Moore: `lambda[q][0]`, a single output per state.
    pub lambda: Vec<Vec<Letter>>,
}

impl Machine {
    /// Tabulates a Mealy machine from `step(q, σ) = (q', output)`.
    pub fn mealy(
        inputs: &[&str],
        outputs: &[&str],
        states: usize,
        step: impl Fn(usize, Letter) -> (usize, Letter),
    ) -> Self {
        let letters = 1u64 << inputs.len();
        let table: Vec<Vec<_>> = (0..states).map(|q| (0..letters).map(|s| step(q, s)).collect()).collect();
        Machine {
            kind: MachineKind::Mealy,
            inputs: inputs.iter().map(|s| String::from(*s)).collect(),
            outputs: outputs.iter().map(|s| String::from(*s)).collect(),
            initial: 0,
            delta: table.iter().map(|row| row.iter().map(|t| t.0).collect()).collect(),
            lambda: table.iter().map(|row| row.iter().map(|t| t.1).collect()).collect(),
        }
    }

    /// Tabulates a Moore machine from `delta(q, σ)` and `output(q)`.
    pub fn moore(
        inputs: &[&str],
        outputs: &[&str],
        states: usize,
        delta: impl Fn(usize, Letter) -> usize,
        output: impl Fn(usize) -> Letter,
    ) -> Self {
        let letters = 1u64 << inputs.len();
        Machine {
            kind: MachineKind::Moore,
            inputs: inputs.iter().map(|s| String::from(*s)).collect(),
            outputs: outputs.iter().map(|s| String::from(*s)).collect(),
            initial: 0,
            delta: (0..states).map(|q| (0..letters).map(|s| delta(q, s)).collect()).collect(),
            lambda: (0..states).map(|q| alloc::vec![output(q)]).collect(),
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    fn output(&self, q: usize, input: Letter) -> Letter {
        match self.kind {
            MachineKind::Mealy => self.lambda[q][input as usize],
            MachineKind::Moore => self.lambda[q][0],
        }
    }

    fn validate(&self) -> Result<(), LtlError> {
        let letters = 1usize << self.inputs.len();
        let bad = |msg: String| Err(LtlError::AlphabetMismatch(msg));
        if self.inputs.len() + self.outputs.len() > 64 {
            return bad(format!("{} signals do not fit in a letter", self.inputs.len() + self.outputs.len()));
        }
        if self.initial >= self.states() || self.lambda.len() != self.states() {
            return bad(format!("machine tables do not cover its {} states", self.states()));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != letters || row.iter().any(|&t| t >= self.states()) {
                return bad(format!("transition row of state {q} is not total"));
            }
            let width = match self.kind {
                MachineKind::Mealy => letters,
                MachineKind::Moore => 1,
            };
            if self.lambda[q].len() != width || self.lambda[q].iter().any(|&o| o >> self.outputs.len() != 0) {
                return bad(format!("output row of state {q} is malformed"));
            }
        }
        Ok(())
    }

    /// Combined alphabet: inputs first, then outputs.
    pub fn alphabet(&self) -> Vec<String> {
        self.inputs.iter().chain(&self.outputs).cloned().collect()
    }
}

/// Runs the machine on an input lasso and returns the joint input/output
/// word over [`Machine::alphabet`].
pub fn run_machine(m: &Machine, input: &LassoWord) -> Result<LassoWord, LtlError> {
    m.validate()?;
    if input.atoms != m.inputs {
        return Err(LtlError::AlphabetMismatch(format!(
            "input word is over {:?}, the machine reads {:?}",
            input.atoms, m.inputs
        )));
    }
    let shift = m.inputs.len();
    let mut q = m.initial;
    let step = |q: &mut usize, sigma: Letter| {
        let out = m.output(*q, sigma);
        *q = m.delta[*q][sigma as usize];
        sigma | out << shift
    };

    let mut prefix: Vec<Letter> = input.prefix.iter().map(|&s| step(&mut q, s)).collect();
    // The joint word is periodic once a loop pass starts in a state seen before.
    let mut starts = Vec::new();
    let mut passes: Vec<Vec<Letter>> = Vec::new();
    loop {
        if let Some(j) = starts.iter().position(|&s| s == q) {
            for pass in passes.drain(..j) {
                prefix.extend(pass);
            }
            let cycle = passes.concat();
            return Ok(LassoWord::new(m.alphabet(), prefix, cycle));
        }
        starts.push(q);
        passes.push(input.cycle.iter().map(|&s| step(&mut q, s)).collect());
    }
}

/// A joint word of some input lasso with `|u| + |v| ≤ k` that violates `φ`.
pub fn find_counterexample(m: &Machine, phi: &Formula, k: usize) -> Result<Option<LassoWord>, LtlError> {
    m.validate()?;
    let compiled = Compiled::new(phi, &m.alphabet())?;
    for input in enumerate_lassos(&m.inputs, k) {
        let joint = run_machine(m, &input)?;
        if !compiled.scan(&joint.to_batch())[0] {
            return Ok(Some(joint));
        }
    }
    Ok(None)
}

/// Whether every input lasso with `|u| + |v| ≤ k` drives the machine to a
/// joint word satisfying `φ`.
pub fn check_machine(m: &Machine, phi: &Formula, k: usize) -> Result<bool, LtlError> {
    assert!(k >= 1, "the bound must be at least 1");
    Ok(find_counterexample(m, phi, k)?.is_none())
}
