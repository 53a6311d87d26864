//! A second evaluator, written independently of the scanning one: every
//! temporal operator is the least or greatest fixpoint of its one-step
//! unfolding over the lasso's successor relation.

use alloc::vec;
use alloc::vec::Vec;

use super::lasso::{Compiled, Lane, LassoBatch, LassoWord, Node};
use super::{Formula, LtlError};

/// Iterates `S[p] = step(p, S[succ(p)])` from `start` until stable.
fn fixpoint<L: Lane>(batch: &LassoBatch<L>, start: L, step: impl Fn(usize, L) -> L) -> Vec<L> {
    let mut set = vec![start; batch.len()];
    loop {
        let mut changed = false;
        for p in (0..batch.len()).rev() {
            let next = step(p, set[batch.succ(p)]);
            if next != set[p] {
                set[p] = next;
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

fn tables<L: Lane>(compiled: &Compiled, batch: &LassoBatch<L>) -> Vec<L> {
    let len = batch.len();
    let mut tables: Vec<Vec<L>> = Vec::with_capacity(compiled.nodes.len());
    for node in &compiled.nodes {
        let t = match *node {
            Node::Const(c) => vec![if c { L::ONES } else { L::ZERO }; len],
            Node::Atom(k) => (0..len).map(|p| batch.bits[p][k]).collect(),
            Node::Not(a) => tables[a].iter().map(|&x| !x).collect(),
            Node::Next(a) => (0..len).map(|p| tables[a][batch.succ(p)]).collect(),
            Node::And(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| x & y).collect(),
            Node::Or(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| x | y).collect(),
            Node::Implies(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| !x | y).collect(),
            Node::Equiv(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| !(x ^ y)).collect(),
            Node::Finally(a) => fixpoint(batch, L::ZERO, |p, s| tables[a][p] | s),
            Node::Globally(a) => fixpoint(batch, L::ONES, |p, s| tables[a][p] & s),
            Node::Until(a, b) => fixpoint(batch, L::ZERO, |p, s| tables[b][p] | (tables[a][p] & s)),
            Node::WeakUntil(a, b) => fixpoint(batch, L::ONES, |p, s| tables[b][p] | (tables[a][p] & s)),
            Node::Release(a, b) => fixpoint(batch, L::ONES, |p, s| tables[b][p] & (tables[a][p] | s)),
        };
        tables.push(t);
    }
    tables.pop().expect("a formula has at least one node")
}

/// Whether `w, i ⊨ φ`, computed by fixpoint iteration.
pub fn eval_fixpoint(phi: &Formula, w: &LassoWord, i: usize) -> Result<bool, LtlError> {
    let batch = LassoBatch {
        prefix_len: w.prefix.len(),
        cycle_len: w.cycle.len(),
        bits: (0..w.len()).map(|p| (0..w.atoms.len()).map(|k| w.letter(p) >> k & 1 == 1).collect()).collect(),
        valid: true,
    };
    let table = tables(&Compiled::new(phi, &w.atoms)?, &batch);
    Ok(table[batch.canonical(i)])
}

/// Lane-parallel [`eval_fixpoint`] at position 0.
pub fn eval_fixpoint_lanes<L: Lane>(
    phi: &Formula,
    atoms: &[alloc::string::String],
    batch: &LassoBatch<L>,
) -> Result<L, LtlError> {
    Ok(tables(&Compiled::new(phi, atoms)?, batch)[0])
}
