//! Exact evaluation of LTL on ultimately periodic words `u·v^ω`.
//!
//! Positions `0..|u|+|v|` are canonical; position `p ≥ |u|+|v|` reads the same
//! letter as `|u| + (p - |u|) mod |v|`. The evaluator fills one table per
//! subformula over canonical positions and decides `U` by scanning forward
//! from each position far enough to have visited every canonical position.
//!
//! Evaluation is generic over [`Lane`]: with `bool` it evaluates one word,
//! with `u64` it evaluates 64 words of the same shape at once.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, BitXor, Not};

use super::{Formula, LtlError, View};

/// A set of atomic propositions as a bitmask over the word's alphabet.
pub type Letter = u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    /// Bit `k` of a letter stands for `atoms[k]`.
    pub atoms: Vec<String>,
    pub prefix: Vec<Letter>,
    /// Nonempty.
    pub cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(atoms: Vec<String>, prefix: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "the loop of a lasso word must be nonempty");
        assert!(atoms.len() <= 64, "at most 64 atoms fit in a letter");
        LassoWord { atoms, prefix, cycle }
    }

    /// Builds a word from letters given as lists of atom names.
    pub fn from_sets(atoms: &[&str], prefix: &[&[&str]], cycle: &[&[&str]]) -> Self {
        let letter = |set: &&[&str]| {
            set.iter().fold(0, |acc, name| {
                let k = atoms.iter().position(|a| a == name).expect("atom not in alphabet");
                acc | 1 << k
            })
        };
        LassoWord::new(
            atoms.iter().map(|a| String::from(*a)).collect(),
            prefix.iter().map(letter).collect(),
            cycle.iter().map(letter).collect(),
        )
    }

    /// Number of canonical positions, `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn holds(&self, i: usize, atom: &str) -> bool {
        self.atoms.iter().position(|a| a == atom).is_some_and(|k| self.letter(i) >> k & 1 == 1)
    }

    pub(crate) fn to_batch(&self) -> LassoBatch<bool> {
        let bits = (0..self.len())
            .map(|p| {
                let letter = self.letter(p);
                (0..self.atoms.len()).map(|k| letter >> k & 1 == 1).collect()
            })
            .collect();
        LassoBatch { prefix_len: self.prefix.len(), cycle_len: self.cycle.len(), bits, valid: true }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |f: &mut fmt::Formatter<'_>, l: Letter| {
            f.write_str("{")?;
            let mut first = true;
            for (k, atom) in self.atoms.iter().enumerate() {
                if l >> k & 1 == 1 {
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    f.write_str(atom)?;
                }
            }
            f.write_str("}")
        };
        for &l in &self.prefix {
            letter(f, l)?;
        }
        f.write_str("(")?;
        for &l in &self.cycle {
            letter(f, l)?;
        }
        f.write_str(")^w")
    }
}

/// Boolean values evaluated side by side.
pub trait Lane:
    Copy + PartialEq + BitAnd<Output = Self> + BitOr<Output = Self> + BitXor<Output = Self> + Not<Output = Self>
{
    const ZERO: Self;
    const ONES: Self;
}

impl Lane for bool {
    const ZERO: Self = false;
    const ONES: Self = true;
}

impl Lane for u64 {
    const ZERO: Self = 0;
    const ONES: Self = u64::MAX;
}

/// Words of a common shape, one per lane.
#[derive(Debug, Clone)]
pub struct LassoBatch<L> {
    pub prefix_len: usize,
    pub cycle_len: usize,
    /// `bits[p][k]`: lanes in which atom `k` holds at canonical position `p`.
    pub bits: Vec<Vec<L>>,
    /// Lanes that carry a word.
    pub valid: L,
}

impl<L: Lane> LassoBatch<L> {
    pub fn len(&self) -> usize {
        self.prefix_len + self.cycle_len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn succ(&self, p: usize) -> usize {
        if p + 1 < self.len() {
            p + 1
        } else {
            self.prefix_len
        }
    }

    pub(crate) fn canonical(&self, i: usize) -> usize {
        if i < self.len() {
            i
        } else {
            self.prefix_len + (i - self.prefix_len) % self.cycle_len
        }
    }
}

impl LassoBatch<u64> {
    /// The word carried by lane `j`.
    pub fn word(&self, atoms: &[String], j: u32) -> LassoWord {
        let letter = |p: usize| self.bits[p].iter().enumerate().fold(0, |acc, (k, lane)| acc | (lane >> j & 1) << k);
        LassoWord::new(
            atoms.to_vec(),
            (0..self.prefix_len).map(letter).collect(),
            (self.prefix_len..self.len()).map(letter).collect(),
        )
    }
}

/// A formula flattened into post-order with atoms resolved to alphabet indices.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub(crate) nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Node {
    Const(bool),
    Atom(usize),
    Not(usize),
    Next(usize),
    Finally(usize),
    Globally(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Equiv(usize, usize),
    Until(usize, usize),
    Release(usize, usize),
    WeakUntil(usize, usize),
}

impl Compiled {
    pub(crate) fn new(phi: &Formula, atoms: &[String]) -> Result<Self, LtlError> {
        let mut nodes = Vec::with_capacity(phi.size());
        push_node(phi, atoms, &mut nodes)?;
        Ok(Compiled { nodes })
    }
}

fn push_node(phi: &Formula, atoms: &[String], nodes: &mut Vec<Node>) -> Result<usize, LtlError> {
    let node = match phi.view() {
        View::Const(b) => Node::Const(b),
        View::Atom(a) => match atoms.iter().position(|x| x == a) {
            Some(k) => Node::Atom(k),
            None => return Err(LtlError::UnknownAtom(a.into())),
        },
        View::Unary(c, a) => {
            let a = push_node(a, atoms, nodes)?;
            match c {
                super::Connective::Not => Node::Not(a),
                super::Connective::Next => Node::Next(a),
                super::Connective::Finally => Node::Finally(a),
                _ => Node::Globally(a),
            }
        }
        View::Binary(c, a, b) => {
            let a = push_node(a, atoms, nodes)?;
            let b = push_node(b, atoms, nodes)?;
            match c {
                super::Connective::And => Node::And(a, b),
                super::Connective::Or => Node::Or(a, b),
                super::Connective::Implies => Node::Implies(a, b),
                super::Connective::Equiv => Node::Equiv(a, b),
                super::Connective::Until => Node::Until(a, b),
                super::Connective::Release => Node::Release(a, b),
                _ => Node::WeakUntil(a, b),
            }
        }
    };
    nodes.push(node);
    Ok(nodes.len() - 1)
}

/// `φ₁ U φ₂` at every canonical position, by forward scan.
fn until<L: Lane>(batch: &LassoBatch<L>, a: &[L], b: &[L]) -> Vec<L> {
    let horizon = batch.prefix_len + 2 * batch.cycle_len;
    (0..batch.len())
        .map(|i| {
            let mut holds = L::ZERO;
            let mut prefix_ok = L::ONES;
            let mut n = i;
            for _ in 0..=horizon {
                holds = holds | (prefix_ok & b[n]);
                prefix_ok = prefix_ok & a[n];
                n = batch.succ(n);
            }
            holds
        })
        .collect()
}

fn negate<L: Lane>(t: &[L]) -> Vec<L> {
    t.iter().map(|&x| !x).collect()
}

impl Compiled {
    /// Satisfaction of the root at every canonical position.
    pub(crate) fn scan<L: Lane>(&self, batch: &LassoBatch<L>) -> Vec<L> {
        let len = batch.len();
        let mut tables: Vec<Vec<L>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let t = match *node {
                Node::Const(c) => vec![if c { L::ONES } else { L::ZERO }; len],
                Node::Atom(k) => (0..len).map(|p| batch.bits[p][k]).collect(),
                Node::Not(a) => negate(&tables[a]),
                Node::Next(a) => (0..len).map(|p| tables[a][batch.succ(p)]).collect(),
                Node::Or(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| x | y).collect(),
                // ¬(¬φ₁ ∨ ¬φ₂)
                Node::And(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| !(!x | !y)).collect(),
                // ¬φ₁ ∨ φ₂
                Node::Implies(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| !x | y).collect(),
                // (φ₁ → φ₂) ∧ (φ₂ → φ₁)
                Node::Equiv(a, b) => tables[a].iter().zip(&tables[b]).map(|(&x, &y)| (!x | y) & (!y | x)).collect(),
                Node::Until(a, b) => until(batch, &tables[a], &tables[b]),
                // true U φ
                Node::Finally(a) => until(batch, &vec![L::ONES; len], &tables[a]),
                // ¬F¬φ
                Node::Globally(a) => negate(&until(batch, &vec![L::ONES; len], &negate(&tables[a]))),
                // ¬(¬φ₁ U ¬φ₂)
                Node::Release(a, b) => negate(&until(batch, &negate(&tables[a]), &negate(&tables[b]))),
                // (φ₁ U φ₂) ∨ G φ₁
                Node::WeakUntil(a, b) => {
                    let u = until(batch, &tables[a], &tables[b]);
                    let g = negate(&until(batch, &vec![L::ONES; len], &negate(&tables[a])));
                    u.iter().zip(&g).map(|(&x, &y)| x | y).collect()
                }
            };
            tables.push(t);
        }
        tables.pop().expect("a formula has at least one node")
    }
}

/// Whether `w, i ⊨ φ`.
pub fn eval_lasso(phi: &Formula, w: &LassoWord, i: usize) -> Result<bool, LtlError> {
    let batch = w.to_batch();
    let table = Compiled::new(phi, &w.atoms)?.scan(&batch);
    Ok(table[batch.canonical(i)])
}

/// Satisfaction at position 0 of every word in the batch, one bit per lane.
/// Lanes outside `batch.valid` carry no meaning.
pub fn eval_lasso_lanes<L: Lane>(phi: &Formula, atoms: &[String], batch: &LassoBatch<L>) -> Result<L, LtlError> {
    Ok(Compiled::new(phi, atoms)?.scan(batch)[0])
}

/// Lane patterns: lane `j` has bit `k` of `j` in pattern `k`.
const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Calls `f` on batches that together hold every lasso word with
/// `1 ≤ |v|` and `|u| + |v| ≤ max_len` over `num_atoms` atoms, each exactly
/// once. Stops early when `f` returns `false`.
pub fn for_each_lasso_batch(num_atoms: usize, max_len: usize, mut f: impl FnMut(&LassoBatch<u64>) -> bool) {
    for total in 1..=max_len {
        let bits = num_atoms * total;
        assert!(bits < 64 + 6, "too many lasso words to enumerate");
        for cycle_len in 1..=total {
            let prefix_len = total - cycle_len;
            let (batches, valid) =
                if bits >= 6 { (1u64 << (bits - 6), u64::MAX) } else { (1, (1u64 << (1u32 << bits)) - 1) };
            for b in 0..batches {
                let lane_bit = |k: usize| {
                    if k < 6 {
                        LANE_PATTERNS[k]
                    } else if b >> (k - 6) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                };
                let batch = LassoBatch {
                    prefix_len,
                    cycle_len,
                    bits: (0..total)
                        .map(|p| (0..num_atoms).map(|a| lane_bit(p * num_atoms + a) & valid).collect())
                        .collect(),
                    valid,
                };
                if !f(&batch) {
                    return;
                }
            }
        }
    }
}

/// Every lasso word with `|u| + |v| ≤ max_len` over `atoms`, shortest first.
pub fn enumerate_lassos(atoms: &[String], max_len: usize) -> impl Iterator<Item = LassoWord> + '_ {
    let n = atoms.len();
    (1..=max_len).flat_map(move |total| {
        assert!(n * total < 64, "too many lasso words to enumerate");
        (1..=total).flat_map(move |cycle_len| {
            let prefix_len = total - cycle_len;
            (0..1u64 << (n * total)).map(move |t| {
                let mask = (1u64 << n) - 1;
                let letter = |p: usize| t >> (p * n) & mask;
                LassoWord::new(
                    atoms.to_vec(),
                    (0..prefix_len).map(letter).collect(),
                    (prefix_len..total).map(letter).collect(),
                )
            })
        })
    })
}
