//! The LTL formula a basic specification denotes under its SEMANTICS and
//! TARGET.

use alloc::vec::Vec;

use crate::ast::{Semantics, Target};
use crate::ltl::{Formula, View};
use crate::reduce::BasicSpec;

/// Assumptions split as `theta_e && G psi_e && phi_e`, and guarantees as
/// `theta_s` plus `phi_s`, with `psi_s` the invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictDecomposition {
    pub theta_e: Formula,
    pub psi_e: Formula,
    pub phi_e: Formula,
    pub theta_s: Formula,
    pub psi_s: Formula,
    pub phi_s: Formula,
}

/// `A -> (G I && G0)` for assumptions `A`, invariants `I` and guarantees
/// `G0`, leaving out whichever parts are empty.
pub fn assemble_standard(b: &BasicSpec) -> Formula {
    let invariants =
        (!b.invariants.is_empty()).then(|| Formula::globally(Formula::conjunction(b.invariants.iter().cloned())));
    let guarantees = (!b.guarantees.is_empty()).then(|| Formula::conjunction(b.guarantees.iter().cloned()));
    let consequent = match (invariants, guarantees) {
        (Some(i), Some(g)) => Formula::and(i, g),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => Formula::True,
    };
    if b.assumptions.is_empty() {
        consequent
    } else {
        Formula::implies(Formula::conjunction(b.assumptions.iter().cloned()), consequent)
    }
}

fn conjuncts<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
    match phi.view() {
        View::Binary(crate::ltl::Connective::And, a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(phi),
    }
}

fn top_level_conjuncts(formulas: &[Formula]) -> Vec<&Formula> {
    let mut out = Vec::new();
    for phi in formulas {
        conjuncts(phi, &mut out);
    }
    out
}

/// Boolean combination of atoms and `X atom` terms.
fn is_step_relation(phi: &Formula) -> bool {
    match phi {
        Formula::True | Formula::False | Formula::Atom(_) => true,
        Formula::Next(a) => matches!(**a, Formula::Atom(_) | Formula::True | Formula::False),
        Formula::Not(a) => is_step_relation(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Equiv(a, b) => {
            is_step_relation(a) && is_step_relation(b)
        }
        _ => false,
    }
}

/// Routes each top-level conjunct of the assumptions: no temporal operator
/// goes to `theta_e`, `G b` with `b` a step relation contributes `b` to
/// `psi_e`, everything else goes to `phi_e`.
pub fn classify_assumptions(assumptions: &[Formula]) -> (Formula, Formula, Formula) {
    let (mut theta, mut psi, mut phi) = (Vec::new(), Vec::new(), Vec::new());
    for c in top_level_conjuncts(assumptions) {
        match c {
            Formula::Globally(body) if is_step_relation(body) => psi.push((**body).clone()),
            c if !c.is_temporal() => theta.push(c.clone()),
            c => phi.push(c.clone()),
        }
    }
    (Formula::conjunction(theta), Formula::conjunction(psi), Formula::conjunction(phi))
}

pub fn decompose(b: &BasicSpec) -> StrictDecomposition {
    let (theta_e, psi_e, phi_e) = classify_assumptions(&b.assumptions);
    let (initial, rest): (Vec<&Formula>, Vec<&Formula>) =
        top_level_conjuncts(&b.guarantees).into_iter().partition(|g| !g.is_temporal());
    StrictDecomposition {
        theta_e,
        psi_e,
        phi_e,
        theta_s: Formula::conjunction(initial.into_iter().cloned()),
        psi_s: Formula::conjunction(b.invariants.iter().cloned()),
        phi_s: Formula::conjunction(rest.into_iter().cloned()),
    }
}

/// The standard-semantics formula equivalent to `b` read under strict
/// implication:
/// `theta_e -> ((theta_s && (psi_s W !psi_e)) && ((G psi_e && phi_e) -> (G psi_s && phi_s)))`.
pub fn to_nonstrict(b: &BasicSpec) -> Formula {
    let d = decompose(b);
    let safety = Formula::weak_until(d.psi_s.clone(), Formula::not(d.psi_e.clone()));
    let live = Formula::implies(
        Formula::and(Formula::globally(d.psi_e), d.phi_e),
        Formula::and(Formula::globally(d.psi_s), d.phi_s),
    );
    Formula::implies(d.theta_e, Formula::and(Formula::and(d.theta_s, safety), live))
}

/// Moves `b` to the system model `to`: from Moore to Mealy every input
/// occurrence gets one extra `X`, from Mealy to Moore every output
/// occurrence does. Strictness is kept.
pub fn convert_target(b: &BasicSpec, to: Target) -> BasicSpec {
    let from = b.info.semantics.model();
    let mut out = if from == to {
        b.clone()
    } else {
        let delayed = match to {
            Target::Mealy => &b.inputs,
            Target::Moore => &b.outputs,
        };
        b.map_formulas(|phi| {
            phi.substitute_atoms(&|a| {
                let atom = Formula::atom(a);
                if delayed.iter().any(|s| s == a) {
                    Formula::next(atom)
                } else {
                    atom
                }
            })
        })
    };
    out.info.semantics = Semantics::from_parts(to, b.info.semantics.is_strict());
    out.info.target = to;
    out
}

/// The single formula `b` stands for: first aligned with its TARGET, then
/// made non-strict when the semantics is strict.
pub fn interpret(b: &BasicSpec) -> Formula {
    let aligned = convert_target(b, b.info.target);
    if aligned.info.semantics.is_strict() {
        to_nonstrict(&aligned)
    } else {
        assemble_standard(&aligned)
    }
}
