//! Semantics-preserving formula rewrites. Each one works bottom-up and
//! leaves operand order alone unless the identity it applies reorders.

use core::fmt;
use core::str::FromStr;

use super::{Connective, Formula, View};

/// Replaces `∧ → ↔ F G R W` and `false` by their definitions over
/// `¬ ∨ X U true`.
pub fn expand_derived(phi: &Formula) -> Formula {
    use Formula as F;
    let n = F::not;
    match phi {
        F::True | F::Atom(_) => phi.clone(),
        F::False => n(F::True),
        F::Not(a) => n(expand_derived(a)),
        F::Next(a) => F::next(expand_derived(a)),
        F::Or(a, b) => F::or(expand_derived(a), expand_derived(b)),
        F::Until(a, b) => F::until(expand_derived(a), expand_derived(b)),
        F::And(a, b) => n(F::or(n(expand_derived(a)), n(expand_derived(b)))),
        F::Implies(a, b) => F::or(n(expand_derived(a)), expand_derived(b)),
        F::Equiv(a, b) => {
            let a = expand_derived(a);
            let b = expand_derived(b);
            let ab = F::or(n(a.clone()), b.clone());
            let ba = F::or(n(b), a);
            n(F::or(n(ab), n(ba)))
        }
        F::Finally(a) => F::until(F::True, expand_derived(a)),
        F::Globally(a) => n(F::until(F::True, n(expand_derived(a)))),
        F::Release(a, b) => n(F::until(n(expand_derived(a)), n(expand_derived(b)))),
        F::WeakUntil(a, b) => {
            let a = expand_derived(a);
            let b = expand_derived(b);
            F::or(F::until(a.clone(), b), n(F::until(F::True, n(a))))
        }
    }
}

/// Whether only `¬ ∨ X U true` and atoms occur.
pub fn is_core(phi: &Formula) -> bool {
    match phi.view() {
        View::Const(b) => b,
        View::Atom(_) => true,
        View::Unary(c, a) => matches!(c, Connective::Not | Connective::Next) && is_core(a),
        View::Binary(c, a, b) => matches!(c, Connective::Or | Connective::Until) && is_core(a) && is_core(b),
    }
}

/// Negation normal form: `→` and `↔` eliminated, negation only on atoms.
pub fn to_nnf(phi: &Formula) -> Formula {
    nnf(phi, false)
}

fn nnf(phi: &Formula, negated: bool) -> Formula {
    use Formula as F;
    match (phi, negated) {
        (F::True, false) | (F::False, true) => F::True,
        (F::True, true) | (F::False, false) => F::False,
        (F::Atom(_), false) => phi.clone(),
        (F::Atom(_), true) => F::not(phi.clone()),
        (F::Not(a), _) => nnf(a, !negated),
        (F::Next(a), _) => F::next(nnf(a, negated)),
        (F::Finally(a), false) => F::finally(nnf(a, false)),
        (F::Finally(a), true) => F::globally(nnf(a, true)),
        (F::Globally(a), false) => F::globally(nnf(a, false)),
        (F::Globally(a), true) => F::finally(nnf(a, true)),
        (F::And(a, b), false) => F::and(nnf(a, false), nnf(b, false)),
        (F::And(a, b), true) => F::or(nnf(a, true), nnf(b, true)),
        (F::Or(a, b), false) => F::or(nnf(a, false), nnf(b, false)),
        (F::Or(a, b), true) => F::and(nnf(a, true), nnf(b, true)),
        (F::Implies(a, b), false) => F::or(nnf(a, true), nnf(b, false)),
        (F::Implies(a, b), true) => F::and(nnf(a, false), nnf(b, true)),
        (F::Equiv(a, b), false) => F::and(F::or(nnf(a, true), nnf(b, false)), F::or(nnf(a, false), nnf(b, true))),
        (F::Equiv(a, b), true) => F::or(F::and(nnf(a, false), nnf(b, true)), F::and(nnf(a, true), nnf(b, false))),
        (F::Until(a, b), false) => F::until(nnf(a, false), nnf(b, false)),
        (F::Until(a, b), true) => F::release(nnf(a, true), nnf(b, true)),
        (F::Release(a, b), false) => F::release(nnf(a, false), nnf(b, false)),
        (F::Release(a, b), true) => F::until(nnf(a, true), nnf(b, true)),
        (F::WeakUntil(a, b), false) => F::weak_until(nnf(a, false), nnf(b, false)),
        // ¬(a W b) ≡ ¬b U (¬a ∧ ¬b)
        (F::WeakUntil(a, b), true) => F::until(nnf(b, true), F::and(nnf(a, true), nnf(b, true))),
    }
}

/// Whether negation occurs only directly above atoms and `→`, `↔` are absent.
pub fn is_nnf(phi: &Formula) -> bool {
    match phi {
        Formula::Not(a) => matches!(**a, Formula::Atom(_)),
        Formula::Implies(..) | Formula::Equiv(..) => false,
        _ => match phi.view() {
            View::Const(_) | View::Atom(_) => true,
            View::Unary(_, a) => is_nnf(a),
            View::Binary(_, a, b) => is_nnf(a) && is_nnf(b),
        },
    }
}

/// Moves `X` inward through every connective until it sits on atoms or constants.
pub fn push_next(phi: &Formula) -> Formula {
    match phi {
        Formula::Next(a) => next_inward(&push_next(a)),
        _ => phi.map_children(push_next),
    }
}

/// `X ψ` with `ψ` already pushed.
fn next_inward(psi: &Formula) -> Formula {
    match psi.view() {
        View::Const(_) => psi.clone(),
        View::Atom(_) => Formula::next(psi.clone()),
        View::Unary(c, a) => Formula::unary(c, next_inward(a)),
        View::Binary(c, a, b) => Formula::binary(c, next_inward(a), next_inward(b)),
    }
}

/// Gathers `X` outward wherever every operand of a connective starts with `X`.
pub fn pull_next(phi: &Formula) -> Formula {
    let phi = phi.map_children(pull_next);
    match phi.view() {
        View::Unary(c, Formula::Next(a)) if c != Connective::Next => {
            Formula::next(pull_next(&Formula::unary(c, (**a).clone())))
        }
        View::Binary(c, Formula::Next(a), Formula::Next(b)) => {
            Formula::next(pull_next(&Formula::binary(c, (**a).clone(), (**b).clone())))
        }
        _ => phi,
    }
}

/// `G(a ∧ b) → G a ∧ G b` and `G G a → G a`.
pub fn push_globally(phi: &Formula) -> Formula {
    match phi {
        Formula::Globally(a) => globally_inward(push_globally(a)),
        _ => phi.map_children(push_globally),
    }
}

fn globally_inward(psi: Formula) -> Formula {
    match psi {
        Formula::And(a, b) => Formula::and(globally_inward(*a), globally_inward(*b)),
        Formula::Globally(_) => psi,
        _ => Formula::globally(psi),
    }
}

/// `F(a ∨ b) → F a ∨ F b` and `F F a → F a`.
pub fn push_eventually(phi: &Formula) -> Formula {
    match phi {
        Formula::Finally(a) => finally_inward(push_eventually(a)),
        _ => phi.map_children(push_eventually),
    }
}

fn finally_inward(psi: Formula) -> Formula {
    match psi {
        Formula::Or(a, b) => Formula::or(finally_inward(*a), finally_inward(*b)),
        Formula::Finally(_) => psi,
        _ => Formula::finally(psi),
    }
}

/// A named rewrite, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rewrite {
    Nnf,
    ExpandDerived,
    PushNext,
    PullNext,
    PushGlobally,
    PushEventually,
}

impl Rewrite {
    pub const ALL: [Rewrite; 6] = [
        Rewrite::Nnf,
        Rewrite::ExpandDerived,
        Rewrite::PushNext,
        Rewrite::PullNext,
        Rewrite::PushGlobally,
        Rewrite::PushEventually,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rewrite::Nnf => "nnf",
            Rewrite::ExpandDerived => "expand-derived",
            Rewrite::PushNext => "push-next",
            Rewrite::PullNext => "pull-next",
            Rewrite::PushGlobally => "push-globally",
            Rewrite::PushEventually => "push-eventually",
        }
    }

    pub fn apply(self, phi: &Formula) -> Formula {
        match self {
            Rewrite::Nnf => to_nnf(phi),
            Rewrite::ExpandDerived => expand_derived(phi),
            Rewrite::PushNext => push_next(phi),
            Rewrite::PullNext => pull_next(phi),
            Rewrite::PushGlobally => push_globally(phi),
            Rewrite::PushEventually => push_eventually(phi),
        }
    }
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rewrite {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Rewrite::ALL.into_iter().find(|r| r.name() == s).ok_or(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }
    fn n(x: Formula) -> Formula {
        Formula::not(x)
    }

    #[test]
    fn expand_globally() {
        let g = expand_derived(&Formula::globally(a()));
        assert_eq!(g, n(Formula::until(Formula::True, n(a()))));
    }

    #[test]
    fn expand_release() {
        let r = expand_derived(&Formula::release(a(), b()));
        assert_eq!(r, n(Formula::until(n(a()), n(b()))));
    }

    #[test]
    fn expand_leaves_core_alone() {
        assert_eq!(expand_derived(&a()), a());
        let core = Formula::until(Formula::next(a()), Formula::or(n(b()), Formula::True));
        assert_eq!(expand_derived(&core), core);
        assert_eq!(expand_derived(&Formula::False), n(Formula::True));
    }

    #[test]
    fn nnf_dualities() {
        assert_eq!(to_nnf(&n(Formula::until(a(), b()))), Formula::release(n(a()), n(b())));
        assert_eq!(to_nnf(&n(Formula::next(a()))), Formula::next(n(a())));
        assert_eq!(to_nnf(&n(n(a()))), a());
        assert_eq!(to_nnf(&n(Formula::globally(a()))), Formula::finally(n(a())));
        assert_eq!(to_nnf(&n(Formula::weak_until(a(), b()))), Formula::until(n(b()), Formula::and(n(a()), n(b()))));
        assert_eq!(to_nnf(&Formula::implies(a(), b())), Formula::or(n(a()), b()));
    }

    #[test]
    fn push_next_distributes() {
        let x = push_next(&Formula::next(Formula::and(a(), b())));
        assert_eq!(x, Formula::and(Formula::next(a()), Formula::next(b())));
        let x = push_next(&Formula::next(Formula::next(Formula::until(a(), n(b())))));
        let xx = |f| Formula::next(Formula::next(f));
        assert_eq!(x, Formula::until(xx(a()), n(xx(b()))));
        assert_eq!(push_next(&Formula::next(Formula::True)), Formula::True);
    }

    #[test]
    fn pull_next_gathers() {
        let x = pull_next(&Formula::until(Formula::next(a()), Formula::next(b())));
        assert_eq!(x, Formula::next(Formula::until(a(), b())));
        let x = pull_next(&Formula::and(Formula::next(a()), b()));
        assert_eq!(x, Formula::and(Formula::next(a()), b()));
        let pushed = push_next(&Formula::next(Formula::next(Formula::and(a(), Formula::globally(b())))));
        assert_eq!(pull_next(&pushed), Formula::next(Formula::next(Formula::and(a(), Formula::globally(b())))));
    }

    #[test]
    fn push_globally_splits_conjunctions() {
        let g = push_globally(&Formula::globally(Formula::and(a(), Formula::globally(b()))));
        assert_eq!(g, Formula::and(Formula::globally(a()), Formula::globally(b())));
    }

    #[test]
    fn push_eventually_splits_disjunctions() {
        let f = push_eventually(&Formula::finally(Formula::or(Formula::finally(a()), b())));
        assert_eq!(f, Formula::or(Formula::finally(a()), Formula::finally(b())));
    }

    #[test]
    fn names_round_trip() {
        for r in Rewrite::ALL {
            assert_eq!(r.name().parse::<Rewrite>(), Ok(r));
        }
        assert!("nope".parse::<Rewrite>().is_err());
    }
}
