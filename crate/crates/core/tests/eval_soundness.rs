use std::collections::BTreeMap;

use proptest::prelude::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlsf_core::eval::{eval, Env, EvalErrorKind, Value};
use tlsf_core::frontend::{parse, parse_expression};
use tlsf_core::typecheck::{check_spec, infer, TypeEnv};

mod common;

const SPEC: &str = r#"
INFO { TITLE: "t" DESCRIPTION: "d" SEMANTICS: Mealy TARGET: Mealy }
GLOBAL {
  PARAMETERS { x' = 3; }
  DEFINITIONS {
    _tmp = {1, 2};
    Gx(y) = y;
  }
}
MAIN {
  INPUTS { a; req@0; }
  OUTPUTS { b[3]; }
}
"#;

fn envs() -> (TypeEnv, Env) {
    let spec = parse(SPEC).unwrap();
    (check_spec(&spec).unwrap(), Env::for_spec(&spec, &BTreeMap::new()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 5000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn well_typed_expressions_never_fail_with_type_errors(e in common::expr()) {
        let (types, mut env) = envs();
        if let Ok(ty) = infer(&e, &types) {
            match eval(&e, &mut env) {
                Ok(v) => {
                    let fits = match (&v, &ty) {
                        (Value::Nat(_), tlsf_core::ast::Ty::Nat) => true,
                        (Value::Set(_), tlsf_core::ast::Ty::Set(_)) => true,
                        (Value::Bus { .. }, tlsf_core::ast::Ty::Bus) => true,
                        (v, t) if t.is_ltl_like() => v.is_ltl_like(),
                        (_, tlsf_core::ast::Ty::Var(_)) => true,
                        _ => false,
                    };
                    prop_assert!(fits, "{} : {} evaluated to {}", e, ty, v);
                }
                Err(err) => prop_assert!(
                    !matches!(
                        err.kind,
                        EvalErrorKind::Type { .. } | EvalErrorKind::Unbound(_) | EvalErrorKind::Arity { .. }
                    ),
                    "{} : {} failed with {}",
                    e,
                    ty,
                    err
                ),
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Want {
    Nat,
    Bool,
    Ltl,
    NatSet,
}

/// Random source text of the requested type; `scope` holds bound natural variables.
fn typed(rng: &mut ChaCha8Rng, want: Want, depth: u32, scope: &mut Vec<String>) -> String {
    let leaf = depth == 0 || rng.gen_ratio(1, 4);
    match want {
        Want::Nat if leaf => match rng.gen_range(0..4) {
            0 if !scope.is_empty() => scope[rng.gen_range(0..scope.len())].clone(),
            1 => "x'".into(),
            2 => "SIZEOF b".into(),
            _ => rng.gen_range(0..6).to_string(),
        },
        Want::Nat => match rng.gen_range(0..6) {
            0 => {
                let op = ["+", "-", "*", "/", "%"][rng.gen_range(0..5)];
                format!(
                    "({} {op} {})",
                    typed(rng, Want::Nat, depth - 1, scope),
                    typed(rng, Want::Nat, depth - 1, scope)
                )
            }
            1 => format!("|{}|", typed(rng, Want::NatSet, depth - 1, scope)),
            2 => format!("{} {}", ["MIN", "MAX"][rng.gen_range(0..2)], typed(rng, Want::NatSet, depth - 1, scope)),
            3 => format!("Gx({})", typed(rng, Want::Nat, depth - 1, scope)),
            _ => {
                let op = ["+", "*"][rng.gen_range(0..2)];
                big(rng, op, Want::Nat, depth, scope)
            }
        },
        Want::Bool if leaf => ["true", "false"][rng.gen_range(0..2)].into(),
        Want::Bool => match rng.gen_range(0..5) {
            0 => {
                let op = ["==", "!=", "<", "<=", ">", ">="][rng.gen_range(0..6)];
                format!(
                    "({} {op} {})",
                    typed(rng, Want::Nat, depth - 1, scope),
                    typed(rng, Want::Nat, depth - 1, scope)
                )
            }
            1 => format!(
                "({} IN {})",
                typed(rng, Want::Nat, depth - 1, scope),
                typed(rng, Want::NatSet, depth - 1, scope)
            ),
            2 => format!("!{}", typed(rng, Want::Bool, depth - 1, scope)),
            3 => {
                let op = ["&&", "||", "->", "<->"][rng.gen_range(0..4)];
                format!(
                    "({} {op} {})",
                    typed(rng, Want::Bool, depth - 1, scope),
                    typed(rng, Want::Bool, depth - 1, scope)
                )
            }
            _ => {
                let op = ["&&", "||"][rng.gen_range(0..2)];
                big(rng, op, Want::Bool, depth, scope)
            }
        },
        Want::Ltl if leaf => match rng.gen_range(0..4) {
            0 => "a".into(),
            1 => "req@0".into(),
            2 => format!("b[{}]", rng.gen_range(0..4)),
            _ => typed(rng, Want::Bool, 0, scope),
        },
        Want::Ltl => match rng.gen_range(0..8) {
            0 => format!("{} {}", ["X", "F", "G", "!"][rng.gen_range(0..4)], typed(rng, Want::Ltl, depth - 1, scope)),
            1 | 2 => {
                let op = ["&&", "||", "->", "<->", "U", "R", "W"][rng.gen_range(0..7)];
                format!(
                    "({} {op} {})",
                    typed(rng, Want::Ltl, depth - 1, scope),
                    typed(rng, Want::Ltl, depth - 1, scope)
                )
            }
            3 => format!("b[{}]", typed(rng, Want::Nat, depth - 1, scope)),
            4 => format!("X[{}] {}", rng.gen_range(0..3), typed(rng, Want::Ltl, depth - 1, scope)),
            5 => {
                let (n, m) = (rng.gen_range(0..3), rng.gen_range(0..4));
                format!("{}[{n}:{m}] {}", ["F", "G"][rng.gen_range(0..2)], typed(rng, Want::Ltl, depth - 1, scope))
            }
            6 => format!("Gx({})", typed(rng, Want::Ltl, depth - 1, scope)),
            _ => {
                let op = ["&&", "||"][rng.gen_range(0..2)];
                big(rng, op, Want::Ltl, depth, scope)
            }
        },
        Want::NatSet if leaf => match rng.gen_range(0..3) {
            0 => "_tmp".into(),
            1 => "{}".into(),
            _ => format!("{{{}, {}}}", rng.gen_range(0..5), rng.gen_range(0..5)),
        },
        Want::NatSet => match rng.gen_range(0..4) {
            0 => {
                let x = rng.gen_range(0..4);
                format!("{{{x}, {} .. {}}}", x + rng.gen_range(1..3), typed(rng, Want::Nat, depth - 1, scope))
            }
            1 => {
                let op = ["(+)", "(*)", "(\\)"][rng.gen_range(0..3)];
                format!(
                    "({} {op} {})",
                    typed(rng, Want::NatSet, depth - 1, scope),
                    typed(rng, Want::NatSet, depth - 1, scope)
                )
            }
            2 => format!("{{{}}}", typed(rng, Want::Nat, depth - 1, scope)),
            _ => {
                let op = ["(+)", "(*)"][rng.gen_range(0..2)];
                big(rng, op, Want::NatSet, depth, scope)
            }
        },
    }
}

fn big(rng: &mut ChaCha8Rng, op: &str, body: Want, depth: u32, scope: &mut Vec<String>) -> String {
    let var = format!("i{}", scope.len());
    let binder = if rng.gen_bool(0.5) {
        format!("{var} IN {}", typed(rng, Want::NatSet, depth - 1, scope))
    } else {
        let lo = rng.gen_range(0..3);
        format!(
            "{lo} {} {var} {} {}",
            ["<", "<="][rng.gen_range(0..2)],
            ["<", "<="][rng.gen_range(0..2)],
            lo + rng.gen_range(0..4)
        )
    };
    scope.push(var);
    let text = format!("({op}[{binder}] {})", typed(rng, body, depth - 1, scope));
    scope.pop();
    text
}

#[test]
fn typed_corpus_evaluates_without_type_errors() {
    let (types, env) = envs();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut accepted, mut evaluated) = (0, 0);
    for n in 0..5000 {
        let want = [Want::Nat, Want::Bool, Want::Ltl, Want::NatSet][n % 4];
        let text = typed(&mut rng, want, 4, &mut Vec::new());
        let e = parse_expression(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        let Ok(ty) = infer(&e, &types) else { continue };
        accepted += 1;
        match eval(&e, &mut env.clone()) {
            Ok(_) => evaluated += 1,
            Err(err) => assert!(
                !matches!(
                    err.kind,
                    EvalErrorKind::Type { .. } | EvalErrorKind::Unbound(_) | EvalErrorKind::Arity { .. }
                ),
                "{text} : {ty} failed with {err}"
            ),
        }
    }
    assert!(accepted >= 4900, "only {accepted} of 5000 generated expressions type check");
    assert!(evaluated >= 2500, "only {evaluated} evaluated");
}
