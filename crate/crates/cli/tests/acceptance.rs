//! Acceptance checks. Prints one PASS or FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Parser as _;
use proptest::test_runner::{Config as ProptestConfig, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tlsf::Config;
use tlsf_core::ast::{Body, Semantics, Target};
use tlsf_core::emit::{parse_formula, print_basic, LtlProfile};
use tlsf_core::eval::{eval, expand_sugar, Env, Value};
use tlsf_core::frontend::{parse, parse_basic_spec, parse_expression, ParseErrorKind};
use tlsf_core::ltl::{
    check_machine, enumerate_lassos, eval_lasso, eval_lasso_lanes, for_each_lasso_batch, Connective, Formula, Machine,
    Rewrite, View,
};
use tlsf_core::reduce::BasicSpec;
use tlsf_core::semantics::{assemble_standard, convert_target, interpret, to_nonstrict};

#[path = "../../core/tests/common/mod.rs"]
mod common;

type Outcome = Result<String, String>;

/// Name, check, and time budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const FIXTURES: [&str; 9] = [
    "arbiter.tlsf",
    "arbiter.n2.basic.tlsf",
    "arbiter.n3.basic.tlsf",
    "handwritten.basic.tlsf",
    "moore_counter.tlsf",
    "patterns.tlsf",
    "sets.tlsf",
    "strict_buffer.tlsf",
    "sugar.tlsf",
];

fn compile(source: &str) -> Result<BasicSpec, String> {
    tlsf_core::compile(source, &BTreeMap::new()).map_err(|e| e.to_string())
}

fn f(text: &str) -> Formula {
    parse_formula(text, &LtlProfile::tlsf()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// First lasso with `|u| + |v| <= max_len` on which the formulas differ.
fn disagreement(x: &Formula, y: &Formula, max_len: usize) -> Option<String> {
    let atoms: Vec<String> = x.atoms().union(&y.atoms()).cloned().collect();
    let mut found = None;
    for_each_lasso_batch(atoms.len(), max_len, |batch| {
        let diff =
            (eval_lasso_lanes(x, &atoms, batch).unwrap() ^ eval_lasso_lanes(y, &atoms, batch).unwrap()) & batch.valid;
        if diff != 0 {
            found = Some(batch.word(&atoms, diff.trailing_zeros()).to_string());
        }
        found.is_none()
    });
    found
}

fn arbiter_goldens() -> Outcome {
    let source = read("arbiter.tlsf");
    for (args, golden) in [(&[][..], "arbiter.n2.basic.tlsf"), (&["-p", "n=3"][..], "arbiter.n3.basic.tlsf")] {
        let config = Config::try_parse_from(["tlsf", "arbiter.tlsf"].iter().chain(args)).map_err(|e| e.to_string())?;
        let out = tlsf::run_source(&config, "arbiter.tlsf", &source, tlsf_core::eval::DEFAULT_RECURSION_LIMIT)
            .map_err(|e| e.to_string())?;
        ensure!(out == read(golden), "output differs from {golden}");
    }
    let b = compile(&source)?;
    ensure!(b.inputs == ["r@0", "r@1"] && b.outputs == ["g@0", "g@1"], "signals {:?} {:?}", b.inputs, b.outputs);
    ensure!(b.invariants == [f("!(g@0 && g@1) || !(g@1 && g@0)")], "invariant {:?}", b.invariants);
    ensure!(b.guarantees == [f("G (r@0 -> F g@0) && G (r@1 -> F g@1)")], "guarantee {:?}", b.guarantees);
    Ok("n=2 and n=3 byte-exact".into())
}

fn sugar_env() -> Env {
    let mut env = Env::new();
    env.bind("a", Value::Signal("a".into()));
    env
}

fn sugar_formula(text: &str) -> Formula {
    let e = parse_expression(text).unwrap();
    eval(&e, &mut sugar_env()).unwrap().to_formula().unwrap()
}

fn sugar_fidelity() -> Outcome {
    for (sugar, expansion) in
        [("X[3] a", "X X X a"), ("F[2:3] a", "X X(a || X a)"), ("G[1:3] a", "X(a && X(a && X a))")]
    {
        let rewritten = expand_sugar(&parse_expression(sugar).unwrap(), &mut sugar_env()).map_err(|e| e.to_string())?;
        ensure!(rewritten.structural_eq(&parse_expression(expansion).unwrap()), "{sugar} expands to {rewritten}");
        ensure!(sugar_formula(sugar) == f(expansion), "{sugar} evaluates to {}", sugar_formula(sugar));
    }
    let words: Vec<_> = enumerate_lassos(&["a".to_string()], 8).collect();
    let mut checked = 0;
    for n in 0..=4 {
        let next = sugar_formula(&format!("X[{n}] a"));
        for w in &words {
            ensure!(eval_lasso(&next, w, 0).unwrap() == w.holds(n, "a"), "X[{n}] a on {w}");
        }
        for m in n..=4 {
            let eventually = sugar_formula(&format!("F[{n}:{m}] a"));
            let always = sugar_formula(&format!("G[{n}:{m}] a"));
            for w in &words {
                let some = (n..=m).any(|k| w.holds(k, "a"));
                let all = (n..=m).all(|k| w.holds(k, "a"));
                ensure!(eval_lasso(&eventually, w, 0).unwrap() == some, "F[{n}:{m}] a on {w}");
                ensure!(eval_lasso(&always, w, 0).unwrap() == all, "G[{n}:{m}] a on {w}");
                checked += 2;
            }
        }
    }
    Ok(format!("{} lassos, {checked} range checks", words.len()))
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            k => Formula::atom(["a", "b", "c"][k % 3]),
        };
    }
    if rng.gen_bool(0.4) {
        let c = Connective::UNARY[rng.gen_range(0..4)];
        Formula::unary(c, random_formula(rng, depth - 1))
    } else {
        let c = Connective::BINARY[rng.gen_range(0..7)];
        Formula::binary(c, random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    }
}

fn rewrite_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut corpus = BTreeSet::new();
    while corpus.len() < 500 {
        corpus.insert(random_formula(&mut rng, 3));
    }
    let mut changed = 0;
    for phi in &corpus {
        ensure!(phi.depth() <= 3 && phi.atoms().len() <= 3, "{phi} is out of bounds");
        for r in Rewrite::ALL {
            let psi = r.apply(phi);
            if &psi == phi {
                continue;
            }
            changed += 1;
            if let Some(w) = disagreement(phi, &psi, 6) {
                return Err(format!("{r} changes {phi} into {psi}, which differs on {w}"));
            }
        }
    }
    Ok(format!("{} formulas, {changed} nontrivial rewrites", corpus.len()))
}

fn basic_text(semantics: &str, assumptions: &[&str], invariants: &[&str], guarantees: &[&str]) -> String {
    let block = |name: &str, items: &[&str]| {
        let body: String = items.iter().map(|s| format!("    {s};\n")).collect();
        format!("  {name} {{\n{body}  }}\n")
    };
    format!(
        "INFO {{ TITLE: \"t\" DESCRIPTION: \"d\" SEMANTICS: {semantics} TARGET: {} }}\nMAIN {{\n{}{}{}{}{}}}\n",
        semantics.split(',').next().unwrap(),
        block("INPUTS", &["a", "b"]),
        block("OUTPUTS", &["c", "d"]),
        block("ASSUMPTIONS", assumptions),
        block("INVARIANTS", invariants),
        block("GUARANTEES", guarantees),
    )
}

/// Assumptions, invariants and guarantees, then the expected
/// `theta_e`, `psi_e`, `phi_e`, `theta_s`, `psi_s`, `phi_s`.
type StrictFixture = (&'static [&'static str], &'static [&'static str], &'static [&'static str], [&'static str; 6]);

const STRICT_FIXTURES: [StrictFixture; 10] = [
    (&[], &[], &[], ["true", "true", "true", "true", "true", "true"]),
    (&[], &["c"], &[], ["true", "true", "true", "true", "c", "true"]),
    (&[], &["a -> c"], &["G F c"], ["true", "true", "true", "true", "a -> c", "G F c"]),
    (&[], &["c", "!d"], &["!c", "F d"], ["true", "true", "true", "!c", "c && !d", "F d"]),
    (
        &[],
        &["a -> X c"],
        &["c", "G (a -> F c)", "a U c"],
        ["true", "true", "true", "c", "a -> X c", "G (a -> F c) && (a U c)"],
    ),
    (&["!a"], &["c"], &["G F c"], ["!a", "true", "true", "true", "c", "G F c"]),
    (
        &["!a", "G (a -> !X a)", "G F a"],
        &["c -> a"],
        &["!c", "G F c"],
        ["!a", "a -> !X a", "G F a", "!c", "c -> a", "G F c"],
    ),
    (&["G (a || X b) && F a"], &["c"], &["c"], ["true", "a || X b", "F a", "c", "c", "true"]),
    (&["G F a", "G F b"], &["a R c"], &[], ["true", "true", "G F a && G F b", "true", "a R c", "true"]),
    (&["G X a", "G X X a"], &["d"], &["c && d"], ["true", "X a", "G X X a", "c && d", "d", "true"]),
];

fn strict_conversion() -> Outcome {
    let mut equivalences = 0;
    for (i, (assumptions, invariants, guarantees, parts)) in STRICT_FIXTURES.iter().enumerate() {
        let b = compile(&basic_text("Mealy,Strict", assumptions, invariants, guarantees))?;
        let [te, pe, fe, ts, ps, fs] = parts;
        let expected =
            f(&format!("({te}) -> ((({ts}) && (({ps}) W !({pe}))) && ((G ({pe}) && ({fe})) -> (G ({ps}) && ({fs}))))"));
        let got = to_nonstrict(&b);
        ensure!(got == expected, "fixture {i}: {got} is not {expected}");
        ensure!(interpret(&b) == got, "fixture {i}: interpret disagrees with to_nonstrict");
        if assumptions.is_empty() {
            if let Some(w) = disagreement(&got, &assemble_standard(&b), 6) {
                return Err(format!("fixture {i}: strict and standard readings differ on {w}"));
            }
            equivalences += 1;
        }
    }
    Ok(format!("10 shapes, {equivalences} lasso equivalences"))
}

/// Occurrences of atoms in `names`, and the total length of the `X` chains
/// directly above them.
fn occurrences(phi: &Formula, names: &[String]) -> (usize, usize) {
    fn go(phi: &Formula, names: &[String], chain: usize, acc: &mut (usize, usize)) {
        match phi.view() {
            View::Const(_) => {}
            View::Atom(a) => {
                if names.iter().any(|n| n == a) {
                    acc.0 += 1;
                    acc.1 += chain;
                }
            }
            View::Unary(Connective::Next, x) => go(x, names, chain + 1, acc),
            View::Unary(_, x) => go(x, names, 0, acc),
            View::Binary(_, x, y) => {
                go(x, names, 0, acc);
                go(y, names, 0, acc);
            }
        }
    }
    let mut acc = (0, 0);
    go(phi, names, 0, &mut acc);
    acc
}

fn check_delay(b: &BasicSpec, from: Target, to: Target) -> Result<(), String> {
    let mut source = b.clone();
    source.info.semantics = Semantics::from_parts(from, b.info.semantics.is_strict());
    let converted = convert_target(&source, to);
    ensure!(converted.info.target == to && converted.info.semantics.model() == to, "model not updated");
    ensure!(converted.info.semantics.is_strict() == b.info.semantics.is_strict(), "strictness changed");
    let (delayed, kept) = match to {
        Target::Mealy => (&b.inputs, &b.outputs),
        Target::Moore => (&b.outputs, &b.inputs),
    };
    let before: Vec<&Formula> = source.formulas().collect();
    let after: Vec<&Formula> = converted.formulas().collect();
    ensure!(before.len() == after.len(), "section sizes changed");
    for (x, y) in before.iter().zip(after) {
        let (n, chains) = occurrences(x, delayed);
        ensure!(occurrences(y, delayed) == (n, chains + n), "{x} became {y}");
        ensure!(occurrences(y, kept) == occurrences(x, kept), "{x} became {y}");
        ensure!(y.size() == x.size() + n, "{x} became {y}");
    }
    Ok(())
}

fn target_conversion() -> Outcome {
    let mut specs = Vec::new();
    for name in FIXTURES {
        specs.push(compile(&read(name)).map_err(|e| format!("{name}: {e}"))?);
    }
    specs.push(compile(&basic_text("Moore", &["G (a -> X b)"], &["c <-> X d"], &["G F (a && c)", "b U (d R a)"]))?);
    for b in &specs {
        check_delay(b, Target::Moore, Target::Mealy)?;
        check_delay(b, Target::Mealy, Target::Moore)?;
    }

    let phi = interpret(&compile(&read("arbiter.tlsf"))?);
    let inputs = ["r@0", "r@1"];
    let outputs = ["g@0", "g@1"];
    let toggler = Machine::mealy(&inputs, &outputs, 2, |q, _| (1 - q, 1 << q));
    ensure!(check_machine(&toggler, &phi, 6).map_err(|e| e.to_string())?, "alternating arbiter rejected");
    let greedy = Machine::mealy(&inputs, &outputs, 1, |q, _| (q, 0b11));
    ensure!(!check_machine(&greedy, &phi, 6).map_err(|e| e.to_string())?, "greedy arbiter accepted");
    Ok(format!("{} fixtures, alternating arbiter verified at k=6", specs.len()))
}

struct Row {
    row: u8,
    /// Pairs that must parse to the same tree.
    same: &'static [(&'static str, &'static str)],
    /// Spellings that are not operators.
    rejected: &'static [&'static str],
}

const ROWS: &[Row] = &[
    Row {
        row: 1,
        same: &[
            ("SUM[i IN S] i", "+[i IN S] i"),
            ("PROD[i IN S] i", "*[i IN S] i"),
            ("SIZE S", "|S|"),
            ("+[i IN S] i * 2", "(+[i IN S] i) * 2"),
            ("*[i IN S] i + 1", "(*[i IN S] i) + 1"),
            ("MIN S + 1", "(MIN S) + 1"),
            ("MAX S * 2", "(MAX S) * 2"),
            ("SIZEOF b * 2", "(SIZEOF b) * 2"),
            ("|S| * |T|", "(|S|) * (|T|)"),
        ],
        rejected: &["MINIMUM S", "SIZEOF"],
    },
    Row {
        row: 2,
        same: &[
            ("x MUL y", "x * y"),
            ("x * y * z", "(x * y) * z"),
            ("x * y / z", "(x * y) / z"),
            ("x / y * z", "x / (y * z)"),
        ],
        rejected: &["x TIMES y"],
    },
    Row {
        row: 3,
        same: &[
            ("x DIV y", "x / y"),
            ("x MOD y", "x % y"),
            ("x / y / z", "x / (y / z)"),
            ("x % y % z", "x % (y % z)"),
            ("x / y % z", "x / (y % z)"),
            ("x + y / z", "x + (y / z)"),
        ],
        rejected: &["x REM y"],
    },
    Row {
        row: 4,
        same: &[
            ("x PLUS y", "x + y"),
            ("x MINUS y", "x - y"),
            ("x - y - z", "(x - y) - z"),
            ("x + y - z", "(x + y) - z"),
            ("x + y == z", "(x + y) == z"),
        ],
        rejected: &["x ADD y"],
    },
    Row {
        row: 5,
        same: &[
            ("CAP[i IN S] {i}", "(*)[i IN S] {i}"),
            ("CUP[i IN S] {i}", "(+)[i IN S] {i}"),
            ("(+)[i IN S] {i} (+) T", "((+)[i IN S] {i}) (+) T"),
            ("(*)[i IN S] {i} (\\) T", "((*)[i IN S] {i}) (\\) T"),
        ],
        rejected: &["UNION[i IN S] {i}"],
    },
    Row {
        row: 6,
        same: &[
            ("A (-) B", "A (\\) B"),
            ("A SETMINUS B", "A (\\) B"),
            ("A (\\) B (\\) C", "A (\\) (B (\\) C)"),
            ("A (*) B (\\) C", "A (*) (B (\\) C)"),
        ],
        rejected: &["A MINUSSET B"],
    },
    Row {
        row: 7,
        same: &[("A CAP B", "A (*) B"), ("A (*) B (*) C", "(A (*) B) (*) C"), ("A (+) B (*) C", "A (+) (B (*) C)")],
        rejected: &["A INTERSECT B"],
    },
    Row {
        row: 8,
        same: &[("A CUP B", "A (+) B"), ("A (+) B (+) C", "(A (+) B) (+) C"), ("x IN A (+) B", "x IN (A (+) B)")],
        rejected: &["A UNION B"],
    },
    Row {
        row: 9,
        same: &[
            ("x EQ y", "x == y"),
            ("x NEQ y", "x != y"),
            ("x /= y", "x != y"),
            ("x LE y", "x < y"),
            ("x LEQ y", "x <= y"),
            ("x GE y", "x > y"),
            ("x GEG y", "x >= y"),
            ("x GEQ y", "x >= y"),
            ("x < y < z", "(x < y) < z"),
            ("x == y != z", "(x == y) != z"),
            ("x == y IN S", "(x == y) IN S"),
        ],
        rejected: &["x LT y", "x =< y"],
    },
    Row {
        row: 10,
        same: &[
            ("x ELEM S", "x IN S"),
            ("x <- S", "x IN S"),
            ("x IN S IN T", "(x IN S) IN T"),
            ("! x IN S", "!(x IN S)"),
        ],
        rejected: &["x MEMBER S"],
    },
    Row {
        row: 11,
        same: &[
            ("NOT a", "!a"),
            ("AND[i IN S] a", "&&[i IN S] a"),
            ("FORALL[i IN S] a", "&&[i IN S] a"),
            ("OR[i IN S] a", "||[i IN S] a"),
            ("EXISTS[i IN S] a", "||[i IN S] a"),
            ("X a && b", "(X a) && b"),
            ("F a || b", "(F a) || b"),
            ("G F a", "G (F a)"),
            ("! X a", "!(X a)"),
            ("&&[i IN S] a && b", "(&&[i IN S] a) && b"),
            ("||[i IN S] a || b", "(||[i IN S] a) || b"),
        ],
        rejected: &["NEXT a", "ALWAYS a", "EVENTUALLY a"],
    },
    Row {
        row: 12,
        same: &[("a AND b", "a && b"), ("a && b && c", "(a && b) && c"), ("a && b || c", "(a && b) || c")],
        rejected: &["a & b"],
    },
    Row {
        row: 13,
        same: &[("a OR b", "a || b"), ("a || b || c", "(a || b) || c"), ("a || b -> c", "(a || b) -> c")],
        rejected: &["a OR OR b"],
    },
    Row {
        row: 14,
        same: &[
            ("a IMPLIES b", "a -> b"),
            ("a EQUIV b", "a <-> b"),
            ("a -> b -> c", "a -> (b -> c)"),
            ("a <-> b <-> c", "a <-> (b <-> c)"),
            ("a -> b <-> c", "a -> (b <-> c)"),
            ("a -> b W c", "(a -> b) W c"),
        ],
        rejected: &["a => b"],
    },
    Row {
        row: 15,
        same: &[("a W b W c", "a W (b W c)"), ("a W b U c", "(a W b) U c"), ("a <-> b W c", "(a <-> b) W c")],
        rejected: &["a WEAK b"],
    },
    Row {
        row: 16,
        same: &[("a U b U c", "a U (b U c)"), ("a U b R c", "(a U b) R c"), ("a W b U c W d", "(a W b) U (c W d)")],
        rejected: &["a UNTIL b"],
    },
    Row { row: 17, same: &[("a R b R c", "(a R b) R c"), ("a R b U c", "a R (b U c)")], rejected: &["a RELEASE b"] },
];

/// Guard rows, compared on the parsed function bodies.
const GUARD_ROWS: &[Row] = &[
    Row {
        row: 18,
        same: &[
            ("x ~ a R _ : a", "x ~ (a R _) : a"),
            ("x ~ y U _ : y", "x ~ (y U _) : y"),
            ("x ~ !y : y otherwise: x", "x ~ (!y) : y otherwise: x"),
        ],
        rejected: &["x ~ : a", "x ~ a ~ : a"],
    },
    Row {
        row: 19,
        same: &[
            ("x == 1 : a R b otherwise: c", "(x == 1) : (a R b) otherwise: c"),
            ("x ~ _ U y : y R y", "(x ~ (_ U y)) : (y R y)"),
            ("x < 1 || x > 2 : a", "(x < 1 || x > 2) : a"),
        ],
        rejected: &["x == 1 : : a", "x == 1 :", ": a"],
    },
];

fn parse_bodies(bodies: &str) -> Result<Vec<Body>, String> {
    let src = format!(
        "INFO {{ TITLE: \"t\" DESCRIPTION: \"d\" SEMANTICS: Mealy TARGET: Mealy }} \
         GLOBAL {{ DEFINITIONS {{ f(x) = {bodies}; }} }} MAIN {{ }}"
    );
    let mut spec = parse(&src).map_err(|e| e.to_string())?;
    Ok(spec.definitions.remove(0).bodies)
}

fn parser_conformance() -> Outcome {
    let mut pairs = 0;
    for row in ROWS {
        for (x, y) in row.same {
            let (px, py) = (parse_expression(x), parse_expression(y));
            ensure!(px.is_ok() && px == py, "row {}: '{x}' and '{y}' differ", row.row);
            pairs += 1;
        }
        for bad in row.rejected {
            ensure!(parse_expression(bad).is_err(), "row {}: '{bad}' was accepted", row.row);
        }
    }
    for row in GUARD_ROWS {
        for (x, y) in row.same {
            let (px, py) = (parse_bodies(x), parse_bodies(y));
            ensure!(px.is_ok() && px == py, "row {}: '{x}' and '{y}' differ", row.row);
            pairs += 1;
        }
        for bad in row.rejected {
            ensure!(parse_bodies(bad).is_err(), "row {}: '{bad}' was accepted", row.row);
        }
    }
    let covered: BTreeSet<u8> = ROWS.iter().chain(GUARD_ROWS).map(|r| r.row).collect();
    ensure!(covered == (1..=19).collect(), "rows covered: {covered:?}");

    let mut runner =
        TestRunner::new(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() });
    runner
        .run(&common::expr(), |e| {
            let text = e.to_string();
            let back = parse_expression(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
            if !back.structural_eq(&e) {
                return Err(TestCaseError::fail(format!("{text} reparsed as {back}")));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("19 rows, {pairs} spelling and precedence pairs, 1000 round trips"))
}

const UNPARENTHESIZED: [&str; 6] = ["a", "a && b", "(a && b)", "((a) && (b) || (c))", "(G a)", "(! a)"];

fn basic_gate() -> Outcome {
    for name in FIXTURES {
        let b = compile(&read(name)).map_err(|e| format!("{name}: {e}"))?;
        let text = print_basic(&b);
        parse_basic_spec(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(compile(&text)? == b, "{name}: basic output elaborates differently");
    }
    for phi in UNPARENTHESIZED {
        let text = basic_text("Mealy", &[], &[], &[phi]);
        match parse_basic_spec(&text) {
            Err(e) if e.kind == ParseErrorKind::NotParenthesized => {}
            other => return Err(format!("'{phi}' gave {other:?}")),
        }
        ensure!(compile(&text).is_ok(), "'{phi}' should still be valid full-format input");
    }
    match parse_basic_spec(&read("arbiter.tlsf")) {
        Err(e) if e.kind == ParseErrorKind::NotBasic => {}
        other => return Err(format!("full arbiter gave {other:?}")),
    }
    Ok(format!("{} fixtures reparse, {} rejections", FIXTURES.len(), UNPARENTHESIZED.len() + 1))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("arbiter golden files", arbiter_goldens, Some(Duration::from_secs(1))),
        ("sugar fidelity", sugar_fidelity, Some(Duration::from_secs(30))),
        ("rewrite soundness", rewrite_soundness, Some(Duration::from_secs(300))),
        ("strict conversion", strict_conversion, None),
        ("target conversion", target_conversion, None),
        ("parser conformance", parser_conformance, None),
        ("basic-format gate", basic_gate, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
