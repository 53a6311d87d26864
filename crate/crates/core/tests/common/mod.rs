use proptest::prelude::*;

use tlsf_core::ast::{BigOpKind, BinOp, Binder, Expr, ExprKind, Ident, Pos, UnaryOp};

pub const NAMES: [&str; 6] = ["a", "b", "req@0", "x'", "_tmp", "Gx"];

fn ident(i: usize) -> Ident {
    Ident::new(NAMES[i % NAMES.len()], Pos::default())
}

fn node(kind: ExprKind) -> Expr {
    Expr::new(kind, Pos::default())
}

const UNARY: [UnaryOp; 8] = [
    UnaryOp::Neg,
    UnaryOp::Next,
    UnaryOp::Globally,
    UnaryOp::Finally,
    UnaryOp::SetSize,
    UnaryOp::SetMin,
    UnaryOp::SetMax,
    UnaryOp::SizeOf,
];

const BINARY: [BinOp; 22] = [
    BinOp::Add,
    BinOp::Sub,
    BinOp::Mul,
    BinOp::Div,
    BinOp::Mod,
    BinOp::And,
    BinOp::Or,
    BinOp::Implies,
    BinOp::Equiv,
    BinOp::Until,
    BinOp::Release,
    BinOp::WeakUntil,
    BinOp::Eq,
    BinOp::Neq,
    BinOp::Lt,
    BinOp::Leq,
    BinOp::Gt,
    BinOp::Geq,
    BinOp::In,
    BinOp::Cup,
    BinOp::Cap,
    BinOp::SetMinus,
];

const BIG: [BigOpKind; 6] =
    [BigOpKind::Sum, BigOpKind::Prod, BigOpKind::Cup, BigOpKind::Cap, BigOpKind::And, BigOpKind::Or];

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..1000).prop_map(Expr::nat),
        any::<bool>().prop_map(Expr::boolean),
        (0..NAMES.len()).prop_map(|i| node(ExprKind::Id(ident(i)))),
    ]
}

pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 40, 3, |inner| {
        let binder = (0..NAMES.len(), inner.clone(), inner.clone(), any::<(bool, bool, bool)>()).prop_map(
            |(i, lo, hi, (interval, ls, hs))| Binder {
                var: ident(i),
                domain: if interval {
                    node(ExprKind::Interval { lo: lo.into(), lo_strict: ls, hi: hi.into(), hi_strict: hs })
                } else {
                    lo
                },
            },
        );
        prop_oneof![
            (0..UNARY.len(), inner.clone()).prop_map(|(i, e)| Expr::unary(UNARY[i], e)),
            (0..BINARY.len(), inner.clone(), inner.clone()).prop_map(|(i, a, b)| Expr::binary(BINARY[i], a, b)),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|v| node(ExprKind::SetLiteral(v))),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(x, y, z)| node(ExprKind::SetRange(
                x.into(),
                y.into(),
                z.into()
            ))),
            (0..BIG.len(), prop::collection::vec(binder, 1..3), inner.clone()).prop_map(|(k, mut binders, body)| {
                // binder names must be distinct
                if binders.len() == 2 && binders[0].var == binders[1].var {
                    binders[1].var = Ident::new(format!("{}2", binders[1].var), Pos::default());
                }
                node(ExprKind::BigOp { kind: BIG[k], binders, body: body.into() })
            }),
            (0..NAMES.len(), prop::collection::vec(inner.clone(), 1..3))
                .prop_map(|(i, args)| node(ExprKind::FnApp { name: ident(i), args })),
            (0..NAMES.len(), inner.clone())
                .prop_map(|(i, e)| node(ExprKind::BusIndex { bus: ident(i), index: e.into() })),
            (inner.clone(), inner.clone()).prop_map(|(c, b)| node(ExprKind::NextN { count: c.into(), body: b.into() })),
            (inner.clone(), inner.clone(), inner.clone(), any::<bool>()).prop_map(|(x, y, b, fin)| {
                let (from, to, body) = (x.into(), y.into(), b.into());
                node(if fin {
                    ExprKind::FinallyRange { from, to, body }
                } else {
                    ExprKind::GloballyRange { from, to, body }
                })
            }),
        ]
    })
}
