use std::cmp::Ordering;

use super::eval::{apply_binary, apply_unary, saturate};
use super::Expr;

fn rank(e: &Expr) -> u8 {
    match e {
        Expr::Var(_) => 0,
        Expr::Num(_) => 1,
        Expr::Neg(_) => 2,
        Expr::Unary(..) => 3,
        Expr::Binary(..) => 4,
        Expr::If { .. } => 5,
    }
}

/// Total order over expression trees: node kind, then payload, then
/// children left to right. Numbers compare with `f64::total_cmp`.
pub fn structural_cmp(a: &Expr, b: &Expr) -> Ordering {
    rank(a).cmp(&rank(b)).then_with(|| match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => x.cmp(y),
        (Expr::Num(x), Expr::Num(y)) => x.total_cmp(y),
        (Expr::Neg(x), Expr::Neg(y)) => structural_cmp(x, y),
        (Expr::Unary(f, x), Expr::Unary(g, y)) => f.cmp(g).then_with(|| structural_cmp(x, y)),
        (Expr::Binary(o, x1, x2), Expr::Binary(p, y1, y2)) => o
            .cmp(p)
            .then_with(|| structural_cmp(x1, y1))
            .then_with(|| structural_cmp(x2, y2)),
        (
            Expr::If { cmp: c1, lhs: l1, rhs: r1, then: t1, otherwise: o1 },
            Expr::If { cmp: c2, lhs: l2, rhs: r2, then: t2, otherwise: o2 },
        ) => c1
            .cmp(c2)
            .then_with(|| structural_cmp(l1, l2))
            .then_with(|| structural_cmp(r1, r2))
            .then_with(|| structural_cmp(t1, t2))
            .then_with(|| structural_cmp(o1, o2)),
        _ => unreachable!("ranks are equal"),
    })
}

/// Folds literal subtrees and orders the operands of `+`, `*`, `min` and
/// `max`. Folding uses the evaluator's own semantics, so the canonical form
/// always scores identically to the input.
pub fn canonicalize(expr: &Expr) -> Expr {
    match expr {
        Expr::Num(v) => Expr::Num(saturate(*v)),
        Expr::Var(v) => Expr::Var(*v),
        Expr::Neg(a) => match canonicalize(a) {
            Expr::Num(v) => Expr::Num(saturate(-v)),
            a => Expr::Neg(Box::new(a)),
        },
        Expr::Unary(f, a) => match canonicalize(a) {
            Expr::Num(v) => Expr::Num(apply_unary(*f, v)),
            a => Expr::Unary(*f, Box::new(a)),
        },
        Expr::Binary(op, a, b) => {
            let (a, b) = (canonicalize(a), canonicalize(b));
            if let (Expr::Num(x), Expr::Num(y)) = (&a, &b) {
                return Expr::Num(apply_binary(*op, *x, *y));
            }
            if op.is_commutative() && structural_cmp(&a, &b) == Ordering::Greater {
                Expr::bin(*op, b, a)
            } else {
                Expr::bin(*op, a, b)
            }
        }
        Expr::If { cmp, lhs, rhs, then, otherwise } => {
            let (lhs, rhs) = (canonicalize(lhs), canonicalize(rhs));
            let (then, otherwise) = (canonicalize(then), canonicalize(otherwise));
            if let (Expr::Num(x), Expr::Num(y)) = (&lhs, &rhs) {
                return if cmp.holds(*x, *y) { then } else { otherwise };
            }
            Expr::If {
                cmp: *cmp,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                then: Box::new(then),
                otherwise: Box::new(otherwise),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, BinOp, Var};

    fn canon(src: &str) -> Expr {
        canonicalize(&parse(src).unwrap())
    }

    #[test]
    fn commutative_operands_are_sorted() {
        assert_eq!(canon("mem + cpu"), canon("cpu + mem"));
        assert_eq!(canon("max(io, cpu * 2)"), canon("max(2 * cpu, io)"));
    }

    #[test]
    fn constants_fold() {
        assert_eq!(
            canon("2 * 3 + cpu"),
            Expr::bin(BinOp::Add, Expr::Var(Var::Cpu), Expr::Num(6.0))
        );
        assert_eq!(canon("if(1 < 2, cpu, mem)"), Expr::Var(Var::Cpu));
        assert_eq!(canon("-(3)"), Expr::Num(-3.0));
        assert_eq!(canon("bw + 1 / 0"), canon("bw + 0"));
    }

    #[test]
    fn non_commutative_stay_distinct() {
        assert_ne!(canon("cpu - mem"), canon("mem - cpu"));
        assert_ne!(canon("cpu / mem"), canon("mem / cpu"));
    }

    #[test]
    fn idempotent_on_examples() {
        for src in ["mem + cpu * (2 + 3)", "if(wait > 3, max(io, 1), -exec)", "pow(2, 3) - log(cpu)"] {
            let once = canon(src);
            assert_eq!(canonicalize(&once), once);
        }
    }
}
