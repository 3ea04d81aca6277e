//! Protected, saturating evaluation.
//!
//! * `x / y` with `|y| < 1e-9` is 0
//! * `log(x)` with `x <= 0` is 0, `sqrt(x)` with `x < 0` is 0
//! * every node result (including `pow` and `exp`) is clamped to
//!   `[-SATURATION, SATURATION]`, and a NaN node result becomes 0
//!
//! Under these rules no evaluation can produce a non-finite value.

use thiserror::Error;

use super::{BinOp, Expr, UnaryFn, Var};
use crate::simulator::{PolicyError, SchedulingContext, ScoringPolicy};

pub const SATURATION: f64 = 1e12;
const DIV_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Error)]
#[error("expression produced non-finite score {0}")]
pub struct InvalidScore(pub f64);

#[inline]
pub(crate) fn saturate(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(-SATURATION, SATURATION)
    }
}

pub(crate) fn lookup(ctx: &SchedulingContext, v: Var) -> f64 {
    match v {
        Var::Cpu => ctx.demand.cpu,
        Var::Io => ctx.demand.io,
        Var::Bw => ctx.demand.bandwidth,
        Var::Mem => ctx.demand.memory,
        Var::Arrival => ctx.arrival,
        Var::Exec => ctx.exec_time,
        Var::Wait => ctx.wait,
        Var::FreeCpu => ctx.free.cpu,
        Var::FreeIo => ctx.free.io,
        Var::FreeBw => ctx.free.bandwidth,
        Var::FreeMem => ctx.free.memory,
        Var::CapCpu => ctx.capacity.cpu,
        Var::CapIo => ctx.capacity.io,
        Var::CapBw => ctx.capacity.bandwidth,
        Var::CapMem => ctx.capacity.memory,
        Var::Now => ctx.now,
        Var::Pending => ctx.pending as f64,
        Var::MServers => ctx.num_servers as f64,
    }
}

pub(crate) fn apply_unary(f: UnaryFn, a: f64) -> f64 {
    saturate(match f {
        UnaryFn::Abs => a.abs(),
        UnaryFn::Log => {
            if a <= 0.0 {
                0.0
            } else {
                a.ln()
            }
        }
        UnaryFn::Exp => a.exp(),
        UnaryFn::Sqrt => {
            if a < 0.0 {
                0.0
            } else {
                a.sqrt()
            }
        }
    })
}

pub(crate) fn apply_binary(op: BinOp, a: f64, b: f64) -> f64 {
    saturate(match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a * b,
        BinOp::Div => {
            if b.abs() < DIV_EPS {
                0.0
            } else {
                a / b
            }
        }
        BinOp::Min => a.min(b),
        BinOp::Max => a.max(b),
        BinOp::Pow => a.powf(b),
    })
}

fn eval(e: &Expr, ctx: &SchedulingContext) -> f64 {
    match e {
        Expr::Num(v) => saturate(*v),
        Expr::Var(v) => saturate(lookup(ctx, *v)),
        Expr::Neg(a) => saturate(-eval(a, ctx)),
        Expr::Unary(f, a) => apply_unary(*f, eval(a, ctx)),
        Expr::Binary(op, a, b) => {
            let x = eval(a, ctx);
            let y = eval(b, ctx);
            apply_binary(*op, x, y)
        }
        Expr::If { cmp, lhs, rhs, then, otherwise } => {
            if cmp.holds(eval(lhs, ctx), eval(rhs, ctx)) {
                eval(then, ctx)
            } else {
                eval(otherwise, ctx)
            }
        }
    }
}

pub fn evaluate(expr: &Expr, ctx: &SchedulingContext) -> Result<f64, InvalidScore> {
    let v = eval(expr, ctx);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(InvalidScore(v))
    }
}

/// Scoring policy backed by a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub struct DslPolicy {
    pub expr: Expr,
}

impl DslPolicy {
    pub fn new(expr: Expr) -> Self {
        Self { expr }
    }

    pub fn parse(source: &str) -> Result<Self, super::ParseError> {
        Ok(Self::new(super::parse(source)?))
    }
}

impl ScoringPolicy for DslPolicy {
    fn score(&self, ctx: &SchedulingContext) -> Result<f64, PolicyError> {
        evaluate(&self.expr, ctx).map_err(|e| PolicyError(e.to_string()))
    }
}
