//! The scoring language evolved heuristics are written in.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | primary ;
//! primary = number | variable | call | "(" expr ")" ;
//! call    = ("abs" | "log" | "exp" | "sqrt") "(" expr ")"
//!         | ("min" | "max" | "pow") "(" expr "," expr ")"
//!         | "if" "(" expr cmp expr "," expr "," expr ")" ;
//! cmp     = "<" | "<=" | ">" | ">=" | "==" ;
//! ```
//!
//! A `-` written directly before a number literal is part of the literal.
//! Arithmetic is protected and saturating so that every evaluation is
//! finite; see [`eval`].

mod canon;
mod eval;
mod parser;

use std::cmp::Ordering;
use std::fmt;

pub use canon::{canonicalize, structural_cmp};
pub use eval::{evaluate, DslPolicy, InvalidScore, SATURATION};
pub use parser::{parse, ParseError, ParseErrorKind, MAX_DEPTH, MAX_NODES};

/// Fixed variable vocabulary available to every scoring expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Cpu,
    Io,
    Bw,
    Mem,
    Arrival,
    Exec,
    Wait,
    FreeCpu,
    FreeIo,
    FreeBw,
    FreeMem,
    CapCpu,
    CapIo,
    CapBw,
    CapMem,
    Now,
    Pending,
    MServers,
}

impl Var {
    pub const ALL: [Var; 18] = [
        Var::Cpu,
        Var::Io,
        Var::Bw,
        Var::Mem,
        Var::Arrival,
        Var::Exec,
        Var::Wait,
        Var::FreeCpu,
        Var::FreeIo,
        Var::FreeBw,
        Var::FreeMem,
        Var::CapCpu,
        Var::CapIo,
        Var::CapBw,
        Var::CapMem,
        Var::Now,
        Var::Pending,
        Var::MServers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::Cpu => "cpu",
            Var::Io => "io",
            Var::Bw => "bw",
            Var::Mem => "mem",
            Var::Arrival => "arrival",
            Var::Exec => "exec",
            Var::Wait => "wait",
            Var::FreeCpu => "free_cpu",
            Var::FreeIo => "free_io",
            Var::FreeBw => "free_bw",
            Var::FreeMem => "free_mem",
            Var::CapCpu => "cap_cpu",
            Var::CapIo => "cap_io",
            Var::CapBw => "cap_bw",
            Var::CapMem => "cap_mem",
            Var::Now => "now",
            Var::Pending => "pending",
            Var::MServers => "m_servers",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Var::Cpu => "task cpu demand",
            Var::Io => "task io demand",
            Var::Bw => "task bandwidth demand",
            Var::Mem => "task memory demand",
            Var::Arrival => "task arrival time",
            Var::Exec => "task execution time",
            Var::Wait => "time the task has waited so far (now - arrival)",
            Var::FreeCpu => "free cpu on the candidate server",
            Var::FreeIo => "free io on the candidate server",
            Var::FreeBw => "free bandwidth on the candidate server",
            Var::FreeMem => "free memory on the candidate server",
            Var::CapCpu => "cpu capacity of the candidate server",
            Var::CapIo => "io capacity of the candidate server",
            Var::CapBw => "bandwidth capacity of the candidate server",
            Var::CapMem => "memory capacity of the candidate server",
            Var::Now => "current simulation time",
            Var::Pending => "number of arrived, unscheduled tasks",
            Var::MServers => "number of servers",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryFn {
    Abs,
    Log,
    Exp,
    Sqrt,
}

impl UnaryFn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Abs => "abs",
            UnaryFn::Log => "log",
            UnaryFn::Exp => "exp",
            UnaryFn::Sqrt => "sqrt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Min,
    Max,
    Pow,
}

impl BinOp {
    pub fn is_commutative(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Mul | BinOp::Min | BinOp::Max)
    }

    fn infix(self) -> Option<(&'static str, u8)> {
        match self {
            BinOp::Add => Some(("+", 1)),
            BinOp::Sub => Some(("-", 1)),
            BinOp::Mul => Some(("*", 2)),
            BinOp::Div => Some(("/", 2)),
            _ => None,
        }
    }

    fn call_name(self) -> &'static str {
        match self {
            BinOp::Min => "min",
            BinOp::Max => "max",
            BinOp::Pow => "pow",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
        }
    }

    pub fn holds(self, a: f64, b: f64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Eq => a == b,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Unary(UnaryFn, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    If {
        cmp: CmpOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        then: Box<Expr>,
        otherwise: Box<Expr>,
    },
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Num(_) | Expr::Var(_) => vec![],
            Expr::Neg(a) | Expr::Unary(_, a) => vec![a],
            Expr::Binary(_, a, b) => vec![a, b],
            Expr::If { lhs, rhs, then, otherwise, .. } => vec![lhs, rhs, then, otherwise],
        }
    }

    /// Structural equality that treats numbers bitwise.
    pub fn same_structure(&self, other: &Expr) -> bool {
        structural_cmp(self, other) == Ordering::Equal
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.infix().map_or(4, |(_, p)| p),
            Expr::Neg(_) => 3,
            Expr::Num(v) if v.is_sign_negative() => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    /// Renders source text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(a) => match **a {
                // "-3" would read back as a negative literal
                Expr::Num(_) => write!(f, "-({a})"),
                _ if a.precedence() < 3 => write!(f, "-({a})"),
                _ => write!(f, "-{a}"),
            },
            Expr::Unary(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => match op.infix() {
                Some((sym, p)) => {
                    if a.precedence() < p {
                        write!(f, "({a})")?;
                    } else {
                        write!(f, "{a}")?;
                    }
                    write!(f, " {sym} ")?;
                    if b.precedence() <= p {
                        write!(f, "({b})")
                    } else {
                        write!(f, "{b}")
                    }
                }
                None => write!(f, "{}({a}, {b})", op.call_name()),
            },
            Expr::If { cmp, lhs, rhs, then, otherwise } => {
                write!(f, "if({lhs} {} {rhs}, {then}, {otherwise})", cmp.symbol())
            }
        }
    }
}

/// Multi-line reference of the grammar and vocabulary, embedded in prompts.
pub fn grammar_doc() -> String {
    let mut s = String::from(
        "Scoring expressions use this grammar:\n\
         expr    = term { (\"+\" | \"-\") term } ;\n\
         term    = unary { (\"*\" | \"/\") unary } ;\n\
         unary   = \"-\" unary | primary ;\n\
         primary = number | variable | call | \"(\" expr \")\" ;\n\
         call    = (abs | log | exp | sqrt) \"(\" expr \")\"\n\
         \x20       | (min | max | pow) \"(\" expr \",\" expr \")\"\n\
         \x20       | if \"(\" expr cmp expr \",\" expr \",\" expr \")\" ;\n\
         cmp     = \"<\" | \"<=\" | \">\" | \">=\" | \"==\" ;\n\
         Division by (near) zero, log of non-positive values and sqrt of negative values evaluate to 0.\n\
         Every intermediate value saturates at +/-1e12.\n",
    );
    s.push_str(&format!(
        "Expressions are limited to depth {MAX_DEPTH} and {MAX_NODES} nodes.\n"
    ));
    s
}

/// One line per variable: `name: meaning`.
pub fn vocabulary_doc() -> String {
    Var::ALL
        .iter()
        .map(|v| format!("- {}: {}", v.name(), v.describe()))
        .collect::<Vec<_>>()
        .join("\n")
}
