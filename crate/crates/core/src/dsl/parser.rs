use std::fmt;

use thiserror::Error;

use super::{BinOp, CmpOp, Expr, UnaryFn, Var};

pub const MAX_DEPTH: usize = 64;
pub const MAX_NODES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    Arity,
    TooDeep,
    TooLarge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownIdentifier => "unknown identifier",
            ParseErrorKind::Arity => "arity mismatch",
            ParseErrorKind::TooDeep => "expression too deep",
            ParseErrorKind::TooLarge => "expression too large",
        })
    }
}

/// `offset` is a byte offset into the source text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, offset: usize, message: impl Into<String>) -> Self {
        Self { kind, offset, message: message.into() }
    }

    /// 1-based `(line, column)` of the error within `source`.
    pub fn line_col(&self, source: &str) -> (usize, usize) {
        let upto = &source[..self.offset.min(source.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Cmp(CmpOp),
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Cmp(c) => format!("`{}`", c.symbol()),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b',' => out.push((Tok::Comma, start)),
            b'<' | b'>' | b'=' => {
                let eq = bytes.get(i + 1) == Some(&b'=');
                let op = match (c, eq) {
                    (b'<', true) => CmpOp::Le,
                    (b'<', false) => CmpOp::Lt,
                    (b'>', true) => CmpOp::Ge,
                    (b'>', false) => CmpOp::Gt,
                    (b'=', true) => CmpOp::Eq,
                    _ => {
                        return Err(ParseError::new(
                            ParseErrorKind::Syntax,
                            start,
                            "expected `==`",
                        ))
                    }
                };
                if eq {
                    i += 1;
                }
                out.push((Tok::Cmp(op), start));
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| {
                    ParseError::new(ParseErrorKind::Syntax, start, format!("malformed number `{text}`"))
                })?;
                if !v.is_finite() {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        start,
                        format!("number `{text}` is out of range"),
                    ));
                }
                out.push((Tok::Num(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    start,
                    format!("unexpected character `{ch}`"),
                ));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, ParseError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::Syntax,
            self.offset(),
            format!("expected {what}, found {}", describe(self.peek())),
        )
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_DEPTH {
            return Err(ParseError::new(
                ParseErrorKind::TooDeep,
                self.offset(),
                format!("nesting exceeds {MAX_DEPTH}"),
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
        self.nesting -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let (_, at) = self.bump();
            // `-` glued to a number literal is a negative literal
            if let (Tok::Num(v), next_at) = &self.toks[self.pos] {
                if *next_at == at + 1 {
                    let v = -*v;
                    self.bump();
                    return Ok(Expr::Num(v));
                }
            }
            self.enter()?;
            let inner = self.unary()?;
            self.nesting -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(v) = Var::from_name(&name) {
                    return Ok(Expr::Var(v));
                }
                let is_call = *self.peek() == Tok::LParen;
                match name.as_str() {
                    "abs" | "log" | "exp" | "sqrt" | "min" | "max" | "pow" | "if" => {
                        if !is_call {
                            return Err(self.unexpected(&format!("`(` after `{name}`")));
                        }
                        self.call(&name, at)
                    }
                    _ => Err(ParseError::new(
                        ParseErrorKind::UnknownIdentifier,
                        at,
                        format!("`{name}` is not a known variable or function"),
                    )),
                }
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn call(&mut self, name: &str, at: usize) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut cond = None;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                let e = self.expr()?;
                if name == "if" && args.is_empty() && cond.is_none() {
                    match self.peek().clone() {
                        Tok::Cmp(op) => {
                            self.bump();
                            let rhs = self.expr()?;
                            cond = Some((op, e, rhs));
                        }
                        _ => return Err(self.unexpected("a comparison operator")),
                    }
                } else {
                    args.push(e);
                }
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`,` or `)`")?;

        let given = args.len() + usize::from(cond.is_some());
        let want = match name {
            "abs" | "log" | "exp" | "sqrt" => 1,
            "if" => 3,
            _ => 2,
        };
        if given != want {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                at,
                format!("`{name}` takes {want} argument(s), got {given}"),
            ));
        }
        let mut args = args.into_iter();
        let mut next = || Box::new(args.next().expect("arity checked"));
        Ok(match name {
            "abs" => Expr::Unary(UnaryFn::Abs, next()),
            "log" => Expr::Unary(UnaryFn::Log, next()),
            "exp" => Expr::Unary(UnaryFn::Exp, next()),
            "sqrt" => Expr::Unary(UnaryFn::Sqrt, next()),
            "min" => Expr::Binary(BinOp::Min, next(), next()),
            "max" => Expr::Binary(BinOp::Max, next(), next()),
            "pow" => Expr::Binary(BinOp::Pow, next(), next()),
            _ => {
                let (cmp, lhs, rhs) = cond.expect("arity checked");
                Expr::If {
                    cmp,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                    then: next(),
                    otherwise: next(),
                }
            }
        })
    }
}

/// Parses scoring source text into a bounded expression tree.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0, nesting: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    let depth = e.depth();
    if depth > MAX_DEPTH {
        return Err(ParseError::new(
            ParseErrorKind::TooDeep,
            0,
            format!("tree depth {depth} exceeds {MAX_DEPTH}"),
        ));
    }
    let nodes = e.node_count();
    if nodes > MAX_NODES {
        return Err(ParseError::new(
            ParseErrorKind::TooLarge,
            0,
            format!("{nodes} nodes exceed {MAX_NODES}"),
        ));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Expr {
        Expr::Var(x)
    }

    #[test]
    fn precedence_and_calls() {
        let e = parse("cpu * 2 + max(io, mem)").unwrap();
        let want = Expr::bin(
            BinOp::Add,
            Expr::bin(BinOp::Mul, v(Var::Cpu), Expr::Num(2.0)),
            Expr::bin(BinOp::Max, v(Var::Io), v(Var::Mem)),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn unary_minus_binds_tightest() {
        let e = parse("-cpu * mem").unwrap();
        assert_eq!(
            e,
            Expr::bin(BinOp::Mul, Expr::Neg(Box::new(v(Var::Cpu))), v(Var::Mem))
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("cpu*2+max(io,mem)").unwrap(), parse(" cpu *\n2 +\tmax( io , mem ) ").unwrap());
    }

    #[test]
    fn left_associative() {
        let e = parse("cpu - mem - io").unwrap();
        assert_eq!(
            e,
            Expr::bin(BinOp::Sub, Expr::bin(BinOp::Sub, v(Var::Cpu), v(Var::Mem)), v(Var::Io))
        );
    }

    #[test]
    fn unknown_identifier_reports_offset() {
        let err = parse("foo + 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier);
        assert_eq!(err.offset, 0);
        let err = parse("cpu + bar(1)").unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::UnknownIdentifier, 6));
    }

    #[test]
    fn arity_mismatch() {
        let err = parse("min(cpu)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity);
        assert_eq!(parse("sqrt(cpu, io)").unwrap_err().kind, ParseErrorKind::Arity);
        assert_eq!(parse("if(cpu < 1, 2)").unwrap_err().kind, ParseErrorKind::Arity);
        assert_eq!(parse("max()").unwrap_err().kind, ParseErrorKind::Arity);
    }

    #[test]
    fn conditional() {
        let e = parse("if(wait >= 10, exec, -exec)").unwrap();
        assert!(matches!(e, Expr::If { cmp: CmpOp::Ge, .. }));
        assert_eq!(parse("if(wait, 1, 2)").unwrap_err().kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn syntax_errors_point_into_source() {
        for src in ["", "cpu +", "(cpu", "cpu mem", "cpu $ 2", "1e999", "cpu = 2", "min"] {
            let err = parse(src).unwrap_err();
            assert!(err.offset <= src.len(), "{src:?} -> {err}");
        }
        let err = parse("cpu +\n  )").unwrap_err();
        assert_eq!(err.line_col("cpu +\n  )"), (2, 3));
    }

    #[test]
    fn depth_and_size_bounds() {
        let deep = format!("{}cpu{}", "(".repeat(200), ")".repeat(200));
        assert_eq!(parse(&deep).unwrap_err().kind, ParseErrorKind::TooDeep);
        let chain = vec!["cpu"; 100].join(" + ");
        assert_eq!(parse(&chain).unwrap_err().kind, ParseErrorKind::TooDeep);
        // balanced tree of depth 13 has 8191 nodes
        fn balanced(d: usize) -> String {
            if d == 0 {
                "cpu".into()
            } else {
                format!("max({}, {})", balanced(d - 1), balanced(d - 1))
            }
        }
        assert_eq!(parse(&balanced(12)).unwrap_err().kind, ParseErrorKind::TooLarge);
        assert!(parse(&balanced(10)).is_ok());
    }

    #[test]
    fn negative_literal_needs_adjacency() {
        assert_eq!(parse("-2").unwrap(), Expr::Num(-2.0));
        assert_eq!(parse("- 2").unwrap(), Expr::Neg(Box::new(Expr::Num(2.0))));
        assert_eq!(parse("cpu-2").unwrap(), Expr::bin(BinOp::Sub, v(Var::Cpu), Expr::Num(2.0)));
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Num(1.5e-3));
    }
}
