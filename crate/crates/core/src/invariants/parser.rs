//! Recursive-descent parser for invariant expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | ident | func '(' expr ')' | '(' expr ')'
//! ```

use super::ast::{BinOp, Expr, Func, Var, MAX_PARAM_INDEX};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let start = lx.pos;
            let Some(&c) = lx.src.get(lx.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' | b'.' => {
                    out.push((lx.number()?, start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    out.push((lx.ident(), start));
                    continue;
                }
                _ => {
                    return Err(Error::Syntax {
                        offset: start,
                        message: format!("unexpected character `{}`", char::from(c)),
                    })
                }
            };
            lx.pos += 1;
            out.push((tok, start));
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<Tok> {
        let start = self.pos;
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax { offset: start, message: "malformed number".into() });
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            // only an exponent if digits follow; otherwise `e` is the constant
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v: f64 = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })?;
        if !v.is_finite() {
            return Err(Error::Syntax { offset: start, message: format!("number `{text}` overflows") });
        }
        Ok(Tok::Num(v))
    }

    fn ident(&mut self) -> Tok {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            t => format!("`{}`", tok_symbol(t)),
        };
        Error::Syntax { offset: self.offset(), message: format!("expected {what}, found {found}") }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let offset = self.offset();
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
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name)
                        .ok_or(Error::UnknownFunction { name, offset })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                if Func::from_name(&name).is_some() {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("function `{name}` must be followed by `(`"),
                    });
                }
                resolve_var(&name)
                    .map(Expr::Var)
                    .ok_or(Error::UnknownIdentifier { name, offset })
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

fn tok_symbol(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        _ => "?",
    }
}

fn resolve_var(name: &str) -> Option<Var> {
    match name {
        "M" => Some(Var::Mean),
        "pi" => Some(Var::Pi),
        "e" => Some(Var::E),
        _ => {
            let digits = name.strip_prefix('m')?;
            if digits.len() != 1 {
                return None;
            }
            let i: usize = digits.parse().ok()?;
            (1..=MAX_PARAM_INDEX).contains(&i).then(|| Var::Param(i - 1))
        }
    }
}

pub fn parse(source: &str) -> Result<Expr> {
    if source.trim().is_empty() {
        return Err(Error::Syntax { offset: 0, message: "empty expression".into() });
    }
    let toks = Lexer::tokenize(source)?;
    let mut p = Parser { toks, i: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(v: f64) -> Box<Expr> {
        Box::new(Expr::Num(v))
    }

    fn m(i: usize) -> Box<Expr> {
        Box::new(Expr::Var(Var::Param(i - 1)))
    }

    #[test]
    fn precedence_and_associativity() {
        // -a^b is -(a^b)
        assert_eq!(
            parse("-m1^2").unwrap(),
            Expr::Neg(Box::new(Expr::Binary(BinOp::Pow, m(1), num(2.0))))
        );
        // right-associative power
        assert_eq!(
            parse("2^3^m1").unwrap(),
            Expr::Binary(
                BinOp::Pow,
                num(2.0),
                Box::new(Expr::Binary(BinOp::Pow, num(3.0), m(1)))
            )
        );
        // left-associative subtraction and division
        assert_eq!(
            parse("1-2-3").unwrap(),
            Expr::Binary(
                BinOp::Sub,
                Box::new(Expr::Binary(BinOp::Sub, num(1.0), num(2.0))),
                num(3.0)
            )
        );
        assert_eq!(
            parse("m1/m2*m3").unwrap(),
            Expr::Binary(BinOp::Mul, Box::new(Expr::Binary(BinOp::Div, m(1), m(2))), m(3))
        );
        // exponent may carry a sign
        assert_eq!(
            parse("m1^-2").unwrap(),
            Expr::Binary(BinOp::Pow, m(1), Box::new(Expr::Neg(num(2.0))))
        );
    }

    #[test]
    fn numbers_and_constants() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Num(1.5e-3));
        assert_eq!(parse(".5").unwrap(), Expr::Num(0.5));
        // `2e` is 2 times nothing: the trailing `e` is the constant and a syntax error follows
        assert!(matches!(parse("2e"), Err(Error::Syntax { offset: 1, .. })));
        assert_eq!(
            parse("2*e").unwrap(),
            Expr::Binary(BinOp::Mul, num(2.0), Box::new(Expr::Var(Var::E)))
        );
        assert!(matches!(parse("1e999"), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse("m1 + m10"),
            Err(Error::UnknownIdentifier { name: "m10".into(), offset: 5 })
        );
        assert_eq!(
            parse("foo(m1)"),
            Err(Error::UnknownFunction { name: "foo".into(), offset: 0 })
        );
        assert!(matches!(parse("(m1 + 2"), Err(Error::Syntax { offset: 7, .. })));
        assert!(matches!(parse("m1 $ 2"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("sin m1"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("   "), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("m1 m2"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("m0"), Err(Error::UnknownIdentifier { .. })));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" ( m2-m1 ) /2 ").unwrap(), parse("(m2 - m1)/2").unwrap());
    }
}
