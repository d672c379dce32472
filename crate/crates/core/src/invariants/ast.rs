use std::fmt;

/// Highest parameter index an expression may reference (`m1` … `m9`).
pub const MAX_PARAM_INDEX: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// `m1` … `m9`, stored zero-based.
    Param(usize),
    /// Arithmetic mean of all parameters.
    Mean,
    Pi,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn is_additive(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Sub)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Operator nesting depth. Leaves count 0 and a chain of `+`/`−` (or of
    /// `*`/`/`) counts as a single level.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var(_) => 0,
            Expr::Neg(e) | Expr::Call(_, e) => 1 + e.depth(),
            Expr::Binary(BinOp::Pow, l, r) => 1 + l.depth().max(r.depth()),
            Expr::Binary(op, ..) => {
                let mut operands = Vec::new();
                self.flatten(op.is_additive(), &mut operands);
                1 + operands.iter().map(|e| e.depth()).max().unwrap_or(0)
            }
        }
    }

    fn flatten<'a>(&'a self, additive: bool, out: &mut Vec<&'a Expr>) {
        match self {
            Expr::Binary(op, l, r) if *op != BinOp::Pow && op.is_additive() == additive => {
                l.flatten(additive, out);
                r.flatten(additive, out);
            }
            e => out.push(e),
        }
    }

    /// Zero-based indices of every `m_i` referenced, ascending.
    pub fn param_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Var(Var::Param(i)) => out.push(*i),
            Expr::Num(_) | Expr::Var(_) => {}
            Expr::Neg(e) | Expr::Call(_, e) => e.collect_params(out),
            Expr::Binary(_, l, r) => {
                l.collect_params(out);
                r.collect_params(out);
            }
        }
    }

    pub fn uses_mean(&self) -> bool {
        match self {
            Expr::Var(Var::Mean) => true,
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.uses_mean(),
            Expr::Binary(_, l, r) => l.uses_mean() || r.uses_mean(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Binary(BinOp::Pow, ..) => 4,
            Expr::Num(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let parens = self.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{v:?}")?,
            Expr::Var(Var::Param(i)) => write!(f, "m{}", i + 1)?,
            Expr::Var(Var::Mean) => f.write_str("M")?,
            Expr::Var(Var::Pi) => f.write_str("pi")?,
            Expr::Var(Var::E) => f.write_str("e")?,
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_with(f, 3)?;
            }
            Expr::Call(func, e) => {
                write!(f, "{}(", func.name())?;
                e.write_with(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Binary(op, l, r) => {
                let (sym, lp, rp) = match op {
                    BinOp::Add => (" + ", 1, 2),
                    BinOp::Sub => (" - ", 1, 2),
                    BinOp::Mul => ("*", 2, 3),
                    BinOp::Div => ("/", 2, 3),
                    // base must be atomic; the exponent may carry a unary minus
                    BinOp::Pow => ("^", 5, 3),
                };
                l.write_with(f, lp)?;
                f.write_str(sym)?;
                r.write_with(f, rp)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, 0)
    }
}
