//! Translated parameter vectors and user-defined translation invariants.

pub mod ast;
mod parser;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

pub use ast::{BinOp, Expr, Func, Var, MAX_PARAM_INDEX};

use crate::error::{Error, Result};

/// Default relative tolerance of the invariance check.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default number of random samples in the invariance check.
pub const DEFAULT_TRIALS: usize = 64;
/// Shifts applied to every sample.
pub const SHIFTS: [i64; 3] = [1, 2, 3];

const SAMPLE_BOX: f64 = 5.0;
const DOMAIN_RETRIES: usize = 10;
const SEED: u64 = 0x5eed_1a7e_0f_11;

/// The parameters `m_1 … m_n`.
///
/// Stored as the original entries together with the accumulated integer
/// translation, so repeated translations compose exactly.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "Vec<f64>")]
pub struct ParamVector {
    base: Vec<f64>,
    shift: i64,
}

impl ParamVector {
    pub fn new(m: Vec<f64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidInput("parameter vector must have n >= 1 entries".into()));
        }
        if let Some(bad) = m.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("parameter entry {bad} is not finite")));
        }
        Ok(Self { base: m, shift: 0 })
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total translation applied since construction.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.base.get(i).map(|v| v - self.shift as f64)
    }

    pub fn values(&self) -> Vec<f64> {
        self.base.iter().map(|v| v - self.shift as f64).collect()
    }

    /// The invariant quantity `M = (1/n) Σ m_i`.
    pub fn mean(&self) -> f64 {
        self.base.iter().sum::<f64>() / self.base.len() as f64 - self.shift as f64
    }

    /// `m_i → m_i − t` for every entry.
    pub fn translate(&self, t: i64) -> Self {
        Self { base: self.base.clone(), shift: self.shift + t }
    }
}

impl TryFrom<Vec<f64>> for ParamVector {
    type Error = Error;
    fn try_from(m: Vec<f64>) -> Result<Self> {
        Self::new(m)
    }
}

impl Serialize for ParamVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values().serialize(s)
    }
}

/// A parsed invariant `I(m_1, …, m_n)`.
///
/// Only [`check_invariance`] can mark an expression as verified.
#[derive(Debug, Clone)]
pub struct InvariantExpr {
    source: String,
    ast: Expr,
    verified_for: Option<usize>,
}

impl PartialEq for InvariantExpr {
    fn eq(&self, other: &Self) -> bool {
        self.ast == other.ast
    }
}

impl Serialize for InvariantExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.fmt(f)
    }
}

pub fn parse_invariant(source: &str) -> Result<InvariantExpr> {
    Ok(InvariantExpr { source: source.to_string(), ast: parser::parse(source)?, verified_for: None })
}

impl InvariantExpr {
    pub fn parse(source: &str) -> Result<Self> {
        parse_invariant(source)
    }

    /// Parse and run [`check_invariance`] with the default settings for `n`
    /// parameters; a violation becomes [`Error::NotInvariant`].
    pub fn verified(source: &str, n: usize) -> Result<Self> {
        let e = parse_invariant(source)?;
        match check_invariance(&e, n, DEFAULT_TRIALS, DEFAULT_TOL)? {
            Invariance::Verified(v) => Ok(v),
            Invariance::Violation(r) => {
                Err(Error::NotInvariant { expr: r.expr, shift: r.shift, delta: r.delta })
            }
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn depth(&self) -> usize {
        self.ast.depth()
    }

    /// Largest referenced parameter index (one-based), 0 if none.
    pub fn max_index(&self) -> usize {
        self.ast.param_indices().last().map_or(0, |i| i + 1)
    }

    pub fn is_verified(&self) -> bool {
        self.verified_for.is_some()
    }

    /// Verified for vectors of exactly `n` parameters.
    pub fn is_verified_for(&self, n: usize) -> bool {
        self.verified_for == Some(n)
    }

    pub fn eval(&self, p: &ParamVector) -> Result<f64> {
        eval_invariant(self, p)
    }
}

pub fn eval_invariant(expr: &InvariantExpr, p: &ParamVector) -> Result<f64> {
    let need = expr.max_index();
    if need > p.len() {
        return Err(Error::ParameterIndex { index: need, len: p.len() });
    }
    let m = p.values();
    let v = eval_expr(&expr.ast, &m, p.mean())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("`{}` evaluates to {v}", expr.source)))
    }
}

fn eval_expr(e: &Expr, m: &[f64], mean: f64) -> Result<f64> {
    let v = match e {
        Expr::Num(v) => *v,
        Expr::Var(Var::Param(i)) => m[*i],
        Expr::Var(Var::Mean) => mean,
        Expr::Var(Var::Pi) => std::f64::consts::PI,
        Expr::Var(Var::E) => std::f64::consts::E,
        Expr::Neg(a) => -eval_expr(a, m, mean)?,
        Expr::Binary(op, a, b) => {
            let x = eval_expr(a, m, mean)?;
            let y = eval_expr(b, m, mean)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(Error::Domain("division by zero".into()));
                    }
                    x / y
                }
                BinOp::Pow => {
                    if x < 0.0 && y.fract() != 0.0 {
                        return Err(Error::Domain(format!(
                            "negative base {x} raised to non-integer power {y}"
                        )));
                    }
                    if x == 0.0 && y < 0.0 {
                        return Err(Error::Domain("zero raised to a negative power".into()));
                    }
                    x.powf(y)
                }
            }
        }
        Expr::Call(f, a) => {
            let x = eval_expr(a, m, mean)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan(),
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Exp => x.exp(),
                Func::Ln => {
                    if x <= 0.0 {
                        return Err(Error::Domain(format!("ln of non-positive value {x}")));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(Error::Domain(format!("sqrt of negative value {x}")));
                    }
                    x.sqrt()
                }
                Func::Abs => x.abs(),
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("non-finite intermediate value {v}")))
    }
}

/// First failing sample of an invariance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub expr: String,
    pub m: Vec<f64>,
    pub shift: i64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Invariance {
    Verified(InvariantExpr),
    Violation(ViolationReport),
}

impl Invariance {
    pub fn is_verified(&self) -> bool {
        matches!(self, Invariance::Verified(_))
    }
}

/// Sample `trials` vectors uniformly in `[-5, 5]^n` and compare `I(m − t)`
/// with `I(m)` for every `t ∈ {1, 2, 3}`.
pub fn check_invariance(expr: &InvariantExpr, n: usize, trials: usize, tol: f64) -> Result<Invariance> {
    if trials < 16 {
        return Err(Error::InvalidInput(format!("invariance check needs at least 16 trials, got {trials}")));
    }
    if !(1..=MAX_PARAM_INDEX).contains(&n) {
        return Err(Error::InvalidInput(format!("n must lie in 1..={MAX_PARAM_INDEX}, got {n}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    if expr.max_index() > n {
        return Err(Error::ParameterIndex { index: expr.max_index(), len: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..trials {
        let mut attempt = 0;
        loop {
            let m: Vec<f64> = (0..n).map(|_| rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX)).collect();
            let p = ParamVector::new(m)?;
            match sample(expr, &p, tol) {
                Ok(None) => break,
                Ok(Some(report)) => return Ok(Invariance::Violation(report)),
                Err(Error::Domain(msg)) => {
                    attempt += 1;
                    if attempt > DOMAIN_RETRIES {
                        return Err(Error::Domain(format!(
                            "`{}` failed to evaluate on {DOMAIN_RETRIES} redraws: {msg}",
                            expr.source
                        )));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut v = expr.clone();
    v.verified_for = Some(n);
    Ok(Invariance::Verified(v))
}

fn sample(expr: &InvariantExpr, p: &ParamVector, tol: f64) -> Result<Option<ViolationReport>> {
    let i0 = eval_invariant(expr, p)?;
    let shifted = SHIFTS
        .iter()
        .map(|&t| eval_invariant(expr, &p.translate(t)).map(|v| (t, v)))
        .collect::<Result<Vec<_>>>()?;
    for (t, it) in shifted {
        let delta = (it - i0).abs();
        if delta > tol * (1.0 + i0.abs()) {
            return Ok(Some(ViolationReport {
                expr: expr.source.clone(),
                m: p.values(),
                shift: t,
                delta,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PERIODIC: &str = "sin(2*pi*m1)^2 + cos(2*pi*m1) + 1";

    fn pv(m: &[f64]) -> ParamVector {
        ParamVector::new(m.to_vec()).unwrap()
    }

    #[test]
    fn periodic_example() {
        let e = parse_invariant(PERIODIC).unwrap();
        assert_eq!(e.depth(), 4);
        assert_eq!(e.ast().param_indices(), vec![0]);
        // sin²(0.4π) + cos(0.4π) + 1 written via the golden ratio:
        // cos(0.4π) = (√5 − 1)/4, sin² = 1 − cos²
        let c = (5f64.sqrt() - 1.0) / 4.0;
        let want = 1.0 - c * c + c + 1.0;
        assert!((want - 2.213525).abs() < 1e-6);
        assert!((e.eval(&pv(&[0.2])).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn trivial_evaluations() {
        let one = parse_invariant("1").unwrap();
        assert_eq!(one.eval(&pv(&[3.7, -1.0])).unwrap(), 1.0);
        assert_eq!(parse_invariant("M").unwrap().eval(&pv(&[1.0, 2.0, 3.0])).unwrap(), 2.0);
        assert_eq!(parse_invariant("(m2 - m1)/2").unwrap().eval(&pv(&[1.5, 2.5])).unwrap(), 0.5);
    }

    #[test]
    fn evaluation_errors() {
        let e = parse_invariant("m3").unwrap();
        assert_eq!(e.eval(&pv(&[1.0, 2.0])), Err(Error::ParameterIndex { index: 3, len: 2 }));
        for (bad, at) in [("ln(m1)", 0.0), ("sqrt(m1)", -1.0), ("1/m1", 0.0), ("m1^0.5", -1.0), ("m1^-1", 0.0)] {
            let e = parse_invariant(bad).unwrap();
            assert!(matches!(e.eval(&pv(&[at])), Err(Error::Domain(_))), "{bad}");
        }
        assert!(matches!(parse_invariant("1/(m1-m1)").unwrap().eval(&pv(&[2.0])), Err(Error::Domain(_))));
        assert!(matches!(parse_invariant("exp(exp(m1))").unwrap().eval(&pv(&[9.0])), Err(Error::Domain(_))));
    }

    #[test]
    fn invariance_verdicts() {
        let per = parse_invariant(PERIODIC).unwrap();
        let v = check_invariance(&per, 1, 16, DEFAULT_TOL).unwrap();
        let Invariance::Verified(v) = v else { panic!("periodic rejected") };
        assert!(v.is_verified_for(1) && !v.is_verified_for(2));

        let diff = parse_invariant("(m2-m1)/2").unwrap();
        assert!(check_invariance(&diff, 2, 16, DEFAULT_TOL).unwrap().is_verified());

        let m1 = parse_invariant("m1").unwrap();
        let Invariance::Violation(r) = check_invariance(&m1, 1, 16, DEFAULT_TOL).unwrap() else {
            panic!("m1 accepted")
        };
        assert_eq!(r.shift, 1);
        assert!((r.delta - 1.0).abs() < 1e-12);
        assert_eq!(r.m.len(), 1);
    }

    #[test]
    fn invariance_preconditions() {
        let e = parse_invariant("m2").unwrap();
        assert!(matches!(check_invariance(&e, 2, 15, 1e-9), Err(Error::InvalidInput(_))));
        assert!(matches!(check_invariance(&e, 1, 16, 1e-9), Err(Error::ParameterIndex { .. })));
        // undefined on most of the box: retries run out
        let e = parse_invariant("ln(m1 - 4.99)").unwrap();
        assert!(matches!(check_invariance(&e, 1, 16, 1e-9), Err(Error::Domain(_))));
        // defined on most of the box: redraws succeed
        let e = parse_invariant("ln(2 + sin(2*pi*m1))").unwrap();
        assert!(check_invariance(&e, 1, 32, 1e-9).unwrap().is_verified());
    }

    #[test]
    fn violation_report_json_shape() {
        let r = ViolationReport { expr: "m1".into(), m: vec![0.5], shift: 1, delta: 1.0 };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"expr":"m1","m":[0.5],"shift":1,"delta":1.0}"#
        );
    }

    #[test]
    fn verified_constructor() {
        assert!(InvariantExpr::verified("m2 - m1", 2).unwrap().is_verified_for(2));
        assert!(matches!(InvariantExpr::verified("M", 2), Err(Error::NotInvariant { shift: 1, .. })));
    }

    #[test]
    fn param_vector_basics() {
        assert!(ParamVector::new(vec![]).is_err());
        assert!(ParamVector::new(vec![f64::NAN]).is_err());
        let p = pv(&[1.0, 2.0, 4.5]);
        let q = p.translate(2);
        assert_eq!(q.values(), vec![-1.0, 0.0, 2.5]);
        assert_eq!(q.len(), 3);
        assert!((q.mean() - (p.mean() - 2.0)).abs() < 1e-15);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(Expr::Num),
            (0usize..9).prop_map(|i| Expr::Var(Var::Param(i))),
            Just(Expr::Var(Var::Mean)),
            Just(Expr::Var(Var::Pi)),
            Just(Expr::Var(Var::E)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            let op = prop_oneof![
                Just(BinOp::Add),
                Just(BinOp::Sub),
                Just(BinOp::Mul),
                Just(BinOp::Div),
                Just(BinOp::Pow)
            ];
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (op, inner.clone(), inner.clone())
                    .prop_map(|(o, a, b)| Expr::Binary(o, Box::new(a), Box::new(b))),
                (0usize..Func::ALL.len(), inner)
                    .prop_map(|(f, a)| Expr::Call(Func::ALL[f], Box::new(a))),
            ]
        })
    }

    fn arb_diff_expr() -> impl Strategy<Value = String> {
        let diff = (1usize..=3, 1usize..=3).prop_map(|(i, j)| format!("(m{i} - m{j})"));
        diff.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
                inner.clone().prop_map(|a| format!("sin({a})")),
                inner.clone().prop_map(|a| format!("cos({a})^2")),
                inner.prop_map(|a| format!("-tanh({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parser::parse(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e, "printed as {}", printed);
        }

        #[test]
        fn difference_expressions_are_verified(src in arb_diff_expr()) {
            let e = parse_invariant(&src).unwrap();
            prop_assert!(check_invariance(&e, 3, 16, DEFAULT_TOL).unwrap().is_verified());
        }

        #[test]
        fn translation_composes_exactly(
            m in proptest::collection::vec(-1e3f64..1e3, 1..9),
            t1 in -50i64..50,
            t2 in -50i64..50,
        ) {
            let p = ParamVector::new(m).unwrap();
            prop_assert_eq!(p.translate(t1).translate(t2), p.translate(t1 + t2));
            prop_assert_eq!(p.translate(t1).len(), p.len());
        }
    }
}
