//! Expression trees for univariate real functions of `x`.
//!
//! This module supplies the coefficient functions `a`, `f` and their symbolic
//! derivatives to the rest of the crate. Expressions are immutable trees;
//! evaluation, differentiation and simplification are pure functions.

mod parser;

pub use parser::{parse, ParseError};

use std::fmt;

/// Unary function nodes supported by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree over the single variable `x`.
///
/// `Negate(Constant(c))` is normalized to `Constant(-c)` at construction
/// (see [`Expr::neg`]), which keeps printing and re-parsing structurally
/// stable.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable,
    Negate(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Subtract(Box<Expr>, Box<Expr>),
    Multiply(Box<Expr>, Box<Expr>),
    Divide(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, Box<Expr>),
    Func(Func, Box<Expr>),
}

/// Domain violation found while evaluating an expression.
///
/// Evaluation never panics: `ln` of a non-positive value, division by zero,
/// `0^negative`, a negative base raised to a non-integer power and `sqrt` of
/// a negative value are reported through this type. Plain IEEE overflow
/// (e.g. `exp(1e4)`) propagates as infinity instead.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    /// Evaluation point that triggered the error.
    pub at: f64,
    pub kind: EvalErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalErrorKind {
    LogNonPositive { argument: f64 },
    DivisionByZero,
    SqrtNegative { argument: f64 },
    PowerDomain { base: f64, exponent: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EvalErrorKind::LogNonPositive { argument } => {
                write!(out, "ln of non-positive value {} at x = {}", argument, self.at)
            }
            EvalErrorKind::DivisionByZero => write!(out, "division by zero at x = {}", self.at),
            EvalErrorKind::SqrtNegative { argument } => {
                write!(out, "sqrt of negative value {} at x = {}", argument, self.at)
            }
            EvalErrorKind::PowerDomain { base, exponent } => write!(
                out,
                "{}^{} is undefined over the reals at x = {}",
                base, exponent, self.at
            ),
        }
    }
}

impl std::error::Error for EvalError {}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Constant(c)
    }

    pub fn variable() -> Expr {
        Expr::Variable
    }

    /// Negation; folds a constant operand so that `Negate(Constant)` never
    /// appears in a tree.
    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Constant(c) => Expr::Constant(-c),
            other => Expr::Negate(Box::new(other)),
        }
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Expr, r: Expr) -> Expr {
        Expr::Subtract(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::Multiply(Box::new(l), Box::new(r))
    }

    pub fn div(l: Expr, r: Expr) -> Expr {
        Expr::Divide(Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::Power(Box::new(base), Box::new(exponent))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Expr::Func(f, Box::new(arg))
    }

    /// Evaluates the expression at `x`.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let err = |kind| Err(EvalError { at: x, kind });
        match self {
            Expr::Constant(c) => Ok(*c),
            Expr::Variable => Ok(x),
            Expr::Negate(e) => Ok(-e.eval(x)?),
            Expr::Add(l, r) => Ok(l.eval(x)? + r.eval(x)?),
            Expr::Subtract(l, r) => Ok(l.eval(x)? - r.eval(x)?),
            Expr::Multiply(l, r) => Ok(l.eval(x)? * r.eval(x)?),
            Expr::Divide(l, r) => {
                let num = l.eval(x)?;
                let den = r.eval(x)?;
                if den == 0.0 {
                    return err(EvalErrorKind::DivisionByZero);
                }
                Ok(num / den)
            }
            Expr::Power(b, e) => {
                let base = b.eval(x)?;
                let exponent = e.eval(x)?;
                eval_power(base, exponent, x)
            }
            Expr::Func(f, a) => {
                let v = a.eval(x)?;
                match f {
                    Func::Exp => Ok(v.exp()),
                    Func::Ln => {
                        if v <= 0.0 {
                            err(EvalErrorKind::LogNonPositive { argument: v })
                        } else {
                            Ok(v.ln())
                        }
                    }
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Sinh => Ok(v.sinh()),
                    Func::Cosh => Ok(v.cosh()),
                    Func::Sqrt => {
                        if v < 0.0 {
                            err(EvalErrorKind::SqrtNegative { argument: v })
                        } else {
                            Ok(v.sqrt())
                        }
                    }
                }
            }
        }
    }

    /// First symbolic derivative with respect to `x` (unsimplified).
    fn diff(&self) -> Expr {
        use Expr::*;
        match self {
            Constant(_) => Constant(0.0),
            Variable => Constant(1.0),
            Negate(e) => Expr::neg(e.diff()),
            Add(l, r) => Expr::add(l.diff(), r.diff()),
            Subtract(l, r) => Expr::sub(l.diff(), r.diff()),
            Multiply(l, r) => Expr::add(
                Expr::mul(l.diff(), (**r).clone()),
                Expr::mul((**l).clone(), r.diff()),
            ),
            Divide(l, r) => Expr::div(
                Expr::sub(
                    Expr::mul(l.diff(), (**r).clone()),
                    Expr::mul((**l).clone(), r.diff()),
                ),
                Expr::pow((**r).clone(), Constant(2.0)),
            ),
            Power(base, exponent) => match &**exponent {
                // power rule for a constant exponent keeps higher derivatives exact
                Constant(c) => Expr::mul(
                    Expr::mul(Constant(*c), Expr::pow((**base).clone(), Constant(c - 1.0))),
                    base.diff(),
                ),
                _ => {
                    // general case via b^e = exp(e ln b)
                    let b = (**base).clone();
                    let e = (**exponent).clone();
                    Expr::mul(
                        Expr::pow(b.clone(), e.clone()),
                        Expr::add(
                            Expr::mul(exponent.diff(), Expr::func(self::Func::Ln, b.clone())),
                            Expr::div(Expr::mul(e, base.diff()), b),
                        ),
                    )
                }
            },
            Func(f, a) => {
                let inner = a.diff();
                let outer = match f {
                    self::Func::Exp => Expr::func(self::Func::Exp, (**a).clone()),
                    self::Func::Ln => {
                        return Expr::div(inner, (**a).clone());
                    }
                    self::Func::Sin => Expr::func(self::Func::Cos, (**a).clone()),
                    self::Func::Cos => {
                        return Expr::neg(Expr::mul(
                            Expr::func(self::Func::Sin, (**a).clone()),
                            inner,
                        ));
                    }
                    self::Func::Sinh => Expr::func(self::Func::Cosh, (**a).clone()),
                    self::Func::Cosh => Expr::func(self::Func::Sinh, (**a).clone()),
                    self::Func::Sqrt => {
                        return Expr::div(
                            inner,
                            Expr::mul(
                                Constant(2.0),
                                Expr::func(self::Func::Sqrt, (**a).clone()),
                            ),
                        );
                    }
                };
                Expr::mul(outer, inner)
            }
        }
    }

    /// `order`-th symbolic derivative, simplified after each pass.
    ///
    /// `order` must be 1, 2 or 3; higher orders are not needed anywhere in
    /// the crate and are rejected to keep tree growth bounded.
    pub fn derivative(&self, order: u32) -> Expr {
        assert!(
            (1..=3).contains(&order),
            "derivative order must be 1, 2 or 3 (got {order})"
        );
        let mut e = self.clone();
        for _ in 0..order {
            e = e.diff().simplified();
        }
        e
    }

    /// Constant folding plus the elementary identities
    /// `0+e`, `e+0`, `e-0`, `0-e`, `0*e`, `e*0`, `1*e`, `e*1`, `0/e`, `e/1`,
    /// `e^1` and `e^0` (the literal `0^0` node is left untouched).
    pub fn simplified(&self) -> Expr {
        use Expr::*;
        let folded = |e: &Expr| -> Option<f64> {
            match e {
                Constant(c) => Some(*c),
                _ => None,
            }
        };
        match self {
            Constant(_) | Variable => self.clone(),
            Negate(e) => match e.simplified() {
                Constant(c) => Constant(-c),
                Negate(inner) => *inner,
                other => Expr::neg(other),
            },
            Add(l, r) => {
                let (l, r) = (l.simplified(), r.simplified());
                match (folded(&l), folded(&r)) {
                    (Some(a), Some(b)) => Constant(a + b),
                    (Some(a), None) if a == 0.0 => r,
                    (None, Some(b)) if b == 0.0 => l,
                    _ => Expr::add(l, r),
                }
            }
            Subtract(l, r) => {
                let (l, r) = (l.simplified(), r.simplified());
                match (folded(&l), folded(&r)) {
                    (Some(a), Some(b)) => Constant(a - b),
                    (Some(a), None) if a == 0.0 => Expr::neg(r),
                    (None, Some(b)) if b == 0.0 => l,
                    _ => Expr::sub(l, r),
                }
            }
            Multiply(l, r) => {
                let (l, r) = (l.simplified(), r.simplified());
                match (folded(&l), folded(&r)) {
                    (Some(a), Some(b)) => Constant(a * b),
                    (Some(a), _) if a == 0.0 => Constant(0.0),
                    (_, Some(b)) if b == 0.0 => Constant(0.0),
                    (Some(a), _) if a == 1.0 => r,
                    (_, Some(b)) if b == 1.0 => l,
                    _ => Expr::mul(l, r),
                }
            }
            Divide(l, r) => {
                let (l, r) = (l.simplified(), r.simplified());
                match (folded(&l), folded(&r)) {
                    (Some(a), Some(b)) if b != 0.0 => Constant(a / b),
                    (Some(a), None) if a == 0.0 => Constant(0.0),
                    (_, Some(b)) if b == 1.0 => l,
                    _ => Expr::div(l, r),
                }
            }
            Power(b, e) => {
                let (b, e) = (b.simplified(), e.simplified());
                match (folded(&b), folded(&e)) {
                    // leave 0^0 as written
                    (Some(base), Some(0.0)) if base == 0.0 => Expr::pow(b, e),
                    (_, Some(0.0)) => Constant(1.0),
                    (_, Some(1.0)) => b,
                    (Some(base), Some(exp)) => match eval_power(base, exp, f64::NAN) {
                        Ok(v) if v.is_finite() => Constant(v),
                        _ => Expr::pow(b, e),
                    },
                    _ => Expr::pow(b, e),
                }
            }
            Func(f, a) => {
                let a = a.simplified();
                if let Constant(c) = a {
                    let probe = Expr::func(*f, Constant(c));
                    if let Ok(v) = probe.eval(0.0) {
                        if v.is_finite() {
                            return Constant(v);
                        }
                    }
                    return probe;
                }
                Expr::func(*f, a)
            }
        }
    }

    /// Depth of the tree; used by tests and as a cheap size diagnostic.
    pub fn depth(&self) -> usize {
        use Expr::*;
        match self {
            Constant(_) | Variable => 1,
            Negate(e) | Func(_, e) => 1 + e.depth(),
            Add(l, r) | Subtract(l, r) | Multiply(l, r) | Divide(l, r) | Power(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }
}

/// Real power with the domain rules used throughout the crate: a negative
/// base is only allowed with an integer exponent (computed with the usual
/// sign rules), `0^negative` is a domain error, and a non-integer exponent
/// requires a positive base.
fn eval_power(base: f64, exponent: f64, at: f64) -> Result<f64, EvalError> {
    let domain_err = || {
        Err(EvalError {
            at,
            kind: EvalErrorKind::PowerDomain { base, exponent },
        })
    };
    if base == 0.0 && exponent < 0.0 {
        return domain_err();
    }
    if base < 0.0 && exponent.fract() != 0.0 {
        return domain_err();
    }
    // IEEE pow handles integral exponents of negative bases with correct signs.
    Ok(base.powf(exponent))
}

/// Free-function form of [`Expr::derivative`].
pub fn differentiate(e: &Expr, order: u32) -> Expr {
    e.derivative(order)
}

/// Free-function form of [`Expr::simplified`].
pub fn simplify(e: &Expr) -> Expr {
    e.simplified()
}

// Printing. Parenthesization is chosen so that `parse(e.to_string())`
// rebuilds the same tree: `^` is right-associative, unary minus binds
// between `*` and `^`, and negative constants print like a unary minus.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Subtract(..) => 1,
        Expr::Multiply(..) | Expr::Divide(..) => 2,
        Expr::Negate(_) => 3,
        Expr::Constant(c) if *c < 0.0 => 3,
        Expr::Power(..) => 4,
        _ => 5,
    }
}

fn write_child(out: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(out, "({e})")
    } else {
        write!(out, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write!(out, "{c}"),
            Expr::Variable => write!(out, "x"),
            Expr::Negate(e) => {
                write!(out, "-")?;
                write_child(out, e, 3)
            }
            Expr::Add(l, r) => {
                write_child(out, l, 1)?;
                write!(out, " + ")?;
                write_child(out, r, 2)
            }
            Expr::Subtract(l, r) => {
                write_child(out, l, 1)?;
                write!(out, " - ")?;
                write_child(out, r, 2)
            }
            Expr::Multiply(l, r) => {
                write_child(out, l, 2)?;
                write!(out, " * ")?;
                write_child(out, r, 3)
            }
            Expr::Divide(l, r) => {
                write_child(out, l, 2)?;
                write!(out, " / ")?;
                write_child(out, r, 3)
            }
            Expr::Power(b, e) => {
                write_child(out, b, 5)?;
                write!(out, "^")?;
                write_child(out, e, 3)
            }
            Expr::Func(f, a) => write!(out, "{}({})", f.name(), a),
        }
    }
}
