//! The substitution machinery connecting `dz/dx + a z^2 = f` to the linear
//! system `q'' = F(x) q`, `p = q'`.
//!
//! `y = a z - a'/(2a)` maps solutions of the nonlinear equation to solutions
//! of `y' + y^2 = F` with `F = a f - a''/(2a) + 3 a'^2/(4 a^2)`; `y = p/q`
//! with `q'' = F q` then linearizes it. Reconstruction inverts both steps:
//! `z = p/(a q) + a'/(2 a^2)`.

use crate::expr::{EvalError, Expr};
use std::fmt;

/// The pair `(a, f)` with cached symbolic derivatives `a'`, `a''`, `a'''`
/// and `f'`.
#[derive(Debug, Clone)]
pub struct RiccatiProblem {
    a: Expr,
    f: Expr,
    a1: Expr,
    a2: Expr,
    a3: Expr,
    f1: Expr,
}

/// Number of interior sample points used by the "identically zero" and
/// "zero inside the interval" scans. Expression-level zero detection is
/// undecidable in general; sampling is the documented contract.
pub const ZERO_SCAN_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    /// `a(x) = 0` at a point where the substitution divides by `a`.
    AZero { x: f64 },
    /// The first-derivative coefficient of the p-equation is singular:
    /// `D(x) = 4a^3 f - 2a a'' + 3a'^2 = 0`.
    SingularCoefficient { x: f64 },
    /// A coefficient expression hit a domain error.
    Eval(EvalError),
}

impl fmt::Display for TransformError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::AZero { x } => write!(out, "a(x) = 0 at x = {x}"),
            TransformError::SingularCoefficient { x } => {
                write!(out, "singular p-equation coefficient (D = 0) at x = {x}")
            }
            TransformError::Eval(e) => write!(out, "{e}"),
        }
    }
}

impl std::error::Error for TransformError {}

impl From<EvalError> for TransformError {
    fn from(e: EvalError) -> Self {
        TransformError::Eval(e)
    }
}

impl RiccatiProblem {
    /// Builds the problem and its cached symbolic derivatives.
    pub fn new(a: Expr, f: Expr) -> Self {
        let a1 = a.derivative(1);
        let a2 = a1.derivative(1);
        let a3 = a2.derivative(1);
        let f1 = f.derivative(1);
        RiccatiProblem { a, f, a1, a2, a3, f1 }
    }

    pub fn a(&self) -> &Expr {
        &self.a
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn a_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.a.eval(x)?)
    }

    pub fn f_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.f.eval(x)?)
    }

    pub fn a1_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.a1.eval(x)?)
    }

    pub fn a2_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.a2.eval(x)?)
    }

    pub fn a3_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.a3.eval(x)?)
    }

    pub fn f1_at(&self, x: f64) -> Result<f64, TransformError> {
        Ok(self.f1.eval(x)?)
    }

    /// Right-hand side of the direct equation: `z' = f(x) - a(x) z^2`.
    pub fn direct_rhs(&self, x: f64, z: f64) -> Result<f64, TransformError> {
        Ok(self.f.eval(x)? - self.a.eval(x)? * z * z)
    }

    /// True when every scan sample of `g` on `[x0, x1]` is zero (or fails to
    /// evaluate). Checks `ZERO_SCAN_POINTS` interior points plus both
    /// endpoints.
    fn identically_zero_on(g: &Expr, x0: f64, x1: f64) -> bool {
        for x in scan_points(x0, x1) {
            if let Ok(v) = g.eval(x) {
                if v != 0.0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn a_identically_zero_on(&self, x0: f64, x1: f64) -> bool {
        Self::identically_zero_on(&self.a, x0, x1)
    }

    pub fn f_identically_zero_on(&self, x0: f64, x1: f64) -> bool {
        Self::identically_zero_on(&self.f, x0, x1)
    }

    /// Scans for a zero of `a` strictly inside `[x0, x1]` and returns the
    /// bracketing sample interval if one is found (sign change, an exact
    /// zero sample, or a failed evaluation).
    pub fn a_zero_bracket(&self, x0: f64, x1: f64) -> Option<(f64, f64)> {
        let pts: Vec<f64> = scan_points(x0, x1).collect();
        let mut prev: Option<(f64, f64)> = None;
        for &x in &pts {
            let v = match self.a.eval(x) {
                Ok(v) if v.is_finite() => v,
                _ => return Some(neighborhood(x, x0, x1)),
            };
            if v == 0.0 {
                return Some(neighborhood(x, x0, x1));
            }
            if let Some((px, pv)) = prev {
                if pv.signum() != v.signum() {
                    return Some(if px < x { (px, x) } else { (x, px) });
                }
            }
            prev = Some((x, v));
        }
        None
    }
}

fn scan_points(x0: f64, x1: f64) -> impl Iterator<Item = f64> {
    let n = ZERO_SCAN_POINTS + 1;
    (0..=n).map(move |i| x0 + (x1 - x0) * (i as f64) / (n as f64))
}

fn neighborhood(x: f64, lo: f64, hi: f64) -> (f64, f64) {
    let span = (hi - lo).abs() / (ZERO_SCAN_POINTS as f64 + 1.0);
    let (a, b) = (x - span, x + span);
    (a.max(lo.min(hi)), b.min(lo.max(hi)))
}

/// The coefficient functions of the canonical linear form:
/// `F(x) = a f - a''/(2a) + 3 a'^2/(4 a^2)` (so the q-equation reads
/// `q'' = F(x) q`) and `D(x) = 4 a^3 f - 2 a a'' + 3 a'^2`, the denominator
/// of the p-equation's first-derivative coefficient. Algebraically
/// `D = 4 a^2 F`.
#[derive(Debug, Clone)]
pub struct CanonicalPotential<'a> {
    prob: &'a RiccatiProblem,
}

impl CanonicalPotential<'_> {
    /// `F(x)`; errors when `a(x) = 0`.
    pub fn potential_at(&self, x: f64) -> Result<f64, TransformError> {
        let a = self.prob.a_at(x)?;
        if a == 0.0 {
            return Err(TransformError::AZero { x });
        }
        let f = self.prob.f_at(x)?;
        let a1 = self.prob.a1_at(x)?;
        let a2 = self.prob.a2_at(x)?;
        Ok(a * f - a2 / (2.0 * a) + 3.0 * a1 * a1 / (4.0 * a * a))
    }

    /// `D(x) = 4 a^3 f - 2 a a'' + 3 a'^2`.
    pub fn d_at(&self, x: f64) -> Result<f64, TransformError> {
        let a = self.prob.a_at(x)?;
        let f = self.prob.f_at(x)?;
        let a1 = self.prob.a1_at(x)?;
        let a2 = self.prob.a2_at(x)?;
        Ok(4.0 * a * a * a * f - 2.0 * a * a2 + 3.0 * a1 * a1)
    }
}

/// Builds the canonical potential pair for a problem.
pub fn canonical_potential(prob: &RiccatiProblem) -> CanonicalPotential<'_> {
    CanonicalPotential { prob }
}

/// State of the linear system at one abscissa, with the contract `p = q'`.
///
/// `(q, p)` and `(λq, λp)` reconstruct the same `z` for any `λ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearState {
    pub x: f64,
    pub q: f64,
    pub p: f64,
}

/// `y = a z - a'/(2a)`.
pub fn y_from_z(prob: &RiccatiProblem, x: f64, z: f64) -> Result<f64, TransformError> {
    let a = prob.a_at(x)?;
    if a == 0.0 {
        return Err(TransformError::AZero { x });
    }
    Ok(a * z - prob.a1_at(x)? / (2.0 * a))
}

/// `z = y/a + a'/(2a^2)`; inverse of [`y_from_z`].
pub fn z_from_y(prob: &RiccatiProblem, x: f64, y: f64) -> Result<f64, TransformError> {
    let a = prob.a_at(x)?;
    if a == 0.0 {
        return Err(TransformError::AZero { x });
    }
    Ok(y / a + prob.a1_at(x)? / (2.0 * a * a))
}

/// Initial linear state in the gauge `q(x0) = 1`, so that reconstruction at
/// `x0` returns `z0` exactly.
pub fn initial_linear_state(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
) -> Result<LinearState, TransformError> {
    Ok(LinearState {
        x: x0,
        q: 1.0,
        p: y_from_z(prob, x0, z0)?,
    })
}

/// `z = p/(a q) + a'/(2 a^2)`.
///
/// A zero of `q` is a pole of `z`, not an error: the value goes to infinity
/// and callers suppress reconstruction inside a guard band around each
/// refined pole.
pub fn reconstruct_z(prob: &RiccatiProblem, state: &LinearState) -> Result<f64, TransformError> {
    let a = prob.a_at(state.x)?;
    if a == 0.0 {
        return Err(TransformError::AZero { x: state.x });
    }
    let a1 = prob.a1_at(state.x)?;
    Ok(state.p / (a * state.q) + a1 / (2.0 * a * a))
}

/// Coefficients `(c1, c0)` of the p-equation `p'' + c1 p' + c0 p = 0`:
///
/// `c1 = (2/a) (-2a^3 a' f - 2a^4 f' + a^2 a''' - 4a a' a'' + 3a'^3) / D`
/// and `c0 = -F`.
///
/// Kept for residual verification only; integration always uses the
/// q-equation, which stays regular at zeros of `D`.
pub fn p_equation_coefficients(
    prob: &RiccatiProblem,
    x: f64,
) -> Result<(f64, f64), TransformError> {
    let a = prob.a_at(x)?;
    if a == 0.0 {
        return Err(TransformError::AZero { x });
    }
    let f = prob.f_at(x)?;
    let a1 = prob.a1_at(x)?;
    let a2 = prob.a2_at(x)?;
    let a3 = prob.a3_at(x)?;
    let f1 = prob.f1_at(x)?;
    let d = 4.0 * a * a * a * f - 2.0 * a * a2 + 3.0 * a1 * a1;
    if d == 0.0 {
        return Err(TransformError::SingularCoefficient { x });
    }
    let numerator = -2.0 * a.powi(3) * a1 * f - 2.0 * a.powi(4) * f1 + a * a * a3
        - 4.0 * a * a1 * a2
        + 3.0 * a1.powi(3);
    let c1 = 2.0 / a * numerator / d;
    let potential = a * f - a2 / (2.0 * a) + 3.0 * a1 * a1 / (4.0 * a * a);
    Ok((c1, -potential))
}
