//! Closed-form solution families of `dz/dx + a z² = f`, parameterized by
//! their free constants. Each family knows the `(a, f)` pair it solves, so
//! the numeric paths can be checked against it, and each two-constant
//! family is projective: `(K₁, K₂)` and `(λK₁, λK₂)` are the same solution.
//!
//! The families:
//! - `note_f_zero`: `f ≡ 0`, `z = 1/(x - K)`;
//! - `example1`: `a ≡ 1`, `f = eˣ`, a modified-Bessel ratio in `2e^{x/2}`;
//! - `corollary1`/`corollary2`: the constant-`a` and power-law-`a`
//!   specializations of the linear system (exposed for cross-checks, no new
//!   closed form);
//! - `corollary3`: `a = c < 0`, `f = xⁿ`, a J/Y Bessel ratio;
//! - `corollary4`: `a = c ≥ -1/4`, `f = x⁻²`, a rational form in `x^√(1+4c)`.

use crate::expr::{parse, Expr};
use crate::special::{bessel, BesselKind, SpecialError, MAX_ORDER};
use crate::transform::{LinearState, RiccatiProblem};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyError {
    InvalidParameter { what: String },
    /// The denominator vanishes: z has a pole at `x`.
    Pole { x: f64 },
    /// Evaluation outside the family's domain (`x ≤ 0`, or `x = K`).
    OutsideDomain { x: f64 },
    /// No member of the family attains the requested value at `x0`.
    InfeasibleFit { x0: f64, z0: f64 },
    Special(SpecialError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::InvalidParameter { what } => write!(out, "invalid parameter: {what}"),
            FamilyError::Pole { x } => write!(out, "pole of the closed form at x = {x}"),
            FamilyError::OutsideDomain { x } => {
                write!(out, "x = {x} is outside the family's domain")
            }
            FamilyError::InfeasibleFit { x0, z0 } => {
                write!(out, "no member of the family attains z = {z0} at x = {x0}")
            }
            FamilyError::Special(e) => write!(out, "{e}"),
        }
    }
}

impl std::error::Error for FamilyError {}

impl From<SpecialError> for FamilyError {
    fn from(e: SpecialError) -> Self {
        FamilyError::Special(e)
    }
}

/// A fully parameterized closed-form solution.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// `z = 1/(x - K)`, solving `z' + z² = 0`.
    NoteFZero { k: f64 },
    /// `z = e^{x/2} (K₁ K₁ᵇ(t) + K₂ I₁(t)) / (-K₁ K₀ᵇ(t) + K₂ I₀(t))`,
    /// `t = 2 e^{x/2}`, solving `z' + z² = eˣ`.
    Example1 { k1: f64, k2: f64 },
    /// Bessel-ratio family for `z' + c z² = xⁿ`, `c < 0`, `n > -2`.
    Corollary3 { c: f64, n: f64, k1: f64, k2: f64 },
    /// Rational family for `z' + c z² = x⁻²`, `c ≥ -1/4`, `c ≠ 0`.
    Corollary4 { c: f64, k1: f64, k2: f64 },
}

/// `z = 1/(x - K)`.
pub fn note_f_zero(k: f64) -> ClosedForm {
    ClosedForm::NoteFZero { k }
}

/// The Bessel I/K family solving `z' + z² = eˣ`.
pub fn example1(k1: f64, k2: f64) -> ClosedForm {
    ClosedForm::Example1 { k1, k2 }
}

/// The J/Y family solving `z' + c z² = xⁿ` (`c < 0`, `n > -2`, and the
/// Bessel orders it produces must stay inside the supported envelope).
pub fn corollary3(c: f64, n: f64, k1: f64, k2: f64) -> Result<ClosedForm, FamilyError> {
    if !(c < 0.0) {
        return Err(FamilyError::InvalidParameter {
            what: format!("corollary3 requires c < 0 (got {c})"),
        });
    }
    if n == -2.0 {
        return Err(FamilyError::InvalidParameter {
            what: "corollary3 requires n != -2".into(),
        });
    }
    if n < -2.0 {
        return Err(FamilyError::InvalidParameter {
            what: format!(
                "corollary3 is only evaluated for n > -2 (got {n}); the Bessel argument \
                 2√(-c)/(n+2)·x^(n/2+1) is negative otherwise"
            ),
        });
    }
    let orders = [-(n + 1.0) / (n + 2.0), 1.0 / (n + 2.0)];
    if orders.iter().any(|nu| nu.abs() > MAX_ORDER) {
        return Err(FamilyError::InvalidParameter {
            what: format!(
                "corollary3 with n = {n} needs Bessel orders {orders:?} outside the supported \
                 envelope |nu| <= {MAX_ORDER}"
            ),
        });
    }
    Ok(ClosedForm::Corollary3 { c, n, k1, k2 })
}

/// The rational family solving `z' + c z² = x⁻²` (`c ≥ -1/4`, `c ≠ 0`).
pub fn corollary4(c: f64, k1: f64, k2: f64) -> Result<ClosedForm, FamilyError> {
    if c < -0.25 {
        return Err(FamilyError::InvalidParameter {
            what: format!("corollary4 requires c >= -1/4 (got {c})"),
        });
    }
    if c == 0.0 {
        return Err(FamilyError::InvalidParameter {
            what: "corollary4 requires c != 0 (the equation degenerates)".into(),
        });
    }
    Ok(ClosedForm::Corollary4 { c, k1, k2 })
}

/// Constant-`a` specialization: `dz/dx + c z² = f` maps to the linear
/// system with potential `F = c f` and reconstruction `z = p/(c q)`.
/// Returns the problem so the general machinery can be cross-checked
/// against [`corollary1_potential`].
pub fn corollary1_problem(c: f64, f: Expr) -> Result<RiccatiProblem, FamilyError> {
    if c == 0.0 {
        return Err(FamilyError::InvalidParameter {
            what: "corollary1 requires c != 0".into(),
        });
    }
    Ok(RiccatiProblem::new(Expr::constant(c), f))
}

/// `F(x) = c f(x)` — the potential of the constant-`a` system, written
/// directly from the specialization.
pub fn corollary1_potential(c: f64, f: &Expr, x: f64) -> Result<f64, FamilyError> {
    Ok(c * f.eval(x).map_err(|e| FamilyError::InvalidParameter {
        what: e.to_string(),
    })?)
}

/// Power-law specialization `a = c xⁿ`: potential
/// `F(x) = c xⁿ f(x) + n(n+2)/(4x²)`, reconstruction
/// `z = p/(c xⁿ q) + n/(2c x^{n+1})`.
pub fn corollary2_problem(c: f64, n: f64, f: Expr) -> Result<RiccatiProblem, FamilyError> {
    if c == 0.0 {
        return Err(FamilyError::InvalidParameter {
            what: "corollary2 requires c != 0".into(),
        });
    }
    let a = Expr::mul(Expr::constant(c), Expr::pow(Expr::variable(), Expr::constant(n)));
    Ok(RiccatiProblem::new(a, f))
}

/// `F(x) = c xⁿ f(x) + n(n+2)/(4x²)` for `x > 0`.
pub fn corollary2_potential(c: f64, n: f64, f: &Expr, x: f64) -> Result<f64, FamilyError> {
    if x <= 0.0 {
        return Err(FamilyError::OutsideDomain { x });
    }
    let fv = f.eval(x).map_err(|e| FamilyError::InvalidParameter {
        what: e.to_string(),
    })?;
    Ok(c * x.powf(n) * fv + n * (n + 2.0) / (4.0 * x * x))
}

/// `z = p/(c xⁿ q) + n/(2 c x^{n+1})` for `x > 0`.
pub fn corollary2_reconstruct(c: f64, n: f64, state: &LinearState) -> Result<f64, FamilyError> {
    let x = state.x;
    if x <= 0.0 {
        return Err(FamilyError::OutsideDomain { x });
    }
    Ok(state.p / (c * x.powf(n) * state.q) + n / (2.0 * c * x.powf(n + 1.0)))
}

impl ClosedForm {
    /// Evaluates the closed form at `x`. A vanishing denominator reports a
    /// pole; domain violations report `OutsideDomain`.
    pub fn eval(&self, x: f64) -> Result<f64, FamilyError> {
        match *self {
            ClosedForm::NoteFZero { k } => {
                if x == k {
                    return Err(FamilyError::OutsideDomain { x });
                }
                Ok(1.0 / (x - k))
            }
            ClosedForm::Example1 { k1, k2 } => {
                let t = 2.0 * (0.5 * x).exp();
                let num = k1 * bessel(BesselKind::K, 1.0, t)? + k2 * bessel(BesselKind::I, 1.0, t)?;
                let den =
                    -k1 * bessel(BesselKind::K, 0.0, t)? + k2 * bessel(BesselKind::I, 0.0, t)?;
                ratio((0.5 * x).exp() * num, den, x)
            }
            ClosedForm::Corollary3 { c, n, k1, k2 } => {
                if x <= 0.0 {
                    return Err(FamilyError::OutsideDomain { x });
                }
                let root = (-c).sqrt();
                let u = 2.0 * root / (n + 2.0) * x.powf(0.5 * n + 1.0);
                let nu_num = -(n + 1.0) / (n + 2.0);
                let nu_den = 1.0 / (n + 2.0);
                let num = k1 * bessel(BesselKind::J, nu_num, u)?
                    + k2 * bessel(BesselKind::Y, nu_num, u)?;
                let den = k1 * bessel(BesselKind::J, nu_den, u)?
                    + k2 * bessel(BesselKind::Y, nu_den, u)?;
                ratio(-x.powf(0.5 * n) / root * num, den, x)
            }
            ClosedForm::Corollary4 { c, k1, k2 } => {
                if x <= 0.0 {
                    return Err(FamilyError::OutsideDomain { x });
                }
                let s = (1.0 + 4.0 * c).sqrt();
                let xs = x.powf(s);
                let numerator = k1 * xs + k2;
                let denominator = k1 * (1.0 - s) * xs + k2 * (1.0 + s);
                ratio(-2.0 / x * numerator, denominator, x)
            }
        }
    }

    /// The `(a, f)` pair this family solves.
    pub fn problem(&self) -> RiccatiProblem {
        match *self {
            ClosedForm::NoteFZero { .. } => {
                RiccatiProblem::new(Expr::constant(1.0), Expr::constant(0.0))
            }
            ClosedForm::Example1 { .. } => {
                RiccatiProblem::new(Expr::constant(1.0), parse("exp(x)").expect("static"))
            }
            ClosedForm::Corollary3 { c, n, .. } => RiccatiProblem::new(
                Expr::constant(c),
                Expr::pow(Expr::variable(), Expr::constant(n)),
            ),
            ClosedForm::Corollary4 { c, .. } => RiccatiProblem::new(
                Expr::constant(c),
                Expr::pow(Expr::variable(), Expr::constant(-2.0)),
            ),
        }
    }

    /// Free constants, as stored.
    pub fn constants(&self) -> (f64, Option<f64>) {
        match *self {
            ClosedForm::NoteFZero { k } => (k, None),
            ClosedForm::Example1 { k1, k2 } => (k1, Some(k2)),
            ClosedForm::Corollary3 { k1, k2, .. } => (k1, Some(k2)),
            ClosedForm::Corollary4 { k1, k2, .. } => (k1, Some(k2)),
        }
    }

    /// Same family, different constants.
    fn with_constants(&self, k1: f64, k2: f64) -> ClosedForm {
        match *self {
            ClosedForm::NoteFZero { .. } => ClosedForm::NoteFZero { k: k1 },
            ClosedForm::Example1 { .. } => ClosedForm::Example1 { k1, k2 },
            ClosedForm::Corollary3 { c, n, .. } => ClosedForm::Corollary3 { c, n, k1, k2 },
            ClosedForm::Corollary4 { c, .. } => ClosedForm::Corollary4 { c, k1, k2 },
        }
    }

    /// Basis values `(num_k1, num_k2, den_k1, den_k2, prefactor)` at `x`,
    /// such that `z = prefactor (K₁ num₁ + K₂ num₂)/(K₁ den₁ + K₂ den₂)`.
    fn basis(&self, x: f64) -> Result<(f64, f64, f64, f64, f64), FamilyError> {
        match *self {
            ClosedForm::NoteFZero { .. } => unreachable!("one-constant family"),
            ClosedForm::Example1 { .. } => {
                let t = 2.0 * (0.5 * x).exp();
                Ok((
                    bessel(BesselKind::K, 1.0, t)?,
                    bessel(BesselKind::I, 1.0, t)?,
                    -bessel(BesselKind::K, 0.0, t)?,
                    bessel(BesselKind::I, 0.0, t)?,
                    (0.5 * x).exp(),
                ))
            }
            ClosedForm::Corollary3 { c, n, .. } => {
                if x <= 0.0 {
                    return Err(FamilyError::OutsideDomain { x });
                }
                let root = (-c).sqrt();
                let u = 2.0 * root / (n + 2.0) * x.powf(0.5 * n + 1.0);
                let nu_num = -(n + 1.0) / (n + 2.0);
                let nu_den = 1.0 / (n + 2.0);
                Ok((
                    bessel(BesselKind::J, nu_num, u)?,
                    bessel(BesselKind::Y, nu_num, u)?,
                    bessel(BesselKind::J, nu_den, u)?,
                    bessel(BesselKind::Y, nu_den, u)?,
                    -x.powf(0.5 * n) / root,
                ))
            }
            ClosedForm::Corollary4 { c, .. } => {
                if x <= 0.0 {
                    return Err(FamilyError::OutsideDomain { x });
                }
                let s = (1.0 + 4.0 * c).sqrt();
                let xs = x.powf(s);
                Ok((xs, 1.0, (1.0 - s) * xs, 1.0 + s, -2.0 / x))
            }
        }
    }

    /// One-line human description for listings.
    pub fn describe(&self) -> String {
        match *self {
            ClosedForm::NoteFZero { k } => {
                format!("z = 1/(x - K) with K = {k}; solves z' + z^2 = 0 away from x = K")
            }
            ClosedForm::Example1 { k1, k2 } => format!(
                "z = e^(x/2) (K1 BesselK(1,t) + K2 BesselI(1,t)) / (-K1 BesselK(0,t) + K2 BesselI(0,t)), \
                 t = 2 e^(x/2), (K1, K2) = ({k1}, {k2}); solves z' + z^2 = e^x"
            ),
            ClosedForm::Corollary3 { c, n, k1, k2 } => format!(
                "Bessel J/Y ratio family with c = {c}, n = {n}, (K1, K2) = ({k1}, {k2}); \
                 solves z' + c z^2 = x^n on x > 0"
            ),
            ClosedForm::Corollary4 { c, k1, k2 } => format!(
                "rational family with c = {c}, (K1, K2) = ({k1}, {k2}); \
                 solves z' + c z^2 = x^-2 on x > 0"
            ),
        }
    }
}

fn ratio(num: f64, den: f64, x: f64) -> Result<f64, FamilyError> {
    if den == 0.0 {
        return Err(FamilyError::Pole { x });
    }
    let z = num / den;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(FamilyError::Pole { x })
    }
}

/// Fixes the family's free constants so that `z(x0) = z0`.
///
/// For the two-constant families the condition
/// `z0 · den(x0) - prefactor · num(x0) = 0` is linear in `(K₁, K₂)`, so the
/// fit is a one-step linear solve; the result is normalized so its largest
/// constant is 1 (the constants are projective).
pub fn fit_constants(form: &ClosedForm, x0: f64, z0: f64) -> Result<ClosedForm, FamilyError> {
    let fitted = match form {
        ClosedForm::NoteFZero { .. } => {
            if z0 == 0.0 {
                return Err(FamilyError::InfeasibleFit { x0, z0 });
            }
            ClosedForm::NoteFZero { k: x0 - 1.0 / z0 }
        }
        _ => {
            let (n1, n2, d1, d2, pre) = form.basis(x0)?;
            let alpha = z0 * d1 - pre * n1;
            let beta = z0 * d2 - pre * n2;
            if alpha == 0.0 && beta == 0.0 {
                return Err(FamilyError::InfeasibleFit { x0, z0 });
            }
            let (mut k1, mut k2) = (beta, -alpha);
            let scale = k1.abs().max(k2.abs());
            k1 /= scale;
            k2 /= scale;
            // tidy the projective representative: largest component +1
            if k1.abs() >= k2.abs() && k1 < 0.0 || k2.abs() > k1.abs() && k2 < 0.0 {
                k1 = -k1;
                k2 = -k2;
            }
            // normalize negative zeros away
            form.with_constants(k1 + 0.0, k2 + 0.0)
        }
    };
    match fitted.eval(x0) {
        Ok(z) if (z - z0).abs() <= 1e-9 * (1.0 + z0.abs()) => Ok(fitted),
        _ => Err(FamilyError::InfeasibleFit { x0, z0 }),
    }
}
