//! Bessel functions J, Y, I, K of real order on the positive half-line.
//!
//! Supported envelope: `|ν| ≤ 5`, `0 < x ≤ 50`, enforced at the public
//! entry points. Inside it the advertised relative accuracy is 1e-10
//! against a high-precision series oracle (the test suite carries one).
//!
//! Evaluation strategy:
//! - `J_ν`, `I_ν`: ascending power series at small argument (`I` at every
//!   argument — its series has no cancellation);
//! - `Y_µ`, `K_µ` at small argument: Temme-style recombined reflection
//!   series ([`temme`]), uniformly valid in the order including integers;
//! - `x ≥ 2`: Steed continued fractions (CF1 + complex CF2 for the J/Y
//!   pair, real CF2 for K) with Wronskian normalization;
//! - orders outside `[-1/2, 1/2]` (or away from the reduced order) by the
//!   standard three-term recurrences, run in their stable direction;
//! - negative orders by the reflection relations, with exact special cases
//!   at integer order.

mod gamma;
mod series;
mod steed;
mod temme;

pub use gamma::gamma;

use std::f64::consts::PI;
use std::fmt;

/// Largest supported |order|.
pub const MAX_ORDER: f64 = 5.0;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 50.0;

/// Crossover from the ascending J series to the continued-fraction path.
const STEED_CUT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

impl fmt::Display for BesselKind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BesselKind::J => "J",
            BesselKind::Y => "Y",
            BesselKind::I => "I",
            BesselKind::K => "K",
        };
        write!(out, "{name}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecialError {
    NonPositiveArgument { x: f64 },
    EnvelopeExceeded { nu: f64, x: f64 },
    DidNotConverge { nu: f64, x: f64 },
}

impl fmt::Display for SpecialError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialError::NonPositiveArgument { x } => {
                write!(out, "Bessel argument must be positive (got {x})")
            }
            SpecialError::EnvelopeExceeded { nu, x } => write!(
                out,
                "outside the supported envelope |nu| <= {MAX_ORDER}, 0 < x <= {MAX_ARGUMENT} \
                 (got nu = {nu}, x = {x})"
            ),
            SpecialError::DidNotConverge { nu, x } => {
                write!(out, "continued fraction failed to converge (nu = {nu}, x = {x})")
            }
        }
    }
}

impl std::error::Error for SpecialError {}

fn check_envelope(nu: f64, x: f64) -> Result<(), SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::NonPositiveArgument { x });
    }
    if !(nu.abs() <= MAX_ORDER && x <= MAX_ARGUMENT) || !nu.is_finite() {
        return Err(SpecialError::EnvelopeExceeded { nu, x });
    }
    Ok(())
}

/// `C_ν(x)` for the requested kind.
pub fn bessel(kind: BesselKind, nu: f64, x: f64) -> Result<f64, SpecialError> {
    check_envelope(nu, x)?;
    let (value, _) = value_and_derivative(kind, nu, x)?;
    Ok(value)
}

/// `C'_ν(x)`, from the recurrence `C'_ν = C_{ν-1} - (ν/x) C_ν` with the
/// sign conventions of each kind (for K: `K'_ν = -K_{ν-1} - (ν/x) K_ν`).
pub fn bessel_derivative(kind: BesselKind, nu: f64, x: f64) -> Result<f64, SpecialError> {
    check_envelope(nu, x)?;
    let (_, derivative) = value_and_derivative(kind, nu, x)?;
    Ok(derivative)
}

/// Both the value and the derivative in one call.
pub fn value_and_derivative(
    kind: BesselKind,
    nu: f64,
    x: f64,
) -> Result<(f64, f64), SpecialError> {
    check_envelope(nu, x)?;
    match kind {
        BesselKind::J => {
            let (j, jp, _, _) = jy_signed(nu, x)?;
            Ok((j, jp))
        }
        BesselKind::Y => {
            let (_, _, y, yp) = jy_signed(nu, x)?;
            Ok((y, yp))
        }
        BesselKind::I => {
            let (i, ip, _, _) = ik_signed(nu, x)?;
            Ok((i, ip))
        }
        BesselKind::K => {
            let (_, _, k, kp) = ik_signed(nu, x)?;
            Ok((k, kp))
        }
    }
}

fn is_integer(nu: f64) -> bool {
    nu == nu.round()
}

/// `sin(πv)` with exact argument reduction, so half-integer and integer
/// multiples come out exact.
fn sin_pi(v: f64) -> f64 {
    let n = v.round();
    let r = v - n; // exact: v and its nearest integer share scale
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(πv)` with exact argument reduction (exactly zero at half-integers).
fn cos_pi(v: f64) -> f64 {
    let n = v.round();
    let r = v - n;
    let c = if r.abs() <= 0.25 {
        (PI * r).cos()
    } else {
        // 0.5 - |r| is exact for |r| in [0.25, 0.5]
        (PI * (0.5 - r.abs())).sin()
    };
    if (n as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

/// `(J_ν, J'_ν, Y_ν, Y'_ν)` for any `ν` in the envelope.
fn jy_signed(nu: f64, x: f64) -> Result<(f64, f64, f64, f64), SpecialError> {
    if nu >= 0.0 {
        return jy_positive(nu, x);
    }
    let anu = -nu;
    let (j, jp, y, yp) = jy_positive(anu, x)?;
    if is_integer(anu) {
        let sign = if (anu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok((sign * j, sign * jp, sign * y, sign * yp));
    }
    let (s, c) = (sin_pi(anu), cos_pi(anu));
    // J_{-ν} = J_ν cos νπ - Y_ν sin νπ ; Y_{-ν} = J_ν sin νπ + Y_ν cos νπ
    Ok((
        j * c - y * s,
        jp * c - yp * s,
        j * s + y * c,
        jp * s + yp * c,
    ))
}

/// `(J_ν, J'_ν, Y_ν, Y'_ν)` for `ν ≥ 0`.
fn jy_positive(nu: f64, x: f64) -> Result<(f64, f64, f64, f64), SpecialError> {
    debug_assert!(nu >= 0.0);
    if x < STEED_CUT {
        // J by direct series; Y by Temme at the reduced order plus the
        // (upward-stable) order recurrence.
        let j = series::j_series(nu, x);
        let j_next = series::j_series(nu + 1.0, x);
        let jp = nu / x * j - j_next;
        let nl = (nu + 0.5).floor() as i32;
        let mu = nu - nl as f64;
        let (mut ya, mut yb) = temme::temme_y(mu, x);
        for i in 1..=nl {
            let ynew = 2.0 * (mu + i as f64) / x * yb - ya;
            ya = yb;
            yb = ynew;
        }
        let (y, y_next) = (ya, yb);
        let yp = nu / x * y - y_next;
        Ok((j, jp, y, yp))
    } else {
        let (f, isign) = steed::cf1_j_ratio(nu, x)
            .ok_or(SpecialError::DidNotConverge { nu, x })?;
        // backward recurrence from ν down to µ = ν - nl keeps every order
        // below the argument, where it is stable
        let nl = ((nu - x + 1.5).floor().max(0.0)) as i32;
        let mu = nu - nl as f64;
        let tiny = 1e-30;
        let mut rjl = isign as f64 * tiny;
        let mut rjpl = f * rjl;
        let (rjl_save, rjpl_save) = (rjl, rjpl);
        let mut fact = nu / x;
        for _ in 0..nl {
            let rjtemp = fact * rjl + rjpl;
            fact -= 1.0 / x;
            rjpl = fact * rjtemp - rjl;
            rjl = rjtemp;
        }
        if rjl == 0.0 {
            rjl = 1e-16;
        }
        let fmu = rjpl / rjl;
        let (jmu, _jmup, ymu, ymu1) = steed::jy_steed(mu, x, fmu, rjl)
            .ok_or(SpecialError::DidNotConverge { nu, x })?;
        let scale = jmu / rjl;
        let j = rjl_save * scale;
        let jp = rjpl_save * scale;
        let (mut ya, mut yb) = (ymu, ymu1);
        for i in 1..=nl {
            let ynew = 2.0 * (mu + i as f64) / x * yb - ya;
            ya = yb;
            yb = ynew;
        }
        let (y, y_next) = (ya, yb);
        let yp = nu / x * y - y_next;
        Ok((j, jp, y, yp))
    }
}

/// `(I_ν, I'_ν, K_ν, K'_ν)` for any `ν` in the envelope.
fn ik_signed(nu: f64, x: f64) -> Result<(f64, f64, f64, f64), SpecialError> {
    if nu >= 0.0 {
        return ik_positive(nu, x);
    }
    let anu = -nu;
    let (i, ip, k, kp) = ik_positive(anu, x)?;
    if is_integer(anu) {
        return Ok((i, ip, k, kp));
    }
    // I_{-ν} = I_ν + (2/π) sin νπ K_ν ; K_{-ν} = K_ν
    let s = sin_pi(anu);
    Ok((i + 2.0 / PI * s * k, ip + 2.0 / PI * s * kp, k, kp))
}

/// `(I_ν, I'_ν, K_ν, K'_ν)` for `ν ≥ 0`.
fn ik_positive(nu: f64, x: f64) -> Result<(f64, f64, f64, f64), SpecialError> {
    debug_assert!(nu >= 0.0);
    let i = series::i_series(nu, x);
    let i_next = series::i_series(nu + 1.0, x);
    let ip = i_next + nu / x * i;
    let nl = (nu + 0.5).floor() as i32;
    let mu = nu - nl as f64;
    let (mut ka, mut kb) = if x <= 2.0 {
        temme::temme_k(mu, x)
    } else {
        steed::cf2_k(mu, x).ok_or(SpecialError::DidNotConverge { nu, x })?
    };
    for j in 1..=nl {
        let knew = 2.0 * (mu + j as f64) / x * kb + ka;
        ka = kb;
        kb = knew;
    }
    let (k, k_next) = (ka, kb);
    let kp = nu / x * k - k_next;
    Ok((i, ip, k, kp))
}
