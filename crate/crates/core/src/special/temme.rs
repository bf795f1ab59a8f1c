//! Small-argument series for the Y and K pairs at order `|µ| ≤ 1/2`,
//! following Temme's method of summing the reflection formula with the
//! near-cancelling parts recombined analytically.
//!
//! With `L = ln(2/x)`, `σ = µL` and
//!
//! ```text
//! F_0 = gam1(µ) cosh σ + gam2(µ) L sinh(σ)/σ
//! P_0 = exp(σ)  / (2 Γ(1-µ))
//! Q_0 = exp(-σ) / (2 Γ(1+µ))
//! F_k = (k F_{k-1} + P_{k-1} + Q_{k-1}) / (k² - µ²)
//! P_k = P_{k-1} / (k - µ),   Q_k = Q_{k-1} / (k + µ)
//! ```
//!
//! the pairs are
//!
//! ```text
//! K_µ    = Σ c_k fact F_k                      c_k = (x²/4)^k / k!
//! K_µ+1  = (2/x) Σ c_k fact (P_k - k F_k)      fact = µπ / sin µπ
//! Y_µ    = -Σ ĉ_k (s F_k + r Q_k)              ĉ_k = (-x²/4)^k / k!
//! Y_µ+1  = -(2/x) Σ ĉ_k (s P_k - k (s F_k + r Q_k))
//! ```
//!
//! with `s = 2µ/sin(µπ)` and `r = 2 tan(µπ/2)`. The `gam1`/`gam2` pair is
//!
//! ```text
//! gam1(µ) = [1/Γ(1-µ) - 1/Γ(1+µ)] / (2µ)     (→ -γ as µ → 0)
//! gam2(µ) = [1/Γ(1-µ) + 1/Γ(1+µ)] / 2
//! ```

use super::gamma::gamma;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ζ(3), used in the small-µ expansion of gam1.
const ZETA_3: f64 = 1.202_056_903_159_594_3;
const MAX_TERMS: usize = 200;
const EPS: f64 = 1e-17;

/// `([1/Γ(1-µ) - 1/Γ(1+µ)]/(2µ), [1/Γ(1-µ) + 1/Γ(1+µ)]/2)`.
fn gam1_gam2(mu: f64) -> (f64, f64) {
    let gam2 = 0.5 * (1.0 / gamma(1.0 - mu) + 1.0 / gamma(1.0 + mu));
    let gam1 = if mu.abs() < 0.03 {
        // 1/Γ(1+z) = 1 + γz + a2 z² + a3 z³ + ... ; the odd coefficients
        // survive in the difference and the direct quotient would cancel.
        // a3 = γ³/6 - γπ²/12 + ζ(3)/3.
        let a3 = EULER_GAMMA.powi(3) / 6.0 - EULER_GAMMA * PI * PI / 12.0 + ZETA_3 / 3.0;
        let a5 = -0.042_197_734_555_544_337;
        let a7 = 0.007_218_943_246_663_099_5;
        let mu2 = mu * mu;
        -(EULER_GAMMA + (a3 + (a5 + a7 * mu2) * mu2) * mu2)
    } else {
        (1.0 / gamma(1.0 - mu) - 1.0 / gamma(1.0 + mu)) / (2.0 * mu)
    };
    (gam1, gam2)
}

fn initial_terms(mu: f64, x: f64) -> (f64, f64, f64) {
    let l = (2.0 / x).ln();
    let sigma = mu * l;
    let (gam1, gam2) = gam1_gam2(mu);
    let fact2 = if sigma.abs() < 1e-10 {
        1.0 + sigma * sigma / 6.0
    } else {
        sigma.sinh() / sigma
    };
    let f0 = gam1 * sigma.cosh() + gam2 * l * fact2;
    let e = sigma.exp();
    let p0 = 0.5 * e / gamma(1.0 - mu);
    let q0 = 0.5 / (e * gamma(1.0 + mu));
    (f0, p0, q0)
}

/// `(K_µ(x), K_{µ+1}(x))` for `|µ| ≤ 1/2`, `0 < x ≤ 2`.
pub fn temme_k(mu: f64, x: f64) -> (f64, f64) {
    debug_assert!(mu.abs() <= 0.5 && x > 0.0 && x <= 2.0 + 1e-12);
    let fact = if mu.abs() < 1e-10 {
        1.0
    } else {
        mu * PI / (mu * PI).sin()
    };
    let (mut f, mut p, mut q) = initial_terms(mu, x);
    let z = 0.25 * x * x;
    let mu2 = mu * mu;
    let mut c = 1.0;
    let mut sum_k = f;
    let mut sum_k1 = p;
    for k in 1..=MAX_TERMS {
        let kf = k as f64;
        f = (kf * f + p + q) / (kf * kf - mu2);
        p /= kf - mu;
        q /= kf + mu;
        c *= z / kf;
        let del = c * f;
        sum_k += del;
        sum_k1 += c * (p - kf * f);
        if del.abs() < sum_k.abs() * EPS {
            break;
        }
    }
    (fact * sum_k, 2.0 / x * fact * sum_k1)
}

/// `(Y_µ(x), Y_{µ+1}(x))` for `|µ| ≤ 1/2`, `0 < x ≤ 2`.
pub fn temme_y(mu: f64, x: f64) -> (f64, f64) {
    debug_assert!(mu.abs() <= 0.5 && x > 0.0 && x <= 2.0 + 1e-12);
    let s = if mu.abs() < 1e-10 {
        2.0 / PI
    } else {
        2.0 * mu / (mu * PI).sin()
    };
    let r = 2.0 * (0.5 * mu * PI).tan();
    let (mut f, mut p, mut q) = initial_terms(mu, x);
    let z = -0.25 * x * x;
    let mu2 = mu * mu;
    let mut c = 1.0;
    let mut sum_y = s * f + r * q;
    let mut sum_y1 = s * p;
    for k in 1..=MAX_TERMS {
        let kf = k as f64;
        f = (kf * f + p + q) / (kf * kf - mu2);
        p /= kf - mu;
        q /= kf + mu;
        c *= z / kf;
        let del = c * (s * f + r * q);
        sum_y += del;
        sum_y1 += c * (s * p - kf * (s * f + r * q));
        if del.abs() < (1.0 + sum_y.abs()) * EPS {
            break;
        }
    }
    (-sum_y, -2.0 / x * sum_y1)
}
