//! Ascending power series for J and I.
//!
//! `J_ν(x) = Σ_k (-1)^k (x/2)^{ν+2k} / (k! Γ(ν+k+1))` and the same series
//! without the sign alternation for `I_ν`. The I series is used at every
//! argument in the supported envelope (all terms positive, no cancellation);
//! the J series only below the continued-fraction crossover, where the
//! alternating sum stays well conditioned.

use super::gamma::gamma;

const MAX_TERMS: usize = 400;

/// `J_ν(x)` by ascending series; `ν ≥ 0`, `x > 0`.
pub fn j_series(nu: f64, x: f64) -> f64 {
    series(nu, x, true)
}

/// `I_ν(x)` by ascending series; `ν ≥ 0`, `x > 0`.
pub fn i_series(nu: f64, x: f64) -> f64 {
    series(nu, x, false)
}

fn series(nu: f64, x: f64, alternating: bool) -> f64 {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let z = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) / gamma(nu + 1.0);
    // Kahan-compensated accumulation; the term recurrence itself only loses
    // a few ulps per step.
    let mut sum = term;
    let mut comp = 0.0_f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= z / ((kf + 1.0) * (nu + kf + 1.0));
        if alternating {
            term = -term;
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= sum.abs() * 1e-18 + 1e-300 {
            break;
        }
    }
    sum
}
