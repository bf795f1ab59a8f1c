//! Reference Bessel values: ascending power series summed in double-double
//! arithmetic, with reflection formulas for Y and K at non-integer order
//! and the harmonic-number (digamma) series at integer order. Independent
//! of the library's evaluation paths, which never sum the J series beyond
//! the continued-fraction crossover and never use reflection for K.

use super::dd::{self, Dd};

/// Tail cutoff relative to the running sum.
const EPS: f64 = 1e-38;
const MAX_TERMS: usize = 700;

/// Ascending series Σ (±1)^k (x/2)^{ν+2k} / (k! Γ(ν+k+1)).
/// `ν` must not be a negative integer (callers reduce those cases first).
fn series(nu: f64, x: f64, alternating: bool) -> Dd {
    let xh = Dd::from_f64(x).mul_f64(0.5);
    let z = xh.mul(xh);
    let lead = if nu == 0.0 {
        Dd::ONE
    } else {
        xh.powf(nu)
    };
    // ν + 1 formed exactly: its f64 rounding would poison the reflection
    // cancellations downstream
    let mut term = lead.div(dd::gamma_at(Dd::from_sum(nu, 1.0)));
    let mut sum = term;
    for k in 1..=MAX_TERMS {
        let kf = k as f64;
        term = term
            .mul(z)
            .div_f64(kf)
            .div(Dd::from_sum(nu, kf));
        if alternating {
            term = term.neg();
        }
        sum = sum.add(term);
        if term.to_f64().abs() < sum.to_f64().abs() * EPS + 1e-320 {
            break;
        }
    }
    sum
}

fn is_integer(nu: f64) -> bool {
    nu == nu.round()
}

pub fn j(nu: f64, x: f64) -> Dd {
    if is_integer(nu) && nu < 0.0 {
        let n = (-nu) as i64;
        let v = j(-nu, x);
        return if n % 2 == 0 { v } else { v.neg() };
    }
    series(nu, x, true)
}

pub fn i(nu: f64, x: f64) -> Dd {
    if is_integer(nu) && nu < 0.0 {
        return i(-nu, x);
    }
    series(nu, x, false)
}

pub fn y(nu: f64, x: f64) -> Dd {
    if is_integer(nu) {
        let n = nu.round() as i64;
        let v = y_integer(n.unsigned_abs() as usize, x);
        return if n >= 0 || n % 2 == 0 { v } else { v.neg() };
    }
    // (J_ν cos νπ - J_{-ν}) / sin νπ, valid for any non-integer ν
    j(nu, x)
        .mul(dd::cos_pi(nu))
        .sub(j(-nu, x))
        .div(dd::sin_pi(nu))
}

pub fn k(nu: f64, x: f64) -> Dd {
    let anu = nu.abs(); // K is even in the order
    if is_integer(anu) {
        return k_integer(anu as usize, x);
    }
    if is_integer(anu - 0.5) {
        // exact terminating form, free of the reflection cancellation:
        // K_{n+1/2} = sqrt(π/2x) e^{-x} Σ_{k≤n} (n+k)!/(k!(n-k)!) (2x)^{-k}
        let n = (anu - 0.5) as usize;
        let mut sum = Dd::ZERO;
        for kk in 0..=n {
            let coeff = factorial(n + kk).div(factorial(kk).mul(factorial(n - kk)));
            sum = sum.add(coeff.div(Dd::from_f64(2.0 * x).powf(kk as f64)));
        }
        let front = dd::pi()
            .div_f64(2.0 * x)
            .sqrt()
            .mul(Dd::from_f64(-x).exp());
        return front.mul(sum);
    }
    // π (I_{-ν} - I_ν) / (2 sin νπ): loses roughly e^{2x} of the dd
    // precision to cancellation, still far beyond f64 for x ≤ 25
    i(-anu, x)
        .sub(i(anu, x))
        .mul(dd::pi())
        .div(dd::sin_pi(anu).mul_f64(2.0))
}

/// ψ(m+1) = -γ + H_m accumulated exactly in dd.
fn harmonic(m: usize) -> Dd {
    let mut h = Dd::ZERO;
    for j in 1..=m {
        h = h.add(Dd::ONE.div_f64(j as f64));
    }
    h
}

/// A&S 9.1.11:
/// Y_n = (2/π) ln(x/2) J_n
///     - (1/π) Σ_{k<n} (n-k-1)!/k! (x/2)^{2k-n}
///     - (1/π) Σ_{k≥0} (-1)^k [ψ(k+1)+ψ(n+k+1)] (x/2)^{2k+n} / (k!(n+k)!)
fn y_integer(n: usize, x: f64) -> Dd {
    let xh = Dd::from_f64(x).mul_f64(0.5);
    let ln_xh = xh.ln();
    let z = xh.mul(xh);
    let pi = dd::pi();
    let gamma_e = dd::euler_gamma();

    let log_part = ln_xh.mul(j(n as f64, x)).mul_f64(2.0).div(pi);

    let mut finite = Dd::ZERO;
    if n > 0 {
        // term_k = (n-k-1)!/k! (x/2)^{2k-n}
        let mut term = factorial(n - 1).mul(xh.powf(-(n as f64)));
        finite = term;
        for kk in 1..n {
            let kf = kk as f64;
            term = term.mul(z).div_f64(kf * (n as f64 - kf));
            finite = finite.add(term);
        }
        finite = finite.div(pi);
    }

    // ψ(k+1) + ψ(n+k+1) = H_k + H_{n+k} - 2γ
    let mut hk = Dd::ZERO;
    let mut hnk = harmonic(n);
    let mut weight = xh.powf(n as f64).div(factorial(n));
    let mut sum = weight.mul(hk.add(hnk).sub(gamma_e.mul_f64(2.0)));
    for kk in 1..=MAX_TERMS {
        let kf = kk as f64;
        weight = weight.mul(z).div_f64(kf * (n as f64 + kf)).neg();
        hk = hk.add(Dd::ONE.div_f64(kf));
        hnk = hnk.add(Dd::ONE.div_f64(n as f64 + kf));
        let term = weight.mul(hk.add(hnk).sub(gamma_e.mul_f64(2.0)));
        sum = sum.add(term);
        if term.to_f64().abs() < sum.to_f64().abs() * EPS + 1e-320 {
            break;
        }
    }
    let psi_part = sum.div(pi);

    log_part.sub(finite).sub(psi_part)
}

/// A&S 9.6.11:
/// K_n = (1/2)(x/2)^{-n} Σ_{k<n} (-1)^k (n-k-1)!/k! (x²/4)^k
///     + (-1)^{n+1} ln(x/2) I_n
///     + (-1)^n (1/2)(x/2)^n Σ_{k≥0} [ψ(k+1)+ψ(n+k+1)] (x²/4)^k/(k!(n+k)!)
fn k_integer(n: usize, x: f64) -> Dd {
    let xh = Dd::from_f64(x).mul_f64(0.5);
    let ln_xh = xh.ln();
    let z = xh.mul(xh);
    let gamma_e = dd::euler_gamma();
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };

    let mut finite = Dd::ZERO;
    if n > 0 {
        let mut term = factorial(n - 1).mul(xh.powf(-(n as f64)));
        finite = term;
        for kk in 1..n {
            let kf = kk as f64;
            term = term.mul(z).div_f64(kf * (n as f64 - kf)).neg();
            finite = finite.add(term);
        }
        finite = finite.mul_f64(0.5);
    }

    let log_part = ln_xh.mul(i(n as f64, x)).mul_f64(-sign_n);

    let mut hk = Dd::ZERO;
    let mut hnk = harmonic(n);
    let mut weight = xh.powf(n as f64).div(factorial(n));
    let mut sum = weight.mul(hk.add(hnk).sub(gamma_e.mul_f64(2.0)));
    for kk in 1..=MAX_TERMS {
        let kf = kk as f64;
        weight = weight.mul(z).div_f64(kf * (n as f64 + kf));
        hk = hk.add(Dd::ONE.div_f64(kf));
        hnk = hnk.add(Dd::ONE.div_f64(n as f64 + kf));
        let term = weight.mul(hk.add(hnk).sub(gamma_e.mul_f64(2.0)));
        sum = sum.add(term);
        if term.to_f64().abs() < sum.to_f64().abs() * EPS + 1e-320 {
            break;
        }
    }
    let psi_part = sum.mul_f64(0.5 * sign_n);

    finite.add(log_part).add(psi_part)
}

fn factorial(n: usize) -> Dd {
    let mut f = Dd::ONE;
    for j in 2..=n {
        f = f.mul_f64(j as f64);
    }
    f
}

/// Derivative via the downward recurrence `C'_ν = C_{ν-1} - (ν/x) C_ν`
/// (sign-adjusted for K).
pub fn derivative(kind: char, nu: f64, x: f64) -> Dd {
    let ratio = Dd::from_f64(nu / x);
    match kind {
        'J' => j(nu - 1.0, x).sub(ratio.mul(j(nu, x))),
        'Y' => y(nu - 1.0, x).sub(ratio.mul(y(nu, x))),
        'I' => i(nu - 1.0, x).sub(ratio.mul(i(nu, x))),
        'K' => k(nu - 1.0, x).neg().sub(ratio.mul(k(nu, x))),
        _ => panic!("kind must be one of J, Y, I, K"),
    }
}

pub fn value(kind: char, nu: f64, x: f64) -> Dd {
    match kind {
        'J' => j(nu, x),
        'Y' => y(nu, x),
        'I' => i(nu, x),
        'K' => k(nu, x),
        _ => panic!("kind must be one of J, Y, I, K"),
    }
}
