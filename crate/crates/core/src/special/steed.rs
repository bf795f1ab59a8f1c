//! Steed-style continued fractions for the oscillatory (J, Y) and modified
//! (K) Bessel functions at moderate-to-large argument.
//!
//! CF1 gives the ratio `J'_ν/J_ν`; the complex CF2 gives
//! `p + iq = (J'_µ - i Y'_µ)/(J_µ - i Y_µ)`, and together with the Wronskian
//! `J_µ Y'_µ - J'_µ Y_µ = 2/(πx)` they pin down all four values. The real
//! CF2 for K evaluates `K_µ` directly from its asymptotic-type continued
//! fraction. Both CF2 forms need `x ≳ 2`; CF1 converges everywhere.

use std::f64::consts::PI;

const MAX_ITER: usize = 20_000;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;

/// CF1: returns `(J'_ν/J_ν, sign)` where `sign` tracks the sign of `J_ν`.
pub fn cf1_j_ratio(nu: f64, x: f64) -> Option<(f64, i32)> {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut isign = 1;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            return Some((h, isign));
        }
    }
    None
}

/// Complex CF2: returns `(p, q)` with `p + iq = (J'_µ - iY'_µ)/(J_µ - iY_µ)`
/// for `x ≥ 2`, small `µ`.
pub fn cf2_jy(mu: f64, x: f64) -> Option<(f64, f64)> {
    let xi = 1.0 / x;
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr = cr * dr - ci * di;
    let dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..=MAX_ITER {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            return Some((p, q));
        }
    }
    None
}

/// `(J_µ, J'_µ, Y_µ, Y_{µ+1})` for `x ≥ 2` via CF1 + CF2 + Wronskian.
///
/// `jmu_sign_hint` carries the sign of an unnormalized `J_µ` obtained by
/// backward recurrence (the continued fractions only determine `J_µ` up to
/// sign).
pub fn jy_steed(mu: f64, x: f64, f_ratio: f64, jmu_sign_hint: f64) -> Option<(f64, f64, f64, f64)> {
    let w = 2.0 / (PI * x); // Wronskian
    let (p, q) = cf2_jy(mu, x)?;
    let gam = (p - f_ratio) / q;
    let mut jmu = (w / ((p - f_ratio) * gam + q)).sqrt();
    if jmu_sign_hint < 0.0 {
        jmu = -jmu;
    }
    let ymu = jmu * gam;
    let ymup = ymu * (p + q / gam);
    let jmup = f_ratio * jmu;
    let ymu1 = mu / x * ymu - ymup;
    Some((jmu, jmup, ymu, ymu1))
}

/// Real CF2 for K: `(K_µ, K_{µ+1})` for `x > 2`, `|µ| ≤ 1/2`.
pub fn cf2_k(mu: f64, x: f64) -> Option<(f64, f64)> {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..=MAX_ITER {
        a -= 2.0 * (i as f64 - 1.0);
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            let h = a1 * h;
            let kmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
            let kmu1 = kmu * (mu + x + 0.5 - h) / x;
            return Some((kmu, kmu1));
        }
    }
    None
}
