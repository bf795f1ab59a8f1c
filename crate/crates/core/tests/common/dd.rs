//! Minimal double-double arithmetic (~31 significant digits) for the
//! reference Bessel oracle. Only what the oracle needs: field operations,
//! sqrt, exp, ln, powers, sin/cos of π-multiples, and a decimal parser for
//! high-precision constants.

#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    /// Exact sum of two doubles as a Dd.
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (s, e) = two_sum(a, b);
        Dd { hi: s, lo: e }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, mut e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        e += t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn add_f64(self, other: f64) -> Dd {
        let (s, mut e) = two_sum(self.hi, other);
        e += self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, mut e) = two_prod(self.hi, other.hi);
        e += self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, other: f64) -> Dd {
        let (p, mut e) = two_prod(self.hi, other);
        e += self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    pub fn div_f64(self, other: f64) -> Dd {
        self.div(Dd::from_f64(other))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        // one dd Newton step on a double seed reaches full dd accuracy
        let y = Dd::from_f64(self.hi.sqrt());
        let y = y.add(self.div(y)).mul_f64(0.5);
        y.add(self.div(y)).mul_f64(0.5)
    }

    pub fn ldexp(self, e: i32) -> Dd {
        let s = (2.0_f64).powi(e);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 700.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let ln2 = ln2();
        let n = (self.hi / ln2.hi).round();
        let r = self.sub(ln2.mul_f64(n)).ldexp(-9);
        // Taylor on |r| <= ln2/1024
        let mut sum = Dd::ONE.add(r);
        let mut term = r;
        for m in 2..32 {
            term = term.mul(r).div_f64(m as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-40 {
                break;
            }
        }
        for _ in 0..9 {
            sum = sum.mul(sum);
        }
        sum.ldexp(n as i32)
    }

    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive dd");
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            // y += x e^{-y} - 1
            let e = self.mul(y.neg().exp());
            y = y.add(e.sub(Dd::ONE));
        }
        y
    }

    /// self^p for positive self.
    pub fn powf(self, p: f64) -> Dd {
        if p == 0.0 {
            return Dd::ONE;
        }
        self.ln().mul_f64(p).exp()
    }
}

/// Parses a decimal literal digit-by-digit into a Dd (used for constants
/// beyond f64 precision).
pub fn dd_from_decimal(s: &str) -> Dd {
    let mut value = Dd::ZERO;
    let mut frac_scale: Option<Dd> = None;
    let ten = Dd::from_f64(10.0);
    let tenth = Dd::ONE.div(ten);
    let mut negative = false;
    for c in s.chars() {
        match c {
            '-' => negative = true,
            '+' => {}
            '.' => frac_scale = Some(tenth),
            '0'..='9' => {
                let d = Dd::from_f64((c as u8 - b'0') as f64);
                match frac_scale {
                    None => value = value.mul(ten).add(d),
                    Some(scale) => {
                        value = value.add(d.mul(scale));
                        frac_scale = Some(scale.mul(tenth));
                    }
                }
            }
            _ => panic!("bad decimal constant {s:?}"),
        }
    }
    if negative {
        value.neg()
    } else {
        value
    }
}

pub fn pi() -> Dd {
    dd_from_decimal("3.14159265358979323846264338327950288419716939937510582097494459231")
}

pub fn ln2() -> Dd {
    dd_from_decimal("0.69314718055994530941723212145817656807550013436025525412068000949")
}

pub fn euler_gamma() -> Dd {
    dd_from_decimal("0.57721566490153286060651209008240243104215933593992359880576723488")
}

/// sin of small |t| (≤ π/2) by Taylor series.
fn sin_taylor(t: Dd) -> Dd {
    let t2 = t.mul(t);
    let mut term = t;
    let mut sum = t;
    let mut m = 1.0;
    for _ in 0..40 {
        term = term.mul(t2).div_f64(-((m + 1.0) * (m + 2.0)));
        sum = sum.add(term);
        m += 2.0;
        if term.hi.abs() < 1e-40 {
            break;
        }
    }
    sum
}

fn cos_taylor(t: Dd) -> Dd {
    let t2 = t.mul(t);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut m = 0.0;
    for _ in 0..40 {
        term = term.mul(t2).div_f64(-((m + 1.0) * (m + 2.0)));
        sum = sum.add(term);
        m += 2.0;
        if term.hi.abs() < 1e-40 {
            break;
        }
    }
    sum
}

/// `sin(π v)` with exact reduction: exact zeros at integers.
pub fn sin_pi(v: f64) -> Dd {
    let n = v.round();
    let r = v - n;
    let s = sin_taylor(pi().mul_f64(r));
    if (n as i64) % 2 == 0 {
        s
    } else {
        s.neg()
    }
}

/// `sin(π v)` for a dd argument (reduction on the hi part is exact; the lo
/// part rides along).
pub fn sin_pi_dd(v: Dd) -> Dd {
    let n = v.hi.round();
    let r = v.add_f64(-n);
    let s = sin_taylor(pi().mul(r));
    if (n as i64) % 2 == 0 {
        s
    } else {
        s.neg()
    }
}

/// `cos(π v)` with exact reduction: exact zeros at half-integers.
pub fn cos_pi(v: f64) -> Dd {
    let n = v.round();
    let r = v - n;
    let c = if r.abs() <= 0.25 {
        cos_taylor(pi().mul_f64(r))
    } else {
        sin_taylor(pi().mul_f64(0.5 - r.abs()))
    };
    if (n as i64) % 2 == 0 {
        c
    } else {
        c.neg()
    }
}

/// Stirling coefficients B_{2n}/(2n(2n-1)) as exact rationals.
const STIRLING: [(f64, f64); 12] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
];

/// Γ(t) for a Dd argument with t.hi ≥ 0.5: shift to s ≥ 20 and use the
/// Stirling series.
fn gamma_positive(t: Dd) -> Dd {
    let shift = ((20.0 - t.hi).ceil()).max(0.0);
    let mut prod = Dd::ONE;
    let mut j = 0.0;
    while j < shift {
        prod = prod.mul(t.add_f64(j));
        j += 1.0;
    }
    let s = t.add_f64(shift);
    let ln_s = s.ln();
    let mut ln_gamma = s
        .sub(Dd::from_f64(0.5))
        .mul(ln_s)
        .sub(s)
        .add(pi().mul_f64(2.0).ln().mul_f64(0.5));
    let s2 = s.mul(s);
    let mut pow = s;
    for &(num, den) in &STIRLING {
        ln_gamma = ln_gamma.add(Dd::from_f64(num).div_f64(den).div(pow));
        pow = pow.mul(s2);
    }
    ln_gamma.exp().div(prod)
}

/// Γ(t) for any non-pole real t in a modest range.
pub fn gamma(t: f64) -> Dd {
    gamma_at(Dd::from_f64(t))
}

/// Γ at a dd argument; needed where the argument is a sum like ν + 1 whose
/// f64 rounding would otherwise dominate the final error.
pub fn gamma_at(t: Dd) -> Dd {
    if t.hi < 0.5 {
        // reflection: Γ(t) Γ(1-t) = π / sin(πt)
        let one_minus_t = Dd::ONE.sub(t);
        pi().div(sin_pi_dd(t).mul(gamma_positive(one_minus_t)))
    } else {
        gamma_positive(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_beyond_f64() {
        let third = Dd::ONE.div_f64(3.0);
        let one = third.mul_f64(3.0);
        assert!(one.sub(Dd::ONE).to_f64().abs() < 1e-31);
        let r2 = Dd::from_f64(2.0).sqrt();
        assert!(r2.mul(r2).sub(Dd::from_f64(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &v in &[0.1, 1.0, 2.5, 10.0, 40.0] {
            let x = Dd::from_f64(v);
            let back = x.exp().ln();
            assert!(back.sub(x).to_f64().abs() < 1e-29 * (1.0 + v), "{v}");
        }
    }

    #[test]
    fn gamma_known_values() {
        // Γ(1/2) = √π
        let g = gamma(0.5);
        let refv = pi().sqrt();
        assert!(g.sub(refv).to_f64().abs() < 1e-28);
        // Γ(5) = 24
        assert!((gamma(5.0).to_f64() - 24.0).abs() < 1e-13);
        // Γ(-1.5) = 4√π/3 (built with exact dd rational factors)
        let g = gamma(-1.5);
        let refv = pi().sqrt().mul_f64(4.0).div_f64(3.0);
        assert!(g.sub(refv).to_f64().abs() < 1e-28);
    }
}
