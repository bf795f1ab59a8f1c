//! Gamma function for real arguments (Lanczos approximation, g = 7, n = 9).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real `x`; poles at non-positive integers return infinity.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // reflection: Γ(x) Γ(1-x) = π / sin(πx)
        let s = (PI * x).sin();
        PI / (s * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let cases = [
            (0.5, PI.sqrt()),
            (1.0, 1.0),
            (1.5, PI.sqrt() / 2.0),
            (2.0, 1.0),
            (5.0, 24.0),
            (2.5, 3.0 * PI.sqrt() / 4.0),
            // Γ(1/3), Γ(2/3)
            (1.0 / 3.0, 2.678_938_534_707_747_6),
            (2.0 / 3.0, 1.354_117_939_426_400_4),
            // Γ(-0.5) = -2√π
            (-0.5, -2.0 * PI.sqrt()),
            (-1.5, 4.0 * PI.sqrt() / 3.0),
        ];
        for &(x, expected) in &cases {
            let rel = (gamma(x) - expected).abs() / expected.abs();
            assert!(rel < 5e-15, "gamma({x}) = {} vs {expected}", gamma(x));
        }
    }

    #[test]
    fn poles_give_infinity() {
        assert!(gamma(0.0).is_infinite());
        assert!(gamma(-3.0).is_infinite());
    }
}
