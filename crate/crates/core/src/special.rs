//! Gamma-type special functions in double precision.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `B_{2k} / (2k(2k−1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT: f64 = 15.0;

/// `log Γ(z)` for `Re z > 0`, up to a multiple of `2πi` in the imaginary part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "ln_gamma needs Re z > 0, got {z}");
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += c * power;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// `Γ_C(z) = 2(2π)^{−z} Γ(z)`, as a logarithm.
pub fn ln_gamma_c(z: Complex64) -> Complex64 {
    2f64.ln() - z * (2.0 * PI).ln() + ln_gamma(z)
}

/// `Γ(s, x) = (s−1)! e^{−x} Σ_{k<s} x^k/k!` for integer `s ≥ 1`, `x ≥ 0`.
pub fn upper_incomplete_gamma(s: u32, x: f64) -> f64 {
    assert!(s >= 1);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..s {
        term *= x / f64::from(k);
        sum += term;
    }
    let fact: f64 = (1..s).map(f64::from).product();
    fact * (-x).exp() * sum
}
