//! Complex log-gamma.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` (Lanczos, with reflection for `Re z < 1/2`). The imaginary
/// part is only defined modulo `2π`, which is all `exp` needs.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let one = Complex64::new(1.0, 0.0);
        return Complex64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - ln_gamma(one - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re
}

/// `Γ_ℂ(s) = 2(2π)^{−s}Γ(s)`, as a logarithm.
pub fn ln_gamma_c(s: Complex64) -> Complex64 {
    2f64.ln() - s * (2.0 * PI).ln() + ln_gamma(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values() {
        assert!(ln_gamma_real(1.0).abs() < 1e-14);
        assert!(ln_gamma_real(2.0).abs() < 1e-14);
        assert!((ln_gamma_real(0.5) - PI.sqrt().ln()).abs() < 1e-14);
        // Γ(10) = 9!
        assert!((ln_gamma_real(10.0) - 362880f64.ln()).abs() < 1e-12);
        assert!((ln_gamma_real(9.5).exp() / 119292.46199460902 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn recurrence_and_reflection() {
        for z in [Complex64::new(0.3, 2.0), Complex64::new(2.0, -7.5), Complex64::new(-1.3, 0.4)] {
            let lhs = (ln_gamma(z + 1.0) - ln_gamma(z)).exp();
            assert!((lhs - z).norm() < 1e-12 * z.norm().max(1.0), "{z}");
        }
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 1.7;
        let g = ln_gamma(Complex64::new(0.0, y)).exp();
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() < 1e-13);
    }
}
