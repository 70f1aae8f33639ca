//! Bessel functions of half-integral order and the double-Bessel kernel.

use std::f64::consts::PI;

use spinor_moments::kernels::bessel::bessel_j_schlafli;
use spinor_moments::kernels::{bessel_j, script_j, script_j_fixed, BesselOrder, KernelArg};
use spinor_moments::matcore::{HalfIntegralMatrix, IntMat2};

fn main() -> spinor_moments::Result<()> {
    for x in [0.5, 5.0, 50.0] {
        let closed = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
        println!("J_3/2({x}) = {:.15}   closed form {closed:.15}", bessel_j(1.5, x)?);
    }

    let ell = BesselOrder::from_weight(10)?.ell();
    for x in [1.0, 10.0, 40.0] {
        println!("J_{ell}({x}) = {:.15e}   integral {:.15e}", bessel_j(ell, x)?, bessel_j_schlafli(ell, x)?);
    }

    // kernel argument T·C⁻¹·Q·C⁻ᵀ for T = Q = I and a few moduli
    let id = HalfIntegralMatrix::scalar(1);
    for c in [IntMat2::scalar(3), IntMat2::new(3, 3, -3, 3), IntMat2::new(3, 0, 3, 6)] {
        let arg = KernelArg::from_forms(&id, &id, &c)?;
        println!(
            "C = {c}: eigenvalues ({:.4}, {:.4}), kernel {:.6e} (fixed grid {:.6e})",
            arg.s1_sq,
            arg.s2_sq,
            script_j(ell, &arg),
            script_j_fixed(ell, &arg, 256)
        );
    }

    // ratios against the two envelopes (s1s2)^ℓ and det^{ℓ/2} tr^{−ℓ/2−1/4}
    for (a, b) in [(0.01f64, 0.01f64), (0.1, 1.0), (0.5, 0.5), (5.0, 8.0)] {
        let j = script_j(ell, &KernelArg::new(a, b)?).abs();
        let product = j / (a * b).sqrt().powf(ell);
        let trace = j / ((a * b).powf(ell / 2.0) * (a + b).powf(-ell / 2.0 - 0.25));
        println!("eigenvalues ({a}, {b}): |𝒥|/(s1s2)^ℓ = {product:.3}, |𝒥|/trace envelope = {trace:.3}");
    }
    Ok(())
}
