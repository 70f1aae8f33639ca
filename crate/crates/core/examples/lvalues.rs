//! Dirichlet coefficients r_q(n) and L-values of real characters.

use std::f64::consts::PI;

use num_complex::Complex64;
use spinor_moments::lfun::{dirichlet_l, r_coeff, FundamentalDiscriminant};

fn main() -> spinor_moments::Result<()> {
    for q in [1, -4, 5] {
        let fd = FundamentalDiscriminant::new(q)?;
        let coeffs: Vec<String> = (1..=12).map(|n| r_coeff(fd, n).map(|r| format!("{r:.3}"))).collect::<Result<_, _>>()?;
        println!("r_{q}(1..12) = [{}]", coeffs.join(", "));
    }

    let l = |q: i64, s: Complex64| dirichlet_l(s, FundamentalDiscriminant::new(q)?).map(|v| v.value);
    println!("L(1, χ₋₄) = {:.15}   π/4 = {:.15}", l(-4, 1.0.into())?.re, PI / 4.0);
    println!("L(2, χ₁)  = {:.15}   π²/6 = {:.15}", l(1, 2.0.into())?.re, PI * PI / 6.0);
    println!("L(1, χ₅)  = {:.15}", l(5, 1.0.into())?.re);
    let rho = Complex64::new(0.5, 14.134725141734693);
    println!("|ζ(1/2 + 14.1347i)| = {:.3e}", l(1, rho)?.norm());
    Ok(())
}
