//! Main-term residues and their growth in log N.

use num_complex::Complex64;
use spinor_moments::lfun::{FundamentalDiscriminant, KroneckerCharacter};
use spinor_moments::petersson::{leading_coeff_fit, main_term_residue, ResidueOptions};

fn main() -> spinor_moments::Result<()> {
    let fd = FundamentalDiscriminant::new;
    let l1 = |q: i64| -> spinor_moments::Result<f64> {
        Ok(KroneckerCharacter::new(q)?.l_value(Complex64::new(1.0, 0.0))?.re)
    };
    let ns = [1e2, 1e3, 1e4, 1e5];

    for (q1, q2) in [(1, 1), (1, -4)] {
        let fit = leading_coeff_fit(fd(q1)?, fd(q2)?, 10, &ns, ResidueOptions::default())?;
        println!(
            "(q1, q2) = ({q1}, {q2}): degree {} in log N, coefficients {:?}, residual {:.1e}",
            fit.degree, fit.coefficients, fit.residual
        );
    }
    println!("(4/3)·L(1,χ₋₄)² = {:.9}", 4.0 / 3.0 * l1(-4)?.powi(2));
    println!("2·L(1,χ₋₄)³     = {:.9}", 2.0 * l1(-4)?.powi(3));

    let product = 4.0 * l1(5)? * l1(-20)? * l1(13)? * l1(-52)? * l1(65)?;
    for n in ns {
        let r = main_term_residue(fd(5)?, fd(13)?, n, 10)?;
        println!("(5, 13), N = {n:e}: residue {:.12}   L-value product {product:.12}", r.residue);
    }
    Ok(())
}
