//! Quadratic Gauss sums and Salié sums with their classical bounds.

use spinor_moments::expsums::{gauss_sum, salie, SalieSign};
use spinor_moments::matcore::{gcd, HalfIntegralMatrix};

fn main() -> spinor_moments::Result<()> {
    for c in [5, 12, 45] {
        let g = gauss_sum(6, 5, c)?;
        let bound = ((gcd(6, c) * c) as f64).sqrt() * 2f64.sqrt();
        println!("G(6, 5; {c}) = {:.6}, |G| = {:.4} ≤ {bound:.4}", g.value, g.value.norm());
    }

    let p = HalfIntegralMatrix::new(1, 1, 2);
    let s = HalfIntegralMatrix::new(3, -1, 2);
    for c in [3, 7, 12, 20] {
        let bound = (c as f64).powf(1.5) * (gcd(c, s.t4) as f64).sqrt();
        for sign in [SalieSign::Plus, SalieSign::Minus] {
            let h = salie(p, s, c, sign)?;
            println!("H{}(P, S; {c}) = {:.6}  |H| = {:.4} ≤ {bound:.4}", if sign == SalieSign::Plus { "+" } else { "-" }, h.value, h.value.norm());
        }
    }
    // different (2,2) entries: the sum vanishes identically
    let h = salie(p, HalfIntegralMatrix::new(3, -1, 1), 7, SalieSign::Plus)?;
    println!("s4 ≠ p4: H = {:.3e}", h.value.norm());
    Ok(())
}
