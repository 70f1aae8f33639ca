//! The smooth weight W(x) of the approximate functional equation.

use spinor_moments::kernels::{weight_w, Damping};

fn main() -> spinor_moments::Result<()> {
    println!("{:>10} {:>22} {:>22}", "x", "(1-s²)", "(1-s)²");
    for x in [1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0] {
        let a = weight_w(x, 10, Damping::OneMinusSSquared)?;
        let b = weight_w(x, 10, Damping::OneMinusSAllSquared)?;
        println!("{x:>10} {:>22.15} {:>22.15}", a.value, b.value);
    }
    let w = weight_w(1e-3, 10, Damping::OneMinusSSquared)?;
    println!("contour truncation bound at x = 1e-3: {:.2e}", w.truncation_bound);
    Ok(())
}
