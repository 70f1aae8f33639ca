//! Counting solutions of the level-N congruences and character-twisted averages over GO₂(ℤ).

use spinor_moments::expsums::{congruence_count, twisted_average, twisted_average_closed_form};
use spinor_moments::lfun::FundamentalDiscriminant;
use spinor_moments::matcore::IntMat2;

fn main() -> spinor_moments::Result<()> {
    println!("main case (h1 = h2 = 0, c1 = c4, c2 = 0):");
    for n in [3i64, 7, 11, 19] {
        let count = congruence_count(n, 1, 0, 1, 0, 0, 1, 1)?;
        println!("  N = {n:2}: {count:4}   (N² = {})", n * n);
    }
    println!("off the main case:");
    for (n, c1, c2, c4, h1, h2) in [(7, 1, 2, 3, 1, 0), (11, 2, 1, 5, 0, 3), (19, 4, 0, 1, 0, 0)] {
        let count = congruence_count(n, c1, c2, c4, h1, h2, 1, 1)?;
        println!("  N = {n:2}, c = ({c1},{c2},{c4}), h = ({h1},{h2}): {count}   (N + 1 = {})", n + 1);
    }

    let fd = FundamentalDiscriminant::new;
    for c in [IntMat2::new(1, 1, -1, 1), IntMat2::new(2, 1, -1, 2), IntMat2::new(3, 1, 1, -3)] {
        for (q1, q2) in [(1, 1), (1, -4), (5, -4)] {
            let avg = twisted_average(&c, fd(q1)?, fd(q2)?)?;
            let closed = twisted_average_closed_form(&c, fd(q1)?, fd(q2)?)?;
            println!("C = {c}, (q1, q2) = ({q1}, {q2}): {:.6}   closed form {closed}", avg.value);
        }
    }
    Ok(())
}
