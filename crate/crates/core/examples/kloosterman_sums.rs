//! Symplectic Kloosterman sums by every available route.

use spinor_moments::expsums::{kloosterman, kloosterman_factored, kloosterman_pi, kloosterman_via_smith};
use spinor_moments::matcore::{elementary_divisors, HalfIntegralForm, IntMat2};
use spinor_moments::sp4::{coset_count, CosetCache};

fn main() -> spinor_moments::Result<()> {
    let q = HalfIntegralForm::identity().matrix();
    let t = HalfIntegralForm::new(1, 1, 2)?.matrix();

    for p in [3, 5, 7] {
        let c = IntMat2::scalar(p);
        let brute = kloosterman(q, t, &c)?;
        let formula = kloosterman_pi(q, t, p)?;
        println!(
            "K(I, T; {p}I): enumeration {:.6} ({} cosets), triple sum {:.6}",
            brute.value, brute.terms, formula.value
        );
    }

    // modulus 3·C with gcd(det C, 3) = 1 splits into a level part and a cofactor part
    let c = IntMat2::new(1, 1, -1, 1);
    let whole = kloosterman(q, t, &c.scale(3))?;
    let split = kloosterman_factored(q, t, 3, &c)?;
    println!("K(I, T; 3C) for C = {c}: {:.6} directly, {:.6} factored", whole.value, split.value);

    let cache = CosetCache::new();
    for c in [IntMat2::new(2, 1, 0, 3), IntMat2::new(4, -2, 1, 5)] {
        let (c1, c2, _, _) = elementary_divisors(&c)?;
        let direct = kloosterman(q, t, &c)?;
        let smith = kloosterman_via_smith(q, t, &c, |a, b| cache.get(a, b))?;
        println!(
            "C = {c} ~ diag({c1}, {c2}), {} cosets: {:.6} directly, {:.6} via diag",
            coset_count(&c)?,
            direct.value,
            smith.value
        );
    }
    Ok(())
}
