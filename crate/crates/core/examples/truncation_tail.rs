//! The rank-2 truncation box and the size of the neglected tail.

use spinor_moments::kernels::{default_beta, tail_diagnostic, truncation_set, BesselOrder, TruncationBox};

fn main() -> spinor_moments::Result<()> {
    let ell = BesselOrder::from_weight(10)?.ell();
    let beta = default_beta(ell);
    for n in [3, 7, 11, 101] {
        let b = TruncationBox::with_default_beta(n, ell)?;
        println!("N = {n:3}: β = {beta:.4}, bound M = {}, {} moduli", b.bound, truncation_set(&b).len());
    }

    let r = tail_diagnostic(1, 1, 3, 10, beta, 1)?;
    println!(
        "N = 3 shell (entries ≤ M + {}, |det| ≤ {}): {} moduli, Σ|h| = {:.3e}, predicted {:.3e}",
        r.shell.width, r.shell.det_cap, r.shell_size, r.observed, r.predicted
    );
    for s in &r.samples {
        println!(
            "  C = {}: reduced A = {:?}, count ratio {:.2}, sum ratio {:.3}",
            s.modulus, s.reduced, s.count_ratio, s.sum_ratio
        );
    }
    Ok(())
}
