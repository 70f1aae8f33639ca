//! Fourier coefficients of Poincaré series at level 3 and the spectral Gram matrix.

use spinor_moments::matcore::HalfIntegralForm;
use spinor_moments::petersson::{h_fourier, rank1_completion_defect, spectral_gram, SpectralParams};

fn main() -> spinor_moments::Result<()> {
    let params = SpectralParams::new(10, 3)?;
    let id = HalfIntegralForm::identity();
    let d12 = HalfIntegralForm::diag(1, 2)?;

    for (q, t) in [(id, id), (id, d12), (d12, id), (d12, d12)] {
        let h = h_fourier(&q, &t, &params)?;
        println!(
            "Q = {q}, T = {t}: total {:.10} {:+.3e}i  (diag {}, rank-1 {:.3e}, rank-2 {:.3e}, tail ≤ {:.1e})",
            h.total.re,
            h.total.im,
            h.diagonal.re,
            h.rank1.re,
            h.rank2.re,
            h.tail_bound
        );
        println!("    rank-2 shells by |det C′|: {:?}", h.rank2_shells);
    }

    let defect = rank1_completion_defect(&id, &d12, &params)?;
    println!("rank-1 completion defect: {defect:.2e}");

    let g = spectral_gram(&[id, d12], &params)?;
    println!("c_N = {:.6e}", g.normalization.value);
    for row in &g.matrix {
        let cells: Vec<String> = row.iter().map(|z| format!("{:.6e}{:+.2e}i", z.re, z.im)).collect();
        println!("  [{}]", cells.join(", "));
    }
    println!(
        "Hermitian defect {:.3e}, tail budget {:.3e}, min eigenvalue {:.6e}",
        g.hermitian_defect, g.tail_budget, g.min_eigenvalue
    );
    Ok(())
}
