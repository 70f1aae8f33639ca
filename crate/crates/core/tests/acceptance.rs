//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr
//! (bypassing the test harness capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinor_moments::expsums::{
    congruence_count, gauss_sum, kloosterman, kloosterman_factored, kloosterman_factored_with, kloosterman_pi,
    kloosterman_table, salie, twisted_average, twisted_average_closed_form, SalieSign,
};
use spinor_moments::kernels::{bessel_j, script_j, weight_w, Damping, KernelArg};
use spinor_moments::lfun::{FundamentalDiscriminant, KroneckerCharacter};
use spinor_moments::matcore::arith::ext_gcd;
use spinor_moments::matcore::{gcd, is_go2, HalfIntegralForm, HalfIntegralMatrix, IntMat2};
use spinor_moments::petersson::{
    h_fourier, leading_coeff_fit, main_term_residue, spectral_gram, ResidueOptions, SpectralParams,
};
use spinor_moments::sp4::CosetTable;

fn report(id: &str, what: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[acceptance] criterion {id} {what}: {verdict} ({detail})");
    assert!(pass, "criterion {id} {what}: {detail}");
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn fd(q: i64) -> FundamentalDiscriminant {
    FundamentalDiscriminant::new(q).unwrap()
}

/// Positive-definite forms with `1 ≤ t1, t4 ≤ 3` and `|t2| ≤ 2`.
fn small_forms() -> Vec<HalfIntegralMatrix> {
    let mut out = Vec::new();
    for t1 in 1..=3 {
        for t2 in -2..=2 {
            for t4 in 1..=3 {
                if let Ok(f) = HalfIntegralForm::new(t1, t2, t4) {
                    out.push(f.matrix());
                }
            }
        }
    }
    out
}

#[test]
fn criterion_01_kloosterman_scalar_modulus() {
    let start = Instant::now();
    let forms = small_forms();
    let mut worst = 0f64;
    let mut pairs = 0;
    for p in [3i64, 5, 7] {
        let table = CosetTable::new(&IntMat2::scalar(p)).unwrap();
        for &q in &forms {
            for &t in &forms {
                let brute = kloosterman_table(&table, q, t);
                let formula = kloosterman_pi(q, t, p).unwrap();
                worst = worst.max((brute.value - formula.value).norm());
                pairs += 1;
            }
        }
    }
    let k33 = kloosterman(HalfIntegralMatrix::scalar(1), HalfIntegralMatrix::scalar(1), &IntMat2::scalar(3)).unwrap();
    let pinned = (k33.value - Complex64::new(15.0, 0.0)).norm();
    let elapsed = start.elapsed();
    report(
        "1",
        "K(Q,T;pI) formula vs enumeration",
        worst <= 1e-9 && pinned <= 1e-9 && elapsed < Duration::from_secs(10),
        format!("{pairs} pairs, max defect {worst:.2e}, K(I,I;3I) = {:.12}, {}", k33.value.re, secs(elapsed)),
    );
}

#[test]
fn criterion_02_factorization() {
    let start = Instant::now();
    let forms: Vec<_> = small_forms().into_iter().filter(|f| f.t1 <= 2 && f.t4 <= 2).collect();
    let moduli = [
        IntMat2::IDENTITY,
        IntMat2::diag(1, 2),
        IntMat2::new(1, 1, -1, 1),
        IntMat2::diag(2, 2),
    ];
    let mut worst = 0f64;
    let mut bezout = 0f64;
    let mut cases = 0;
    for c in moduli {
        assert_eq!(gcd(c.det(), 3), 1);
        let table = CosetTable::new(&c.scale(3)).unwrap();
        let (_, s, t) = ext_gcd(3, c.det());
        for &q in &forms {
            for &tm in &forms {
                let brute = kloosterman_table(&table, q, tm).value;
                let split = kloosterman_factored(q, tm, 3, &c).unwrap().value;
                worst = worst.max((brute - split).norm());
                for j in [-2i64, 1, 5] {
                    let other = kloosterman_factored_with(q, tm, 3, &c, s + j * c.det(), t - 3 * j).unwrap().value;
                    bezout = bezout.max((other - split).norm());
                }
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "2",
        "K(Q,T;NC) factorization",
        worst <= 1e-9 && bezout <= 1e-9 && elapsed < Duration::from_secs(60),
        format!("{cases} cases, max defect {worst:.2e}, Bézout spread {bezout:.2e}, {}", secs(elapsed)),
    );
}

fn random_unimodular(rng: &mut impl Rng) -> IntMat2 {
    let mut u = if rng.gen_bool(0.5) { IntMat2::IDENTITY } else { IntMat2::diag(1, -1) };
    for _ in 0..rng.gen_range(1..4) {
        let k = rng.gen_range(-2..=2);
        let e = if rng.gen_bool(0.5) { IntMat2::new(1, k, 0, 1) } else { IntMat2::new(1, 0, k, 1) };
        u = u * e;
    }
    u
}

#[test]
fn criterion_03_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0f64;
    let mut n = 0;
    while n < 100 {
        let c = IntMat2::new(
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
        );
        if c.det() == 0 || c.det().abs() > 12 {
            continue;
        }
        let q = HalfIntegralMatrix::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let t = HalfIntegralMatrix::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let u = random_unimodular(&mut rng);
        let v = random_unimodular(&mut rng);
        let moved = u.inverse_unimodular().unwrap() * c * v.inverse_unimodular().unwrap();
        let lhs = kloosterman(q, t, &moved).unwrap().value;
        let rhs = kloosterman(q.congruent_t(&u), t.congruent(&v), &c).unwrap().value;
        worst = worst.max((lhs - rhs).norm());
        n += 1;
    }
    report("3", "equivariance under U, V", worst <= 1e-9, format!("{n} instances, max defect {worst:.2e}"));
}

#[test]
fn criterion_04_congruence_main_case() {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut pass = true;
    for n in [3i64, 7, 11] {
        let got = congruence_count(n, 2, 0, 2 + n, 0, n, 1, 1).unwrap() as i64;
        pass &= got == n * n - 2 * n;
        detail.push(format!("N={n}: {got} vs N²−2N = {}", n * n - 2 * n));
    }
    let elapsed = start.elapsed();
    report(
        "4",
        "main-case count equals N²−2N",
        pass && elapsed < Duration::from_secs(5),
        format!("{}, {}", detail.join("; "), secs(elapsed)),
    );
}

#[test]
fn criterion_04_congruence_off_main_and_ab_independence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_excess = i64::MIN;
    let mut n_cases = 0;
    while n_cases < 200 {
        let n = [3i64, 7, 11][rng.gen_range(0..3)];
        let (c1, c2, c4, h1, h2) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        let (a, b) = (rng.gen_range(1..n), rng.gen_range(1..n));
        let main = h1 == 0 && h2 == 0 && c1 == c4 && c2 == 0;
        if main || (4 * c1 * c4 - c2 * c2).rem_euclid(n) == 0 {
            continue;
        }
        let got = congruence_count(n, c1, c2, c4, h1, h2, a, b).unwrap() as i64;
        worst_excess = worst_excess.max(got - (n + 1));
        n_cases += 1;
    }
    let mut spread = 0;
    for n in [3i64, 7, 11] {
        let counts: Vec<u64> = (1..n)
            .flat_map(|a| (1..n).map(move |b| (a, b)))
            .map(|(a, b)| congruence_count(n, 1, 0, 1, 0, 0, a, b).unwrap())
            .collect();
        spread = spread.max(counts.iter().max().unwrap() - counts.iter().min().unwrap());
    }
    let elapsed = start.elapsed();
    report(
        "4",
        "off-main counts ≤ N+1 and (a,b)-independence",
        worst_excess <= 0 && spread == 0 && elapsed < Duration::from_secs(5),
        format!("{n_cases} off-main cases, max count − (N+1) = {worst_excess}, (a,b) spread {spread}, {}", secs(elapsed)),
    );
}

#[test]
fn criterion_05_twisted_average() {
    let start = Instant::now();
    let mut moduli = Vec::new();
    for x in -10i64..=10 {
        for y in -10i64..=10 {
            for c in [IntMat2::new(x, y, -y, x), IntMat2::new(x, y, y, -x)] {
                if c.det() != 0 && c.det().abs() <= 10 && is_go2(&c) {
                    moduli.push(c);
                }
            }
        }
    }
    let qs = [1i64, -4, 5];
    let mut worst = 0f64;
    let mut cases = 0;
    for &q1 in &qs {
        for &q2 in &qs {
            if gcd(q1, q2) != 1 {
                continue;
            }
            for c in &moduli {
                let lhs = twisted_average(c, fd(q1), fd(q2)).unwrap().value;
                let rhs = twisted_average_closed_form(c, fd(q1), fd(q2)).unwrap() as f64;
                worst = worst.max((lhs - rhs).norm());
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "5",
        "twisted average closed form",
        worst <= 1e-9 && elapsed < Duration::from_secs(120),
        format!("{} moduli, {cases} cases, max defect {worst:.2e}, {}", moduli.len(), secs(elapsed)),
    );
}

#[test]
fn criterion_06_gauss_salie_bounds() {
    let mut gauss_ratio = 0f64;
    for c in 1i64..=50 {
        for a in 0..c {
            for b in 0..c {
                let g = gauss_sum(a, b, c).unwrap().value.norm();
                let bound = ((gcd(a, c) * c) as f64).sqrt() * 2f64.sqrt();
                gauss_ratio = gauss_ratio.max(g / bound);
            }
        }
    }
    let forms = small_forms();
    let mut nonzero_off = 0f64;
    let mut salie_ratio = 0f64;
    for c in 1i64..=20 {
        for &p in &forms {
            for &s in &forms {
                for sign in [SalieSign::Plus, SalieSign::Minus] {
                    let h = salie(p, s, c, sign).unwrap().value.norm();
                    if s.t4 != p.t4 {
                        nonzero_off = nonzero_off.max(h);
                    } else {
                        let bound = (c as f64).powf(1.5) * (gcd(c, s.t4) as f64).sqrt();
                        salie_ratio = salie_ratio.max(h / bound);
                    }
                }
            }
        }
    }
    report(
        "6",
        "Gauss and Salié bounds",
        gauss_ratio <= 1.0 + 1e-12 && nonzero_off <= 1e-9 && salie_ratio <= 1.0 + 1e-12,
        format!(
            "max |G|/bound {gauss_ratio:.4}, max |H| with s4≠p4 {nonzero_off:.1e}, max |H|/bound {salie_ratio:.4}"
        ),
    );
}

#[test]
fn criterion_07_bessel_closed_forms() {
    let mut worst = 0f64;
    for i in 0..=2000 {
        let x = 0.1 + (100.0 - 0.1) * i as f64 / 2000.0;
        let pre = (2.0 / (PI * x)).sqrt();
        let j12 = pre * x.sin();
        let j32 = pre * (x.sin() / x - x.cos());
        worst = worst.max((bessel_j(0.5, x).unwrap() - j12).abs());
        worst = worst.max((bessel_j(1.5, x).unwrap() - j32).abs());
    }
    report("7", "J_{1/2}, J_{3/2} closed forms", worst <= 1e-10, format!("max defect {worst:.2e} on [0.1, 100]"));
}

/// Largest `|𝒥_ℓ(P)| / envelope(P)` over eigenvalues on a log grid in `[10⁻², 10]²`.
fn kernel_envelope_constant(envelope: impl Fn(f64, f64) -> f64) -> (f64, (f64, f64)) {
    let ell = 8.5;
    let grid: Vec<f64> = (0..=60).map(|i| 10f64.powf(-2.0 + 3.0 * i as f64 / 60.0)).collect();
    let mut best = (0f64, (0.0, 0.0));
    for &a in &grid {
        for &b in &grid {
            let j = script_j(ell, &KernelArg::new(a, b).unwrap()).abs();
            let r = j / envelope(a, b);
            if r > best.0 {
                best = (r, (a, b));
            }
        }
    }
    best
}

#[test]
fn criterion_07_kernel_envelope_product() {
    let ell = 8.5;
    let (c, at) = kernel_envelope_constant(|a, b| (a * b).sqrt().powf(ell));
    report(
        "7",
        "|𝒥| ≤ c·(s1s2)^ℓ with c ≤ 10",
        c <= 10.0,
        format!("recorded c = {c:.3} at eigenvalues {at:?}"),
    );
}

#[test]
fn criterion_07_kernel_envelope_trace() {
    let ell = 8.5;
    let (c, at) = kernel_envelope_constant(|a, b| (a * b).powf(ell / 2.0) * (a + b).powf(-ell / 2.0 - 0.25));
    report(
        "7",
        "|𝒥| ≤ c·det^{ℓ/2}·tr^{−ℓ/2−1/4} with c ≤ 10",
        c <= 10.0,
        format!("recorded c = {c:.3} at eigenvalues {at:?}"),
    );
}

#[test]
fn criterion_07_weight_near_zero() {
    let w = weight_w(1e-3, 10, Damping::OneMinusSSquared).unwrap();
    report(
        "7",
        "W(1e-3, k=10) = 1 ± 1e-5",
        (w.value - 1.0).abs() <= 1e-5,
        format!("W = {:.10}, |W − 1| = {:.3e}", w.value, (w.value - 1.0).abs()),
    );
}

#[test]
fn criterion_07_weight_decay() {
    let w = weight_w(100.0, 10, Damping::OneMinusSSquared).unwrap();
    report("7", "W(100, k=10) ≤ 1e-6", w.value.abs() <= 1e-6, format!("W = {:.3e}", w.value));
}

fn l1(q: i64) -> f64 {
    KroneckerCharacter::new(q).unwrap().l_value(Complex64::new(1.0, 0.0)).unwrap().re
}

const SAMPLE_LEVELS: [f64; 4] = [1e2, 1e3, 1e4, 1e5];

#[test]
fn criterion_08_trivial_characters() {
    let start = Instant::now();
    let fit = leading_coeff_fit(fd(1), fd(1), 10, &SAMPLE_LEVELS, ResidueOptions::default()).unwrap();
    let target = 4.0 / 3.0 * l1(-4).powi(2);
    let elapsed = start.elapsed();
    report(
        "8",
        "cubic leading coefficient (q1 = q2 = 1)",
        (fit.leading - 0.8224670).abs() <= 1e-4 && (target - 0.8224670).abs() <= 1e-7 && elapsed < Duration::from_secs(60),
        format!("fit {:.9}, (4/3)L(1,χ₋₄)² = {target:.9}, {}", fit.leading, secs(elapsed)),
    );
}

#[test]
fn criterion_08_mixed_characters() {
    let start = Instant::now();
    let fit = leading_coeff_fit(fd(1), fd(-4), 10, &SAMPLE_LEVELS, ResidueOptions::default()).unwrap();
    let elapsed = start.elapsed();
    report(
        "8",
        "mixed leading coefficient 2·L(1,χ₋₄)² = 1.2337006 (q1 = 1, q2 = −4)",
        (fit.leading - 1.2337006).abs() <= 1e-4 && elapsed < Duration::from_secs(60),
        format!(
            "fit degree {} leading {:.9}; 2L² = {:.9}, 2L³ = {:.9}, {}",
            fit.degree,
            fit.leading,
            2.0 * l1(-4).powi(2),
            2.0 * l1(-4).powi(3),
            secs(elapsed)
        ),
    );
}

#[test]
fn criterion_08_coprime_nontrivial() {
    let start = Instant::now();
    let expected = 4.0 * l1(5) * l1(-20) * l1(13) * l1(-52) * l1(65);
    let residues: Vec<f64> = SAMPLE_LEVELS
        .iter()
        .map(|&n| main_term_residue(fd(5), fd(13), n, 10).unwrap().residue)
        .collect();
    let to_product = residues.iter().map(|r| (r - expected).abs()).fold(0.0, f64::max);
    let spread = residues.iter().cloned().fold(f64::MIN, f64::max) - residues.iter().cloned().fold(f64::MAX, f64::min);
    let elapsed = start.elapsed();
    report(
        "8",
        "five-L product residue (q1 = 5, q2 = 13)",
        to_product <= 1e-6 && spread <= 1e-8 && elapsed < Duration::from_secs(60),
        format!("product {expected:.10}, max defect {to_product:.2e}, N-spread {spread:.2e}, {}", secs(elapsed)),
    );
}

#[test]
fn criterion_09_spectral_consistency() {
    let start = Instant::now();
    let params = SpectralParams::new(10, 3).unwrap();
    let id = HalfIntegralForm::identity();
    let forms = [id, HalfIntegralForm::diag(1, 2).unwrap()];
    let gram = spectral_gram(&forms, &params).unwrap();
    let h = h_fourier(&id, &id, &params).unwrap();
    let eps = h.total - Complex64::new(8.0, 0.0);
    let elapsed = start.elapsed();
    report(
        "9",
        "Hermitian Gram matrix and h_I(I) = 8 + ε",
        gram.hermitian_defect <= gram.tail_budget && eps.norm() < 1.0 && elapsed < Duration::from_secs(600),
        format!(
            "defect {:.3e} ≤ budget {:.3e}, h_I(I) = {:.9}, |ε| = {:.4}, {}",
            gram.hermitian_defect,
            gram.tail_budget,
            h.total.re,
            eps.norm(),
            secs(elapsed)
        ),
    );
}

/// CLI invocations covering criteria 1–9.
fn cli_workload() -> Vec<Vec<&'static str>> {
    let mut runs: Vec<Vec<&'static str>> = vec![
        vec!["kloosterman", "--q", "1,0,1", "--t", "1,0,1", "--c", "3,0;0,3"],
        vec!["kloosterman", "--q", "1,1,2", "--t", "2,-1,3", "--c", "7,0;0,7", "--method", "pI"],
        vec!["kloosterman", "--q", "1,1,2", "--t", "2,-1,3", "--c", "1,1;-1,1", "--method", "factored", "--n", "3"],
        vec!["kloosterman", "--q", "1,1,2", "--t", "2,-1,3", "--c", "3,3;-3,3"],
        vec!["kloosterman", "--q", "2,1,1", "--t", "1,0,3", "--c", "2,-3;1,4"],
        vec!["count", "--n", "7", "--c1", "2", "--c2", "0", "--c4", "9", "--h1", "0", "--h2", "7"],
        vec!["count", "--n", "11", "--c1", "3", "--c2", "1", "--c4", "5", "--h1", "2", "--h2", "4", "--a", "3"],
        vec!["twisted", "--c", "2,1;-1,2", "--q1", "1", "--q2", "1"],
        vec!["twisted", "--c", "3,1;1,-3", "--q1", "-4", "--q2", "5"],
        vec!["gauss", "--a", "6", "--b", "5", "--c", "45"],
        vec!["salie", "--p", "1,1,2", "--s", "3,-1,2", "--c", "12", "--sign", "-"],
        vec!["besselkernel", "--eig", "0.4,0.5"],
        vec!["besselkernel", "--x", "7.5", "--nu", "1.5"],
        vec!["weight", "--x", "0.001"],
        vec!["weight", "--x", "100"],
        vec!["fit", "--q1", "1", "--q2", "1"],
        vec!["fit", "--q1", "1", "--q2", "-4"],
        vec!["mainterm", "--q1", "5", "--q2", "13", "--n", "1000"],
        vec!["hqt", "--q", "1,0,1", "--t", "1,0,1"],
        vec!["gram", "--forms", "1,0,1", "1,0,2"],
    ];
    runs.push(vec!["verify", "--module", "all"]);
    runs
}

fn run_workload(threads: &str) -> Vec<u8> {
    let mut out = Vec::new();
    for args in cli_workload() {
        let o = Command::new(env!("CARGO_BIN_EXE_spinor-moments"))
            .args(["--format", "json", "--threads", threads])
            .args(&args)
            .output()
            .expect("binary runs");
        assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
        out.extend_from_slice(&o.stdout);
    }
    out
}

#[test]
fn criterion_10_thread_determinism() {
    let start = Instant::now();
    let one = run_workload("1");
    let eight = run_workload("8");
    let first_diff = one.iter().zip(&eight).position(|(a, b)| a != b);
    let elapsed = start.elapsed();
    report(
        "10",
        "byte-identical JSON with 1 and 8 threads",
        one == eight && !one.is_empty(),
        format!("{} bytes, first difference at {first_diff:?}, {}", one.len(), secs(elapsed)),
    );
}
