use num_complex::Complex64;
use proptest::prelude::*;

use spinor_moments::expsums::{kloosterman, kloosterman_via_smith};
use spinor_moments::kernels::{script_j, script_j_fixed, shell_sum, weight_w, Damping, KernelArg, TruncationBox};
use spinor_moments::lfun::{dirichlet_l, FundamentalDiscriminant};
use spinor_moments::matcore::arith::is_prime;
use spinor_moments::matcore::{HalfIntegralMatrix, IntMat2};
use spinor_moments::sp4::{coset_count, CosetCache};

fn unimodular() -> impl Strategy<Value = IntMat2> {
    prop::collection::vec((any::<bool>(), -2i64..=2), 1..4).prop_map(|steps| {
        steps.into_iter().fold(IntMat2::IDENTITY, |u, (upper, k)| {
            u * if upper { IntMat2::new(1, k, 0, 1) } else { IntMat2::new(1, 0, k, 1) }
        })
    })
}

fn modulus() -> impl Strategy<Value = IntMat2> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_map(|(a, b, c, d)| IntMat2::new(a, b, c, d))
        .prop_filter("nonsingular, small determinant", |c| c.det() != 0 && c.det().abs() <= 10)
}

fn half_integral() -> impl Strategy<Value = HalfIntegralMatrix> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| HalfIntegralMatrix::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kloosterman_equivariance(q in half_integral(), t in half_integral(), c in modulus(), u in unimodular(), v in unimodular()) {
        let moved = u.inverse_unimodular().unwrap() * c * v.inverse_unimodular().unwrap();
        let lhs = kloosterman(q, t, &moved).unwrap().value;
        let rhs = kloosterman(q.congruent_t(&u), t.congruent(&v), &c).unwrap().value;
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn kloosterman_smith_route(q in half_integral(), t in half_integral(), c in modulus()) {
        let cache = CosetCache::new();
        let direct = kloosterman(q, t, &c).unwrap().value;
        let smith = kloosterman_via_smith(q, t, &c, |c1, c2| cache.get(c1, c2)).unwrap().value;
        prop_assert!((direct - smith).norm() < 1e-9);
    }

    #[test]
    fn kloosterman_is_real_for_symmetric_swap(q in half_integral(), c in modulus()) {
        // D ↦ −D pairs each coset with its negative, so K(Q, Q; C) is real for C = Cᵀ
        let c = IntMat2::new(c.a, c.b, c.b, c.d);
        prop_assume!(c.det() != 0);
        let k = kloosterman(q, q, &c).unwrap().value;
        prop_assert!(k.im.abs() < 1e-9);
    }

    #[test]
    fn coset_count_depends_on_elementary_divisors(c in modulus(), u in unimodular(), v in unimodular()) {
        prop_assert_eq!(coset_count(&c).unwrap(), coset_count(&(u * c * v)).unwrap());
    }

    #[test]
    fn kernel_quadrature_resolution(a in 0.01f64..20.0, b in 0.01f64..20.0) {
        let arg = KernelArg::new(a, b).unwrap();
        let coarse = script_j_fixed(8.5, &arg, 128);
        let fine = script_j_fixed(8.5, &arg, 256);
        prop_assert!((coarse - fine).abs() < 1e-10);
        prop_assert!((script_j(8.5, &arg) - fine).abs() < 1e-10);
    }

    #[test]
    fn kernel_is_symmetric(a in 0.01f64..20.0, b in 0.01f64..20.0) {
        let x = script_j(8.5, &KernelArg::new(a, b).unwrap());
        let y = script_j(8.5, &KernelArg::new(b, a).unwrap());
        prop_assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn weight_decays_like_inverse_cube() {
    let mut worst = 0f64;
    for i in 0..=60 {
        let x = 10f64.powf(-3.0 + 6.0 * i as f64 / 60.0);
        let w = weight_w(x, 10, Damping::OneMinusSSquared).unwrap();
        worst = worst.max(w.value.abs() * (1.0 + x).powi(3));
    }
    // recorded constant for W(x)(1 + x)³ on [1e-3, 1e3]
    assert!(worst < 5.0, "{worst}");
}

#[test]
fn l_values_match_euler_product_at_three() {
    for q in [1i64, -4, 5, -3, 8, 13, -20] {
        let chi = FundamentalDiscriminant::new(q).unwrap();
        let mut euler = Complex64::new(1.0, 0.0);
        for p in (2..5000i64).filter(|&p| is_prime(p)) {
            euler /= 1.0 - chi.chi(p) as f64 / (p as f64).powi(3);
        }
        let l = dirichlet_l(Complex64::new(3.0, 0.0), chi).unwrap().value;
        // primes above 5000 contribute about Σ p⁻³ < 3e-9
        assert!((l - euler).norm() < 1e-8, "q = {q}: {l} vs {euler}");
    }
}

#[test]
fn rank2_shells_decay() {
    let b = TruncationBox::with_bound(2);
    let (inner, n_inner) = shell_sum(1, 1, 3, 8.5, &b, 1).unwrap();
    let (outer, n_outer) = shell_sum(1, 1, 3, 8.5, &TruncationBox::with_bound(3), 1).unwrap();
    assert!(n_inner > 0 && n_outer > 0);
    assert!(outer < inner, "{outer} vs {inner}");
}
