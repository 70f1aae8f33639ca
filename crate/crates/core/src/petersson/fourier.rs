//! The Fourier coefficient `h_Q(T)·(det T)^{k/2−3/4}` of a Poincaré series.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::params::SpectralParams;
use crate::error::Result;
use crate::expsums::{kloosterman_via_smith, salie, SalieSign};
use crate::kernels::gamma::ln_gamma_real;
use crate::kernels::{bessel_j, script_j, shell_sum, truncation_set, KernelArg};
use crate::matcore::arith::{ext_gcd, gcd};
use crate::matcore::form::short_vectors;
use crate::matcore::{aut_count, gl2_equivalence, HalfIntegralForm, IntMat2};
use crate::sp4::CosetCache;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HCoefficient {
    #[serde(serialize_with = "crate::json::complex")]
    pub total: Complex64,
    #[serde(serialize_with = "crate::json::complex")]
    pub diagonal: Complex64,
    #[serde(serialize_with = "crate::json::complex")]
    pub rank1: Complex64,
    #[serde(serialize_with = "crate::json::complex")]
    pub rank2: Complex64,
    pub tail_bound: f64,
    pub rank1_terms: usize,
    pub rank2_terms: usize,
    /// `Σ |rank-2 term|` grouped by `|det C′| = 1, 2, …`.
    pub rank2_shells: Vec<f64>,
}

/// Bottom row `(u3, u4)` completed to `U` with `det U = 1`; `shift` moves the
/// first row by multiples of the second.
pub fn complete_bottom_row(u3: i64, u4: i64, shift: i64) -> IntMat2 {
    // a·u4 − b·u3 = 1
    let (_, x, y) = ext_gcd(u4, u3);
    let (mut a, mut b) = (x, -y);
    if u3 != 0 {
        let t = (a.rem_euclid(u3.abs()) - a) / u3;
        a += t * u3;
        b += t * u4;
    } else {
        b = 0;
    }
    IntMat2::new(a + shift * u3, b + shift * u4, u3, u4)
}

/// First column `(v1, v3)` completed to `V` with `det V = 1`.
pub fn complete_first_column(v1: i64, v3: i64, shift: i64) -> IntMat2 {
    // v1·y − x·v3 = 1
    let (_, p, q) = ext_gcd(v1, v3);
    let (mut x, mut y) = (-q, p);
    if v1 != 0 {
        let t = (x.rem_euclid(v1.abs()) - x) / v1;
        x += t * v1;
        y += t * v3;
    } else {
        y = 0;
    }
    IntMat2::new(v1, x + shift * v1, v3, y + shift * v3)
}

/// Primitive vectors representing `s`, grouped by `s = 1..=s_max`.
fn primitive_reps(f: &HalfIntegralForm, s_max: i64) -> Vec<Vec<(i64, i64)>> {
    let mut out = vec![Vec::new(); s_max as usize + 1];
    for (x, y) in short_vectors(f, s_max) {
        if gcd(x, y) == 1 {
            let v = f.eval(x, y);
            if v >= 1 && v <= s_max {
                out[v as usize].push((x, y));
            }
        }
    }
    out
}

fn up_to_sign(v: &(i64, i64)) -> bool {
    v.0 > 0 || (v.0 == 0 && v.1 > 0)
}

/// One summand of the rank-1 sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rank1Index {
    pub sign: SalieSign,
    pub s: i64,
    pub c: i64,
    pub u: IntMat2,
    pub v: IntMat2,
}

/// Rank-1 index set for `c ≤ c_max`, `s ≤ s_max`, in a fixed order.
pub fn rank1_indices(q: &HalfIntegralForm, t: &HalfIntegralForm, params: &SpectralParams) -> Vec<Rank1Index> {
    let n = params.level;
    let reps_q = primitive_reps(q, params.s_max);
    let reps_t = primitive_reps(t, params.s_max);
    let mut out = Vec::new();
    for s in 1..=params.s_max {
        for u in reps_q[s as usize].iter().filter(|v| up_to_sign(v)) {
            for w in &reps_t[s as usize] {
                // (−v3, v1) = w
                let (v1, v3) = (w.1, -w.0);
                let um = complete_bottom_row(u.0, u.1, 0);
                let vm = complete_first_column(v1, v3, 0);
                let mut c = n;
                while c <= params.c_max {
                    if c > 1 {
                        for sign in [SalieSign::Plus, SalieSign::Minus] {
                            out.push(Rank1Index {
                                sign,
                                s,
                                c,
                                u: um,
                                v: vm,
                            });
                        }
                    }
                    c += n;
                }
            }
        }
    }
    out
}

fn salie_for(q: &HalfIntegralForm, t: &HalfIntegralForm, idx: &Rank1Index, u: &IntMat2, v: &IntMat2) -> Result<Complex64> {
    let p = q.matrix().congruent_t(u);
    let vinv = v.inverse_unimodular().expect("det V = 1");
    let s = t.matrix().congruent_t(&vinv);
    debug_assert_eq!(p.t4, idx.s);
    debug_assert_eq!(s.t4, idx.s);
    Ok(salie(p, s, idx.c, idx.sign)?.value)
}

fn rank1_sum(q: &HalfIntegralForm, t: &HalfIntegralForm, params: &SpectralParams) -> Result<(Complex64, usize)> {
    let ell = params.ell();
    let sqrt_det = (q.det() * t.det()).sqrt();
    let sgn = if (params.k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let idx = rank1_indices(q, t, params);
    let terms = idx
        .par_iter()
        .map(|i| -> Result<Complex64> {
            let h = salie_for(q, t, i, &i.u, &i.v)?;
            let c = i.c as f64;
            let s = i.s as f64;
            let j = bessel_j(ell, 4.0 * PI * sqrt_det / (c * s))?;
            Ok(h * (sgn * 2f64.sqrt() * PI / (c.powf(1.5) * s.sqrt()) * j))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = terms.iter().fold(Complex64::new(0.0, 0.0), |a, z| a + z);
    Ok((total, terms.len()))
}

/// Largest `|H^±(P′, S′; c) − H^±(P, S; c)|` over alternative completions of
/// every rank-1 `(U, V)`.
pub fn rank1_completion_defect(q: &HalfIntegralForm, t: &HalfIntegralForm, params: &SpectralParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in rank1_indices(q, t, params) {
        let base = salie_for(q, t, &i, &i.u, &i.v)?;
        for (su, sv) in [(1, 0), (0, 1), (-1, 2), (3, -1)] {
            let u = complete_bottom_row(i.u.c, i.u.d, su);
            let v = complete_first_column(i.v.a, i.v.c, sv);
            worst = worst.max((salie_for(q, t, &i, &u, &v)? - base).norm());
        }
    }
    Ok(worst)
}

fn rank2_sum(
    q: &HalfIntegralForm,
    t: &HalfIntegralForm,
    params: &SpectralParams,
    cache: &CosetCache,
) -> Result<(Complex64, usize, Vec<f64>)> {
    let ell = params.ell();
    let n = params.level;
    let moduli = truncation_set(&params.truncation);
    let terms = moduli
        .par_iter()
        .map(|c1| -> Result<Complex64> {
            let c = c1.scale(n);
            let k = kloosterman_via_smith(q.matrix(), t.matrix(), &c, |a, b| cache.get(a, b))?;
            let arg = KernelArg::from_forms(&t.matrix(), &q.matrix(), &c)?;
            let det = c.det().abs() as f64;
            Ok(k.value * (script_j(ell, &arg) / det.powf(1.5)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut shells = vec![0.0; params.truncation.bound as usize];
    for (c1, z) in moduli.iter().zip(&terms) {
        shells[c1.det().unsigned_abs() as usize - 1] += z.norm();
    }
    let total = terms.iter().fold(Complex64::new(0.0, 0.0), |a, z| a + z);
    Ok((total * (8.0 * PI * PI), terms.len(), shells))
}

fn max_eigenvalue(f: &HalfIntegralForm) -> f64 {
    let [[a, b], [_, d]] = f.matrix().to_f64();
    0.5 * (a + d) + (0.25 * (a - d) * (a - d) + b * b).sqrt()
}

/// Envelope `|H| ≤ c^{3/2}(c, s)^{1/2}`, `|J_ℓ(x)| ≤ min(1, (x/2)^ℓ/Γ(ℓ+1))` summed over
/// `(c, s)` up to four times the cutoffs, outside the computed range.
fn rank1_tail(q: &HalfIntegralForm, t: &HalfIntegralForm, params: &SpectralParams) -> f64 {
    let ell = params.ell();
    let sqrt_det = (q.det() * t.det()).sqrt();
    let s_hi = 4 * params.s_max;
    let c_hi = 4 * params.c_max;
    let reps_q = primitive_reps(q, s_hi);
    let reps_t = primitive_reps(t, s_hi);
    let lg = ln_gamma_real(ell + 1.0);
    let mut total = 0.0;
    for s in 1..=s_hi {
        let pairs = (reps_q[s as usize].len() / 2 * reps_t[s as usize].len()) as f64;
        if pairs == 0.0 {
            continue;
        }
        let mut c = params.level;
        while c <= c_hi {
            if c > 1 && (c > params.c_max || s > params.s_max) {
                let x = 4.0 * PI * sqrt_det / (c as f64 * s as f64);
                let j = (ell * (x / 2.0).ln() - lg).exp().min(1.0);
                let h = (gcd(c, s) as f64).sqrt();
                total += 2.0 * pairs * 2f64.sqrt() * PI / (s as f64).sqrt() * h * j;
            }
            c += params.level;
        }
    }
    total
}

/// `h_Q(T)·(det T)^{k/2−3/4}` as diagonal + rank-1 + rank-2, with a tail budget.
pub fn h_fourier(q: &HalfIntegralForm, t: &HalfIntegralForm, params: &SpectralParams) -> Result<HCoefficient> {
    h_fourier_cached(q, t, params, &CosetCache::new())
}

pub fn h_fourier_cached(
    q: &HalfIntegralForm,
    t: &HalfIntegralForm,
    params: &SpectralParams,
    cache: &CosetCache,
) -> Result<HCoefficient> {
    let diagonal = if gl2_equivalence(q, t).is_some() {
        aut_count(t) as f64
    } else {
        0.0
    };
    let ratio = (t.det() / q.det()).powf(params.det_exponent());
    let (r1, n1) = rank1_sum(q, t, params)?;
    let (r2, n2, shells) = rank2_sum(q, t, params, cache)?;
    let rank1 = r1 * ratio;
    let rank2 = r2 * ratio;

    // the shells decay at least geometrically with ratio 1/2, so twice the
    // first omitted shell covers the remainder
    let m1 = max_eigenvalue(t).ceil() as i64;
    let m2 = max_eigenvalue(q).ceil() as i64;
    let (shell, _) = shell_sum(m1, m2, params.level, params.ell(), &params.truncation, 1)?;
    let tail_bound = ratio * (rank1_tail(q, t, params) + 2.0 * 8.0 * PI * PI * shell);

    let diagonal = Complex64::new(diagonal, 0.0);
    Ok(HCoefficient {
        total: diagonal + rank1 + rank2,
        diagonal,
        rank1,
        rank2,
        tail_bound,
        rank1_terms: n1,
        rank2_terms: n2,
        rank2_shells: shells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completions_are_unimodular() {
        for (x, y) in [(1, 0), (0, 1), (0, -1), (3, 5), (-4, 7), (2, -3)] {
            for shift in -2..=2 {
                let u = complete_bottom_row(x, y, shift);
                assert_eq!(u.det(), 1);
                assert_eq!((u.c, u.d), (x, y));
                let v = complete_first_column(x, y, shift);
                assert_eq!(v.det(), 1);
                assert_eq!((v.a, v.c), (x, y));
            }
        }
        // minimal non-negative complement
        let u = complete_bottom_row(3, 5, 0);
        assert!(u.a >= 0 && u.a < 3);
    }

    #[test]
    fn empty_rank1_range() {
        let p = SpectralParams::new(10, 3).unwrap().with_cutoffs(2, 4);
        let i = HalfIntegralForm::identity();
        assert!(rank1_indices(&i, &i, &p).is_empty());
        assert_eq!(rank1_sum(&i, &i, &p).unwrap().0, Complex64::new(0.0, 0.0));
    }
}
