//! The finite set of rank-2 moduli kept in the Kloosterman–Bessel sum, and a
//! numerical check on what it leaves out.

use serde::Serialize;

use super::kernel::{script_j, KernelArg};
use crate::error::{Error, Result};
use crate::expsums::kloosterman_via_smith;
use crate::matcore::arith::{divisors, is_prime};
use crate::matcore::{minkowski_reduce, HalfIntegralMatrix, IntMat2, SymRat2};
use crate::sp4::CosetCache;

/// `{C : 0 < |det C| ≤ M, |c_ij| ≤ M}` with `M = ⌈N^{(1+β)/ℓ}⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationBox {
    pub beta: f64,
    pub level: i64,
    pub ell: f64,
    pub bound: i64,
}

/// `(2ℓ − 5)/(2ℓ + 5)`.
pub fn default_beta(ell: f64) -> f64 {
    (2.0 * ell - 5.0) / (2.0 * ell + 5.0)
}

impl TruncationBox {
    pub fn new(beta: f64, level: i64, ell: f64) -> Result<Self> {
        if !(beta > 0.0) || level < 1 || !(ell > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation box needs β > 0, N ≥ 1, ℓ > 0 (got {beta}, {level}, {ell})"
            )));
        }
        let x = (level as f64).powf((1.0 + beta) / ell);
        // guard against x = integer + rounding noise
        let bound = (x * (1.0 - 1e-12)).ceil().max(1.0) as i64;
        Ok(TruncationBox {
            beta,
            level,
            ell,
            bound,
        })
    }

    pub fn with_default_beta(level: i64, ell: f64) -> Result<Self> {
        Self::new(default_beta(ell), level, ell)
    }

    /// A box with the bound given directly.
    pub fn with_bound(bound: i64) -> Self {
        TruncationBox {
            beta: f64::NAN,
            level: 0,
            ell: f64::NAN,
            bound,
        }
    }

    pub fn contains(&self, c: &IntMat2) -> bool {
        let det = c.det();
        det != 0 && det.abs() <= self.bound && c.max_abs() <= self.bound
    }
}

/// Streams the box ordered by `(c11, c22, det)`; for each such triple the
/// off-diagonal pair runs over the divisors of `c11·c22 − det`.
pub fn truncation_stream(b: &TruncationBox) -> impl Iterator<Item = IntMat2> + '_ {
    let m = b.bound;
    (-m..=m).flat_map(move |a| {
        (-m..=m).flat_map(move |d| {
            (-m..=m)
                .filter(|&det| det != 0)
                .flat_map(move |det| off_diagonal(a * d - det, m).map(move |(x, y)| IntMat2::new(a, x, y, d)))
        })
    })
}

/// Pairs `(b, c)` with `b·c = r` and `|b|, |c| ≤ m`.
fn off_diagonal(r: i64, m: i64) -> Box<dyn Iterator<Item = (i64, i64)>> {
    if r == 0 {
        let zeros_c = (-m..=m).map(|c| (0, c));
        let zeros_b = (-m..=m).filter(|&b| b != 0).map(|b| (b, 0));
        return Box::new(zeros_c.chain(zeros_b));
    }
    let pairs: Vec<(i64, i64)> = divisors(r)
        .into_iter()
        .filter(|&x| x <= m && (r / x).abs() <= m)
        .flat_map(|x| [(x, r / x), (-x, -r / x)])
        .collect();
    Box::new(pairs.into_iter())
}

/// The box in lexicographic order of `(c11, c12, c21, c22)`.
pub fn truncation_set(b: &TruncationBox) -> Vec<IntMat2> {
    let mut out: Vec<IntMat2> = truncation_stream(b).collect();
    out.sort_unstable();
    out
}

/// `#{U ∈ GL₂(ℤ) : tr A[U] ≤ 1}` and the truncated sum
/// `Σ_{tr A[U] > 1} det(A)^{1+δ} tr(A[U])^{−5/4−δ}` for one reduced `A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinkowskiSample {
    pub modulus: IntMat2,
    pub reduced: [f64; 3],
    pub det: f64,
    pub count: u64,
    /// `count · det(A)^{1/2}`
    pub count_ratio: f64,
    pub delta: f64,
    pub sum: f64,
    /// `sum / det(A)^{1/2+δ}`
    pub sum_ratio: f64,
    /// Trace cutoff of the truncated sum.
    pub trace_cutoff: f64,
}

/// Vectors `v ≠ 0` with `A[v] ≤ x`, for Minkowski-reduced `A`.
fn short_vectors_f64(a: [f64; 3], x: f64) -> Vec<(i64, i64, f64)> {
    let [a11, a12, a22] = a;
    // reduced forms satisfy A[v] ≥ (a11·v1² + a22·v2²)/2
    let r1 = (2.0 * x / a11).sqrt().floor() as i64;
    let r2 = (2.0 * x / a22).sqrt().floor() as i64;
    let mut out = Vec::new();
    for v1 in -r1..=r1 {
        for v2 in -r2..=r2 {
            if v1 == 0 && v2 == 0 {
                continue;
            }
            let q = a11 * (v1 * v1) as f64 + 2.0 * a12 * (v1 * v2) as f64 + a22 * (v2 * v2) as f64;
            if q <= x {
                out.push((v1, v2, q));
            }
        }
    }
    out
}

/// Calls `f(tr A[U])` for every `U ∈ GL₂(ℤ)` with `tr A[U] ≤ x`.
fn for_each_unimodular(a: [f64; 3], x: f64, mut f: impl FnMut(f64)) {
    let [a11, a12, a22] = a;
    let form = |v1: f64, v2: f64| a11 * v1 * v1 + 2.0 * a12 * v1 * v2 + a22 * v2 * v2;
    let bil = |u: (f64, f64), v: (f64, f64)| a11 * u.0 * v.0 + a12 * (u.0 * v.1 + u.1 * v.0) + a22 * u.1 * v.1;
    for (x1, y1, q1) in short_vectors_f64(a, x) {
        let (g, s, t) = crate::matcore::arith::ext_gcd(x1, y1);
        if g != 1 {
            continue;
        }
        // det [[x1, u], [y1, w]] = x1·w − y1·u = ±1 along the lines u₀ + t·(x1, y1)
        for sign in [1i64, -1] {
            let u0 = (-sign * t, sign * s);
            let (u, w) = (u0.0 as f64, u0.1 as f64);
            let c2 = q1;
            let c1 = 2.0 * bil((u, w), (x1 as f64, y1 as f64));
            let c0 = form(u, w);
            let room = x - q1;
            // c2·τ² + c1·τ + c0 ≤ room
            let disc = c1 * c1 - 4.0 * c2 * (c0 - room);
            if disc < 0.0 {
                continue;
            }
            let sq = disc.sqrt();
            let lo = ((-c1 - sq) / (2.0 * c2)).floor() as i64 - 1;
            let hi = ((-c1 + sq) / (2.0 * c2)).ceil() as i64 + 1;
            for tau in lo..=hi {
                let v = (u0.0 + tau * x1, u0.1 + tau * y1);
                let q2 = form(v.0 as f64, v.1 as f64);
                if q1 + q2 <= x {
                    f(q1 + q2);
                }
            }
        }
    }
}

/// Counting ratios for `A = C⁻ᵀC⁻¹` after Minkowski reduction.
pub fn minkowski_sample(c: &IntMat2, delta: f64) -> Result<MinkowskiSample> {
    let inv = c.inverse_rat().ok_or(Error::SingularModulus)?;
    let a = SymRat2::from_rat_mat(&(inv.transpose() * inv)).ok_or(Error::NotPositiveDefinite)?;
    let (red, _) = minkowski_reduce(&a)?;
    let f = red.to_f64();
    let af = [f[0][0], f[0][1], f[1][1]];
    let det = af[0] * af[2] - af[1] * af[1];
    let mut count = 0u64;
    for_each_unimodular(af, 1.0, |_| count += 1);
    // the tail beyond the cutoff is O(cutoff^{3/4−δ}) relative to the sum
    let trace_cutoff = 50.0 * (af[0] + af[2]).max(1.0);
    let mut sum = 0.0;
    for_each_unimodular(af, trace_cutoff, |tr| {
        if tr > 1.0 {
            sum += det.powf(1.0 + delta) * tr.powf(-1.25 - delta);
        }
    });
    Ok(MinkowskiSample {
        modulus: *c,
        reduced: af,
        det,
        count,
        count_ratio: count as f64 * det.sqrt(),
        delta,
        sum,
        sum_ratio: sum / det.powf(0.5 + delta),
        trace_cutoff,
    })
}

/// The shell of moduli just outside a truncation box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shell {
    /// Entries run up to `M + width`.
    pub width: i64,
    /// `|det C|` runs up to this cap.
    pub det_cap: i64,
}

impl Shell {
    pub fn around(b: &TruncationBox, width: i64) -> Self {
        Shell {
            width,
            det_cap: b.bound + width,
        }
    }

    pub fn members(&self, b: &TruncationBox) -> Vec<IntMat2> {
        let outer = b.bound + self.width;
        let mut out = Vec::new();
        for a in -outer..=outer {
            for x in -outer..=outer {
                for y in -outer..=outer {
                    for d in -outer..=outer {
                        let c = IntMat2::new(a, x, y, d);
                        let det = c.det();
                        if det != 0 && det.abs() <= self.det_cap && !b.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailReport {
    pub m1: i64,
    pub m2: i64,
    pub level: i64,
    pub k: i64,
    pub beta: f64,
    pub bound: i64,
    pub shell: Shell,
    pub shell_size: usize,
    /// `Σ |h(m1, m2, C)|` over the shell.
    pub observed: f64,
    /// `N^{−1−β+5(1+β)/(2ℓ)}`
    pub predicted: f64,
    pub ratio: f64,
    pub samples: Vec<MinkowskiSample>,
}

/// `|h(m1, m2, C)| = |K(m2·I, m1·I; NC)| / (N³|det C|^{3/2}) · |𝒥_ℓ(m1m2·C⁻¹C⁻ᵀ/N²)|`.
pub fn h_term(m1: i64, m2: i64, n: i64, ell: f64, c: &IntMat2, cache: &CosetCache) -> Result<f64> {
    let nc = c.scale(n);
    let k = kloosterman_via_smith(
        HalfIntegralMatrix::scalar(m2),
        HalfIntegralMatrix::scalar(m1),
        &nc,
        |c1, c2| cache.get(c1, c2),
    )?;
    let arg = KernelArg::from_forms(&HalfIntegralMatrix::scalar(m1), &HalfIntegralMatrix::scalar(m2), &nc)?;
    let det = c.det().abs() as f64;
    Ok(k.value.norm() / ((n as f64).powi(3) * det.powf(1.5)) * script_j(ell, &arg).abs())
}

/// `Σ |h(m1, m2, C)|` over the shell of the given width around `b`, and the shell size.
pub fn shell_sum(m1: i64, m2: i64, n: i64, ell: f64, b: &TruncationBox, width: i64) -> Result<(f64, usize)> {
    if width == 0 {
        return Ok((0.0, 0));
    }
    let members = Shell::around(b, width).members(b);
    let cache = CosetCache::new();
    let mut total = 0.0;
    for c in &members {
        total += h_term(m1, m2, n, ell, c, &cache)?;
    }
    Ok((total, members.len()))
}

/// Sums `|h|` over a shell of the given width just outside the truncation box.
pub fn tail_diagnostic(m1: i64, m2: i64, n: i64, k: i64, beta: f64, width: i64) -> Result<TailReport> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if m1 < 1 || m2 < 1 || width < 0 {
        return Err(Error::InvalidArgument("m1, m2 ≥ 1 and width ≥ 0 required".into()));
    }
    let ell = super::bessel::BesselOrder::from_weight(k)?.ell();
    let b = TruncationBox::new(beta, n, ell)?;
    let shell = Shell::around(&b, width);
    let (observed, shell_size) = shell_sum(m1, m2, n, ell, &b, width)?;
    let predicted = (n as f64).powf(-1.0 - beta + 5.0 * (1.0 + beta) / (2.0 * ell));
    let delta = ell / 2.0 - 1.0;
    let sample_moduli = [
        IntMat2::IDENTITY,
        IntMat2::diag(1, 2),
        IntMat2::new(1, 1, -1, 1),
        IntMat2::new(2, 1, 0, 3),
        IntMat2::diag(2, 5),
    ];
    let samples = sample_moduli
        .iter()
        .map(|c| minkowski_sample(c, delta))
        .collect::<Result<Vec<_>>>()?;
    Ok(TailReport {
        m1,
        m2,
        level: n,
        k,
        beta,
        bound: b.bound,
        shell,
        shell_size,
        observed,
        predicted,
        ratio: observed / predicted,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filter_oracle(m: i64) -> Vec<IntMat2> {
        let mut out = Vec::new();
        for a in -m..=m {
            for b in -m..=m {
                for c in -m..=m {
                    for d in -m..=m {
                        let det = a * d - b * c;
                        if det != 0 && det.abs() <= m {
                            out.push(IntMat2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn stream_matches_filter() {
        for m in 1..=4 {
            let b = TruncationBox::with_bound(m);
            assert_eq!(truncation_set(&b), filter_oracle(m), "M = {m}");
        }
    }

    #[test]
    fn unit_box() {
        let b = TruncationBox::with_bound(1);
        assert_eq!(truncation_set(&b).len(), 40);
        assert!(b.contains(&IntMat2::IDENTITY));
        assert!(!b.contains(&IntMat2::diag(0, 1)));
    }

    #[test]
    fn default_bound() {
        let b = TruncationBox::with_default_beta(3, 8.5).unwrap();
        assert!((b.beta - 12.0 / 22.0).abs() < 1e-15);
        assert_eq!(b.bound, 2);
    }

    /// Direct `O(V²)` pair count.
    fn pair_oracle(a: [f64; 3], x: f64) -> u64 {
        let vs = short_vectors_f64(a, x);
        let mut n = 0;
        for &(x1, y1, q1) in &vs {
            for &(x2, y2, q2) in &vs {
                if (x1 * y2 - x2 * y1).abs() == 1 && q1 + q2 <= x {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn unimodular_count_matches_pairs() {
        for (a, x) in [([1.0, 0.0, 1.0], 5.0), ([0.3, 0.1, 0.7], 4.0), ([0.05, 0.02, 0.2], 3.0)] {
            let mut n = 0;
            for_each_unimodular(a, x, |_| n += 1);
            assert_eq!(n, pair_oracle(a, x));
        }
        // tr U·Uᵀ = 2 exactly for the 8 signed permutations
        let mut n = 0;
        for_each_unimodular([1.0, 0.0, 1.0], 2.0, |_| n += 1);
        assert_eq!(n, 8);
    }

    #[test]
    fn identity_has_no_short_unimodulars() {
        let s = minkowski_sample(&IntMat2::IDENTITY, 3.25).unwrap();
        assert_eq!(s.count, 0);
        assert!(s.sum_ratio.is_finite());
    }

    #[test]
    fn empty_shell_is_zero() {
        let r = tail_diagnostic(1, 1, 3, 10, default_beta(8.5), 0).unwrap();
        assert_eq!(r.shell_size, 0);
        assert_eq!(r.observed, 0.0);
    }

    #[test]
    fn tail_within_envelope() {
        let r = tail_diagnostic(1, 1, 3, 10, default_beta(8.5), 1).unwrap();
        assert!(r.shell_size > 0);
        assert!(r.observed <= 10.0 * r.predicted, "{r:?}");
        // #{γ ∈ GL₂(ℤ) : ‖γ‖² ≤ R} ~ 12R, so the count ratio tends to about 12
        for s in &r.samples {
            assert!(s.count_ratio <= 16.0 && s.sum_ratio <= 10.0, "{s:?}");
        }
    }
}
