use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Method, PhaseTally, SumValue};
use crate::error::{Error, Result};
use crate::matcore::arith::{ext_gcd, gcd, is_prime, mod_inv};
use crate::matcore::{elementary_divisors, HalfIntegralMatrix, IntMat2};
use crate::sp4::CosetTable;

const CHUNK: usize = 2048;

/// Evaluation route for `K(Q, T; C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KloostermanMethod {
    /// Direct enumeration of the cosets `D mod CΛ`.
    Brute,
    /// Triple sum for scalar moduli `C = pI`.
    #[value(name = "pI")]
    #[serde(rename = "pI")]
    PI,
    /// Split `C = N·C′` with `gcd(N, det C′) = 1`.
    Factored,
}

fn entries(m: &HalfIntegralMatrix) -> [i64; 3] {
    [m.t1, m.t2, m.t4]
}

/// `K(Q, T; C) = Σ_{D mod CΛ} e(tr(AC⁻¹Q + C⁻¹DT))` by enumeration of cosets.
pub fn kloosterman(
    q: impl Into<HalfIntegralMatrix>,
    t: impl Into<HalfIntegralMatrix>,
    c: &IntMat2,
) -> Result<SumValue> {
    let table = CosetTable::new(c)?;
    Ok(kloosterman_table(&table, q.into(), t.into()))
}

/// Same sum over a prebuilt coset table.
pub fn kloosterman_table(table: &CosetTable, q: HalfIntegralMatrix, t: HalfIntegralMatrix) -> SumValue {
    let (qv, tv, m) = (entries(&q), entries(&t), table.modulus);
    let tallies: Vec<PhaseTally> = table
        .cosets
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut tally = PhaseTally::new(m);
            for coset in chunk {
                tally.add(coset.phase(qv, tv, m), 1);
            }
            tally
        })
        .collect();
    merge_all(tallies, m).into_value(Method::Brute)
}

pub(crate) fn merge_all(tallies: Vec<PhaseTally>, m: i64) -> PhaseTally {
    tallies
        .iter()
        .fold(PhaseTally::new(m), |acc, t| acc.merge(t))
}

/// `K(Q, T; pI)` as the triple sum over symmetric `D mod p` with `p ∤ det D`.
pub fn kloosterman_pi(
    q: impl Into<HalfIntegralMatrix>,
    t: impl Into<HalfIntegralMatrix>,
    p: i64,
) -> Result<SumValue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (q, t) = (q.into(), t.into());
    let tallies: Vec<PhaseTally> = (0..p)
        .into_par_iter()
        .map(|d1| {
            let mut tally = PhaseTally::new(p);
            for d2 in 0..p {
                for d4 in 0..p {
                    let delta = (d1 * d4 - d2 * d2).rem_euclid(p);
                    if delta == 0 {
                        continue;
                    }
                    let inv = mod_inv(delta, p).expect("p prime");
                    let k = inv * ((d4 * q.t1 - d2 * q.t2 + d1 * q.t4).rem_euclid(p))
                        + d1 * t.t1
                        + d2 * t.t2
                        + d4 * t.t4;
                    tally.add(k, 1);
                }
            }
            tally
        })
        .collect();
    Ok(merge_all(tallies, p).into_value(Method::PiFormula))
}

/// `K(Q, T; NC) = K(XQXᵀ, T; N) · K(s²Q, T; C)` with `sN + t·det C = 1`, `X = t·adj(C)`.
pub fn kloosterman_factored(
    q: impl Into<HalfIntegralMatrix>,
    t: impl Into<HalfIntegralMatrix>,
    n: i64,
    c: &IntMat2,
) -> Result<SumValue> {
    let det = c.det();
    if det == 0 {
        return Err(Error::SingularModulus);
    }
    if gcd(det, n) != 1 {
        return Err(Error::NotCoprime);
    }
    let (_, s, tb) = ext_gcd(n, det);
    kloosterman_factored_with(q, t, n, c, s, tb)
}

/// As [`kloosterman_factored`] with a caller-chosen Bézout pair `(s, t)`.
pub fn kloosterman_factored_with(
    q: impl Into<HalfIntegralMatrix>,
    t: impl Into<HalfIntegralMatrix>,
    n: i64,
    c: &IntMat2,
    s: i64,
    tb: i64,
) -> Result<SumValue> {
    let det = c.det();
    if det == 0 {
        return Err(Error::SingularModulus);
    }
    if gcd(det, n) != 1 {
        return Err(Error::NotCoprime);
    }
    if s * n + tb * det != 1 {
        return Err(Error::InvalidArgument(format!(
            "{s}·{n} + {tb}·{det} != 1"
        )));
    }
    let (q, t) = (q.into(), t.into());
    // X = t·det(C)·C⁻¹ = t·adj(C); XQXᵀ is the congruence by Xᵀ
    let x = c.adj().scale(tb);
    let first = if is_prime(n) {
        kloosterman_pi(q.congruent_t(&x), t, n)?
    } else {
        kloosterman(q.congruent_t(&x), t, &IntMat2::scalar(n))?
    };
    let second = kloosterman(q.scale(s * s), t, c)?;
    Ok(SumValue {
        value: first.value * second.value,
        terms: first.terms * second.terms,
        method: Method::Factored,
    })
}

/// `K(Q, T; C) = K(UQUᵀ, VᵀTV; diag(c1, c2))` for the Smith form `U·C·V = diag(c1, c2)`.
pub fn kloosterman_via_smith(
    q: impl Into<HalfIntegralMatrix>,
    t: impl Into<HalfIntegralMatrix>,
    c: &IntMat2,
    table_for: impl FnOnce(i64, i64) -> Result<std::sync::Arc<CosetTable>>,
) -> Result<SumValue> {
    let (c1, c2, u, v) = elementary_divisors(c)?;
    let table = table_for(c1, c2)?;
    Ok(kloosterman_table(
        &table,
        q.into().congruent_t(&u),
        t.into().congruent(&v),
    ))
}
