//! Real Dirichlet characters from Kronecker symbols and their L-values.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::arith::{divisors, gcd, is_square, is_squarefree, kronecker};

/// `1` or the discriminant of a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub const ONE: FundamentalDiscriminant = FundamentalDiscriminant(1);
    pub const MINUS_FOUR: FundamentalDiscriminant = FundamentalDiscriminant(-4);

    pub fn new(q: i64) -> Result<Self> {
        if is_fundamental(q) {
            Ok(FundamentalDiscriminant(q))
        } else {
            Err(Error::NotFundamental(q))
        }
    }

    pub fn get(&self) -> i64 {
        self.0
    }

    /// `χ_q(n) = (q / n)`.
    pub fn chi(&self, n: i64) -> i32 {
        kronecker(self.0, n)
    }
}

impl TryFrom<i64> for FundamentalDiscriminant {
    type Error = Error;
    fn try_from(q: i64) -> Result<Self> {
        FundamentalDiscriminant::new(q)
    }
}

impl From<FundamentalDiscriminant> for i64 {
    fn from(q: FundamentalDiscriminant) -> i64 {
        q.0
    }
}

impl std::str::FromStr for FundamentalDiscriminant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let q: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("malformed integer {s:?}")))?;
        FundamentalDiscriminant::new(q)
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_fundamental(q: i64) -> bool {
    if q == 1 {
        return true;
    }
    if q == 0 {
        return false;
    }
    match q.rem_euclid(4) {
        1 => is_squarefree(q),
        0 => {
            let m = q / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// `r_q(n) = χ_q(n)·n^{−1/2}·Σ_{d | n} χ₋₄(d)`.
pub fn r_coeff(q: FundamentalDiscriminant, n: i64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be positive")));
    }
    let chi = q.chi(n);
    if chi == 0 {
        return Ok(0.0);
    }
    let s: i64 = divisors(n).iter().map(|&d| kronecker(-4, d) as i64).sum();
    Ok(chi as f64 * s as f64 / (n as f64).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    EulerMaclaurin,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LValue {
    pub s: Complex64,
    pub value: Complex64,
    pub method: LMethod,
}

/// Real character `n ↦ (q / n)` for any nonzero `q`, with its period.
#[derive(Clone, Debug)]
pub struct KroneckerCharacter {
    q: i64,
    period: i64,
    values: Vec<i32>,
}

impl KroneckerCharacter {
    pub fn new(q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("character of q = 0".into()));
        }
        let period = if matches!(q.rem_euclid(4), 0 | 1) {
            q.abs()
        } else {
            4 * q.abs()
        };
        let values = (0..period).map(|a| kronecker(q, a)).collect();
        Ok(KroneckerCharacter { q, period, values })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn value(&self, n: i64) -> i32 {
        self.values[n.rem_euclid(self.period) as usize]
    }

    /// Principal exactly when `q` is a perfect square.
    pub fn is_principal(&self) -> bool {
        is_square(self.q)
    }

    /// `L(s, χ) = m^{−s} Σ_{a mod m} χ(a) ζ(s, a/m)`; for a nonprincipal
    /// character the Hurwitz pole terms cancel and `s = 1` is allowed.
    pub fn l_value(&self, s: Complex64) -> Result<Complex64> {
        let m = self.period;
        let principal = self.is_principal();
        if principal && (s - 1.0).norm() < 1e-14 {
            return Err(Error::Pole);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for a in 1..=m {
            let chi = self.values[(a % m) as usize];
            if chi == 0 {
                continue;
            }
            let z = hurwitz_parts(s, a as f64 / m as f64);
            let pole = if principal {
                z.pole_term
            } else {
                // Σ χ(a) = 0, so the pole terms combine into an entire function
                z.pole_regular
            };
            total += chi as f64 * (z.regular + pole);
        }
        Ok(total * (-s * (m as f64).ln()).exp())
    }
}

/// Euler–Maclaurin shift and number of Bernoulli corrections.
const EM_SHIFT: usize = 16;
const EM_TERMS: usize = 14;

/// `B_{2j} / (2j)!` for `j = 1..=EM_TERMS`.
const BERNOULLI_OVER_FACT: [f64; EM_TERMS] = [
    8.333333333333333e-2,
    -1.388888888888889e-3,
    3.306878306878307e-5,
    -8.267195767195768e-7,
    2.08767569878681e-8,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
];

struct HurwitzParts {
    /// Everything except the `(M+a)^{1−s}/(s−1)` term.
    regular: Complex64,
    /// `(M+a)^{1−s}/(s−1)`.
    pole_term: Complex64,
    /// `((M+a)^{1−s} − 1)/(s−1)`, entire in `s`.
    pole_regular: Complex64,
}

fn hurwitz_parts(s: Complex64, a: f64) -> HurwitzParts {
    let mut regular = Complex64::new(0.0, 0.0);
    for n in 0..EM_SHIFT {
        regular += (-s * (n as f64 + a).ln()).exp();
    }
    let x = EM_SHIFT as f64 + a;
    let lx = x.ln();
    let x_s = (-s * lx).exp();
    regular += x_s * 0.5;
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut pow = x_s / x;
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        regular += rising * pow * *b;
        let j2 = (2 * (j + 1)) as f64;
        rising *= (s + (j2 - 1.0)) * (s + j2);
        pow /= x * x;
    }
    let u = Complex64::new(1.0, 0.0) - s;
    let pole_term = (u * lx).exp() / (-u);
    let pole_regular = -expm1_over(u, lx);
    HurwitzParts {
        regular,
        pole_term,
        pole_regular,
    }
}

/// `(e^{u·L} − 1)/u`, continuous at `u = 0`.
fn expm1_over(u: Complex64, l: f64) -> Complex64 {
    let z = u * l;
    if z.norm() < 0.5 {
        // L·Σ z^k/(k+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..30 {
            term *= z / (k as f64 + 1.0);
            sum += term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        sum * l
    } else {
        (z.exp() - 1.0) / u
    }
}

/// `L(s, χ_q)` for a fundamental discriminant `q` (`q = 1` gives `ζ`).
pub fn dirichlet_l(s: Complex64, q: FundamentalDiscriminant) -> Result<LValue> {
    let value = KroneckerCharacter::new(q.get())?.l_value(s)?;
    Ok(LValue {
        s,
        value,
        method: LMethod::EulerMaclaurin,
    })
}

/// `L(s, (q/·))` for an arbitrary nonzero `q`.
pub fn kronecker_l(s: Complex64, q: i64) -> Result<Complex64> {
    KroneckerCharacter::new(q)?.l_value(s)
}

/// `ζ_{ℚ(i)}(s) = ζ(s)·L(s, χ₋₄)`.
pub fn dedekind_zeta_gaussian(s: Complex64) -> Result<Complex64> {
    Ok(kronecker_l(s, 1)? * kronecker_l(s, -4)?)
}

/// Whether `q1`, `q2` are coprime.
pub fn coprime(q1: FundamentalDiscriminant, q2: FundamentalDiscriminant) -> bool {
    gcd(q1.get(), q2.get()) == 1
}
