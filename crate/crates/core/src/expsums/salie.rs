use serde::{Deserialize, Serialize};

use super::{Method, PhaseTally, SumValue};
use crate::error::{Error, Result};
use crate::matcore::arith::{gcd, mod_inv};
use crate::matcore::HalfIntegralMatrix;

/// The sign `±` of a Salié sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum SalieSign {
    #[serde(rename = "+")]
    #[value(name = "+", alias = "plus")]
    Plus,
    #[serde(rename = "-")]
    #[value(name = "-", alias = "minus")]
    Minus,
}

impl SalieSign {
    pub fn value(&self) -> i64 {
        match self {
            SalieSign::Plus => 1,
            SalieSign::Minus => -1,
        }
    }
}

/// `H^±(P, S; c)`.
///
/// Zero unless `s4 = p4`; otherwise
/// `Σ*_{d1 mod c} Σ_{d2 mod c} e((d̄1 s4 d2² ∓ d̄1 p2 d2 + s2 d2 + d̄1 p1 + d1 s1)/c ∓ p2 s2/(2 c s4))`.
/// All phases are kept over the common denominator `2·c·s4`.
pub fn salie(
    p: impl Into<HalfIntegralMatrix>,
    s: impl Into<HalfIntegralMatrix>,
    c: i64,
    sign: SalieSign,
) -> Result<SumValue> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!("c = {c} must be positive")));
    }
    let (p, s) = (p.into(), s.into());
    if s.t4 != p.t4 {
        return Ok(SumValue {
            value: 0.0.into(),
            terms: 0,
            method: Method::Brute,
        });
    }
    if s.t4 < 1 {
        return Err(Error::InvalidArgument(format!("s4 = {} must be positive", s.t4)));
    }
    let sg = sign.value();
    let den = 2 * c * s.t4;
    let scale = 2 * s.t4;
    let shift = -sg * p.t2 * s.t2;
    let mut tally = PhaseTally::new(den);
    for d1 in 0..c {
        if gcd(d1, c) != 1 {
            continue;
        }
        let inv = mod_inv(d1, c).expect("unit");
        for d2 in 0..c {
            let inner = (inv * ((s.t4 * d2 % c) * d2 - sg * p.t2 * d2 + p.t1)).rem_euclid(c)
                + s.t2 * d2
                + d1 * s.t1;
            tally.add(scale * inner + shift, 1);
        }
    }
    Ok(tally.into_value(Method::Brute))
}

/// `Σ_{x mod c} e((a x² + b x)/c)`.
pub fn gauss_sum(a: i64, b: i64, c: i64) -> Result<SumValue> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!("c = {c} must be positive")));
    }
    let mut tally = PhaseTally::new(c);
    let (a, b) = (a.rem_euclid(c), b.rem_euclid(c));
    for x in 0..c {
        tally.add((a * x % c) * x + b * x, 1);
    }
    Ok(tally.into_value(Method::Brute))
}
