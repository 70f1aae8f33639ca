//! Finite exponential sums with exact phase bookkeeping.
//!
//! Every summand is `w·e(k/m)` with an integer weight `w` and an exact residue
//! `k mod m`. Summands are tallied per residue in integers and the complex
//! exponentials are evaluated once per residue, in increasing order of `k`, so
//! the result does not depend on how the enumeration was split across threads.

mod congruence;
mod kloosterman;
mod salie;
mod twisted;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use congruence::congruence_count;
pub use kloosterman::{
    kloosterman, kloosterman_factored, kloosterman_factored_with, kloosterman_pi, kloosterman_table,
    kloosterman_via_smith, KloostermanMethod,
};
pub use salie::{gauss_sum, salie, SalieSign};
pub use twisted::{twisted_average, twisted_average_closed_form};

/// How a sum was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "brute")]
    Brute,
    #[serde(rename = "pI-formula")]
    PiFormula,
    #[serde(rename = "factored")]
    Factored,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::PiFormula => "pI-formula",
            Method::Factored => "factored",
        }
    }
}

/// Value of a finite exponential sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumValue {
    pub value: Complex64,
    pub terms: u64,
    pub method: Method,
}

impl SumValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

/// Signed multiplicities of the residues `k mod m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTally {
    modulus: i64,
    counts: Vec<i64>,
    terms: u64,
}

impl PhaseTally {
    pub fn new(modulus: i64) -> Self {
        assert!(modulus >= 1);
        PhaseTally {
            modulus,
            counts: vec![0; modulus as usize],
            terms: 0,
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Adds `weight·e(k/m)`; `weight = 0` still counts as a summand.
    #[inline]
    pub fn add(&mut self, k: i64, weight: i64) {
        self.counts[k.rem_euclid(self.modulus) as usize] += weight;
        self.terms += 1;
    }

    pub fn merge(mut self, other: &PhaseTally) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.terms += other.terms;
        self
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// `Σ_k counts[k]·e(k/m)`.
    pub fn evaluate(&self) -> Complex64 {
        let m = self.modulus;
        let mut total = Complex64::new(0.0, 0.0);
        for (k, &n) in self.counts.iter().enumerate() {
            if n != 0 {
                total += unit(k as i64, m) * n as f64;
            }
        }
        total
    }

    pub fn into_value(self, method: Method) -> SumValue {
        SumValue {
            value: self.evaluate(),
            terms: self.terms,
            method,
        }
    }
}

/// `e(k/m) = exp(2πik/m)`, using symmetry to keep the angle in `[0, π/4]`.
pub fn unit(k: i64, m: i64) -> Complex64 {
    let k = k.rem_euclid(m);
    let (num, den) = (8 * k, m);
    let octant = (num + den / 2).div_euclid(den).rem_euclid(8);
    let rem = k as f64 / m as f64 - octant as f64 / 8.0;
    let (s, c) = (TAU * rem).sin_cos();
    let base = Complex64::new(c, s);
    let rot = match octant {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
        4 => Complex64::new(-1.0, 0.0),
        5 => Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2),
        6 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2),
    };
    rot * base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_roots() {
        assert_eq!(unit(0, 7), Complex64::new(1.0, 0.0));
        assert_eq!(unit(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(unit(1, 4), Complex64::new(0.0, 1.0));
        for m in 1..40 {
            for k in 0..m {
                let z = unit(k, m);
                let w = Complex64::from_polar(1.0, TAU * k as f64 / m as f64);
                assert!((z - w).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tally_merge_is_exact() {
        let mut a = PhaseTally::new(5);
        let mut b = PhaseTally::new(5);
        for k in 0..10 {
            a.add(k, 1);
            b.add(-k, 2);
        }
        let m = a.clone().merge(&b);
        assert_eq!(m.counts(), &[6, 6, 6, 6, 6]);
        assert_eq!(m.terms(), 20);
        assert!(m.evaluate().norm() < 1e-14);
    }
}
