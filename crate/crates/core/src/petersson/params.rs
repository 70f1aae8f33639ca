use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::gamma::ln_gamma_real;
use crate::kernels::{BesselOrder, TruncationBox};
use crate::matcore::arith::is_prime;

/// Weight, level and the cutoffs of the rank-1 and rank-2 sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralParams {
    pub k: i64,
    pub level: i64,
    /// Largest modulus `c` in the rank-1 sum.
    pub c_max: i64,
    /// Largest represented value `s` in the rank-1 sum.
    pub s_max: i64,
    /// Box for the reduced moduli `C′` of the rank-2 sum `C = N·C′`.
    pub truncation: TruncationBox,
}

impl SpectralParams {
    pub const DEFAULT_C_MAX: i64 = 60;
    pub const DEFAULT_S_MAX: i64 = 12;

    /// Default cutoffs; the rank-2 box uses the balancing `β`.
    pub fn new(k: i64, level: i64) -> Result<Self> {
        let ell = BesselOrder::from_weight(k)?.ell();
        if !is_prime(level) {
            return Err(Error::NotPrime(level));
        }
        Ok(SpectralParams {
            k,
            level,
            c_max: Self::DEFAULT_C_MAX,
            s_max: Self::DEFAULT_S_MAX,
            truncation: TruncationBox::with_default_beta(level, ell)?,
        })
    }

    pub fn with_cutoffs(mut self, c_max: i64, s_max: i64) -> Self {
        self.c_max = c_max;
        self.s_max = s_max;
        self
    }

    pub fn with_box_bound(mut self, bound: i64) -> Self {
        self.truncation.bound = bound;
        self
    }

    pub fn ell(&self) -> f64 {
        self.k as f64 - 1.5
    }

    /// `k/2 − 3/4`.
    pub fn det_exponent(&self) -> f64 {
        self.k as f64 / 2.0 - 0.75
    }

    /// Requires `N ≡ 3 mod 4`, for results that depend on it.
    pub fn require_three_mod_four(&self) -> Result<()> {
        if self.level % 4 != 3 {
            return Err(Error::InvalidArgument(format!(
                "level {} must be ≡ 3 mod 4",
                self.level
            )));
        }
        Ok(())
    }
}

/// `c_N = π^{1/2}(4π)^{3−2k}Γ(k−3/2)Γ(k−2) / (4·[Sp₄(ℤ):Γ₀(N)])`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizationConstant {
    pub k: i64,
    pub level: i64,
    pub index: f64,
    pub value: f64,
}

/// `N³(1 + 1/N)(1 + 1/N²)` for prime `N`.
pub fn siegel_index(n: i64) -> f64 {
    let n = n as f64;
    n * n * n * (1.0 + 1.0 / n) * (1.0 + 1.0 / (n * n))
}

impl NormalizationConstant {
    pub fn new(k: i64, level: i64) -> Result<Self> {
        if !is_prime(level) {
            return Err(Error::NotPrime(level));
        }
        if k < 3 {
            return Err(Error::InvalidArgument(format!("weight {k} too small")));
        }
        let kf = k as f64;
        let index = siegel_index(level);
        let pi = std::f64::consts::PI;
        let ln = 0.5 * pi.ln() + (3.0 - 2.0 * kf) * (4.0 * pi).ln() + ln_gamma_real(kf - 1.5)
            + ln_gamma_real(kf - 2.0)
            - (4.0 * index).ln();
        Ok(NormalizationConstant {
            k,
            level,
            index,
            value: ln.exp(),
        })
    }
}
