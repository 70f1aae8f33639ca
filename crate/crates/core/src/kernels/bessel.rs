//! Bessel functions `J_ν(x)` of real order.

use std::f64::consts::PI;

use super::gamma::ln_gamma_real;
use super::quad::integrate;
use crate::error::{Error, Result};

/// Order `ℓ = k − 3/2` attached to an even weight `k ≥ 10`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BesselOrder {
    pub k: i64,
}

impl BesselOrder {
    pub fn from_weight(k: i64) -> Result<Self> {
        if k < 10 || k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weight k = {k} must be even and at least 10"
            )));
        }
        Ok(BesselOrder { k })
    }

    pub fn ell(&self) -> f64 {
        self.k as f64 - 1.5
    }
}

/// `J_ν(x)` for `ν ≥ 0` and `x > 0`.
///
/// Uses the ascending series while its terms decrease monotonically
/// (`(x/2)² < ν + 1`, or `x < 2`), and Steed's continued-fraction method
/// otherwise.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
    }
    if nu < 0.0 {
        return Err(Error::InvalidArgument(format!("order {nu} must be non-negative")));
    }
    if x < 2.0 || 0.25 * x * x < nu + 1.0 {
        Ok(bessel_j_series(nu, x))
    } else {
        Ok(bessel_j_steed(nu, x))
    }
}

/// `(x/2)^ν / Γ(ν+1) · Σ_k (−x²/4)^k / (k! (ν+1)_k)`.
pub fn bessel_j_series(nu: f64, x: f64) -> f64 {
    let lead = nu * (0.5 * x).ln() - ln_gamma_real(nu + 1.0);
    if lead < -745.0 {
        return 0.0;
    }
    let y = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= y / (k * (nu + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > 0.25 * x * x - nu {
            break;
        }
        if k > 2000.0 {
            break;
        }
    }
    lead.exp() * sum
}

/// Steed's method (continued fractions CF1 and CF2 with Temme's normalisation
/// through the Wronskian), valid for `x ≥ 2`.
fn bessel_j_steed(nu: f64, x: f64) -> f64 {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    const MAXIT: usize = 1_000_000;
    let nl = (nu + 0.5).floor() as usize;
    let mu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence from ν to μ = ν − nl with unnormalised values
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ)
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    rjl1 * (rjmu / rjl)
}

/// Independent route through Schläfli's integral
/// `J_ν(x) = (1/π)∫₀^π cos(νθ − x sin θ) dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt`.
pub fn bessel_j_schlafli(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
    }
    let (first, _) = integrate(|t| (nu * t - x * t.sin()).cos(), 0.0, PI, 1e-15, 1e-14);
    let s = (nu * PI).sin();
    let second = if s.abs() < 1e-300 {
        0.0
    } else {
        // cut where the exponent passes 45
        let mut upper: f64 = 1.0;
        while x * upper.sinh() + nu * upper < 45.0 {
            upper *= 2.0;
        }
        integrate(|t| (-x * t.sinh() - nu * t).exp(), 0.0, upper, 1e-17, 1e-14).0
    };
    Ok(first / PI - s / PI * second)
}

/// Closed forms `J_{n+1/2}` from the spherical-Bessel recurrence, as an oracle.
pub fn bessel_j_half_integer(n: usize, x: f64) -> f64 {
    let pre = (2.0 / (PI * x)).sqrt();
    let j0 = x.sin() / x;
    if n == 0 {
        return pre * x * j0;
    }
    let j1 = x.sin() / (x * x) - x.cos() / x;
    let (mut a, mut b) = (j0, j1);
    for m in 1..n {
        let c = (2 * m + 1) as f64 / x * b - a;
        a = b;
        b = c;
    }
    pre * x * b
}
