//! The smooth weight `W(x)` of the approximate functional equation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma_c;
use super::quad::gauss_legendre;
use crate::error::{Error, Result};

/// Polynomial damping factor in the Mellin integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
pub enum Damping {
    /// `1 − s²`, as in the definition of `W`.
    #[default]
    #[value(name = "one-minus-s-squared")]
    #[serde(rename = "1-s^2")]
    OneMinusSSquared,
    /// `(1 − s)²`, as printed in the main-term integrand.
    #[value(name = "one-minus-s-all-squared")]
    #[serde(rename = "(1-s)^2")]
    OneMinusSAllSquared,
}

impl Damping {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Damping::OneMinusSSquared => one - s * s,
            Damping::OneMinusSAllSquared => (one - s) * (one - s),
        }
    }
}

/// `L_∞(s + 1/2) / L_∞(1/2)` with `L_∞(s) = Γ_ℂ(s + 1/2) Γ_ℂ(s + k − 3/2)`.
pub fn archimedean_ratio(s: Complex64, k: i64) -> Complex64 {
    let kk = k as f64;
    let one = Complex64::new(1.0, 0.0);
    let num = ln_gamma_c(s + 1.0) + ln_gamma_c(s + (kk - 1.0));
    let den = ln_gamma_c(one) + ln_gamma_c(Complex64::new(kk - 1.0, 0.0));
    (num - den).exp()
}

/// Contour abscissa, truncation height and panel layout.
pub const CONTOUR_RE: f64 = 2.0;
pub const CONTOUR_HEIGHT: f64 = 60.0;
const PANELS: usize = 120;
const ORDER: usize = 20;

/// `W(x)` together with a bound on the neglected part `|Im s| > 60` of the contour.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightValue {
    pub value: f64,
    pub truncation_bound: f64,
}

/// `W(x) = (1/2πi) ∫_{(2)} L_∞(s+1/2)/L_∞(1/2) · damping(s) · x^{−s} ds/s`.
pub fn weight_w(x: f64, k: i64, damping: Damping) -> Result<WeightValue> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
    }
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight k = {k} must be even")));
    }
    let lx = x.ln();
    let f = |y: f64| -> f64 {
        let s = Complex64::new(CONTOUR_RE, y);
        let v = archimedean_ratio(s, k) * damping.eval(s) * (-s * lx).exp() / s;
        v.re
    };
    // conjugate symmetry: W = (1/π) ∫₀^∞ Re(...) dy
    let (nodes, weights) = gauss_legendre(ORDER);
    let h = CONTOUR_HEIGHT / PANELS as f64;
    let mut total = 0.0;
    for p in 0..PANELS {
        let mid = (p as f64 + 0.5) * h;
        let mut s = 0.0;
        for (xi, wi) in nodes.iter().zip(&weights) {
            s += wi * f(mid + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    // beyond Y the integrand decays at least like e^{−(π − p/Y)(y − Y)}
    let y = CONTOUR_HEIGHT;
    let s = Complex64::new(CONTOUR_RE, y);
    let edge = (archimedean_ratio(s, k) * damping.eval(s) * (-s * lx).exp() / s).norm();
    let p = 4.0 + k as f64;
    let truncation_bound = edge / (PI - p / y) / PI;
    Ok(WeightValue {
        value: total / PI,
        truncation_bound,
    })
}
