//! The double-Bessel kernel `𝒥_ℓ(P)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_rational::Ratio;
use serde::Serialize;

use super::bessel::bessel_j;
use super::quad::{composite_gl, integrate};
use crate::error::{Error, Result};
use crate::matcore::{HalfIntegralMatrix, IntMat2};

/// Positive eigenvalues `s1² ≤ s2²` of a real diagonalizable 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelArg {
    pub s1_sq: f64,
    pub s2_sq: f64,
}

impl KernelArg {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "eigenvalues {a}, {b} must be positive"
            )));
        }
        Ok(KernelArg {
            s1_sq: a.min(b),
            s2_sq: a.max(b),
        })
    }

    /// From trace and determinant, which determine the eigenvalues.
    pub fn from_trace_det(tr: f64, det: f64) -> Result<Self> {
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        // the smaller root via det/larger avoids cancellation
        let big = 0.5 * (tr + disc);
        Self::new(det / big, big)
    }

    pub fn from_matrix(p: [[f64; 2]; 2]) -> Result<Self> {
        let tr = p[0][0] + p[1][1];
        let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        if tr * tr - 4.0 * det < -1e-12 * tr * tr {
            return Err(Error::InvalidArgument("complex eigenvalues".into()));
        }
        Self::from_trace_det(tr, det)
    }

    /// Eigenvalues of `T·C⁻¹·Q·C⁻ᵀ`, from exact trace and determinant.
    pub fn from_forms(t: &HalfIntegralMatrix, q: &HalfIntegralMatrix, c: &IntMat2) -> Result<Self> {
        let cinv = c.inverse_rat().ok_or(Error::SingularModulus)?;
        let half = |m: &HalfIntegralMatrix| {
            crate::matcore::RatMat2::new(
                Ratio::from_integer(m.t1),
                Ratio::new(m.t2, 2),
                Ratio::new(m.t2, 2),
                Ratio::from_integer(m.t4),
            )
        };
        let p = half(t) * cinv * half(q) * cinv.transpose();
        let f = |x: Ratio<i64>| *x.numer() as f64 / *x.denom() as f64;
        Self::from_trace_det(f(p.trace()), f(p.det()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        KernelArg {
            s1_sq: self.s1_sq * factor,
            s2_sq: self.s2_sq * factor,
        }
    }

    pub fn det(&self) -> f64 {
        self.s1_sq * self.s2_sq
    }

    pub fn trace(&self) -> f64 {
        self.s1_sq + self.s2_sq
    }
}

fn integrand(ell: f64, arg: &KernelArg) -> impl Fn(f64) -> f64 {
    let a = 4.0 * PI * arg.s1_sq.sqrt();
    let b = 4.0 * PI * arg.s2_sq.sqrt();
    move |theta: f64| {
        let s = theta.sin();
        if s <= 0.0 {
            return 0.0;
        }
        bessel_j(ell, a * s).unwrap_or(0.0) * bessel_j(ell, b * s).unwrap_or(0.0) * s
    }
}

/// `𝒥_ℓ(P) = ∫₀^{π/2} J_ℓ(4π s1 sin θ) J_ℓ(4π s2 sin θ) sin θ dθ`, adaptively.
pub fn script_j(ell: f64, arg: &KernelArg) -> f64 {
    integrate(integrand(ell, arg), 0.0, FRAC_PI_2, 1e-15, 1e-13).0
}

/// Same integral by a fixed composite Gauss–Legendre rule.
pub fn script_j_fixed(ell: f64, arg: &KernelArg, panels: usize) -> f64 {
    composite_gl(integrand(ell, arg), 0.0, FRAC_PI_2, panels, 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depends_only_on_eigenvalues() {
        let p = [[2.0, 1.0], [0.5, 1.5]];
        // U·P·U⁻¹ for U = [[1, 2], [0, 1]]
        let q = [[3.0, -2.0], [0.5, 0.5]];
        let a = KernelArg::from_matrix(p).unwrap();
        let b = KernelArg::from_matrix(q).unwrap();
        assert!((a.s1_sq - b.s1_sq).abs() < 1e-12 && (a.s2_sq - b.s2_sq).abs() < 1e-12);
        assert!((script_j(8.5, &a) - script_j(8.5, &b)).abs() < 1e-13);
    }

    #[test]
    fn go2_reduces_to_scalar() {
        let c = IntMat2::new(2, 1, -1, 2);
        let (m1, m2) = (3, 2);
        let arg = KernelArg::from_forms(
            &HalfIntegralMatrix::scalar(m1),
            &HalfIntegralMatrix::scalar(m2),
            &c,
        )
        .unwrap();
        let expected = (m1 * m2) as f64 / c.det().abs() as f64;
        assert!((arg.s1_sq - expected).abs() < 1e-14 && (arg.s2_sq - expected).abs() < 1e-14);
    }

    #[test]
    fn dual_resolution() {
        let arg = KernelArg::new(1.0, 1.0).unwrap();
        let a = script_j(8.5, &arg);
        let b = script_j_fixed(8.5, &arg, 64);
        let c = script_j_fixed(8.5, &arg, 128);
        assert!((b - c).abs() < 1e-12);
        assert!((a - c).abs() < 1e-10);
    }
}
