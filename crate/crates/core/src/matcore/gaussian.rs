//! Gaussian integers and the Euler totient on `ℤ[i]`.

use serde::{Deserialize, Serialize};

use super::arith::factorize;
use super::mat::IntMat2;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianInt {
    pub x: i64,
    pub y: i64,
}

impl GaussianInt {
    pub const fn new(x: i64, y: i64) -> Self {
        GaussianInt { x, y }
    }

    pub fn norm(&self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.x, -self.y)
    }

    pub fn mul(&self, o: &GaussianInt) -> Self {
        GaussianInt::new(self.x * o.x - self.y * o.y, self.x * o.y + self.y * o.x)
    }

    /// Whether `self` divides `o` in `ℤ[i]`.
    pub fn divides(&self, o: &GaussianInt) -> bool {
        let n = self.norm();
        if n == 0 {
            return o.is_zero();
        }
        let q = o.mul(&self.conj());
        q.x % n == 0 && q.y % n == 0
    }
}

/// `φ(g) = #(ℤ[i]/(g))^×`.
pub fn gaussian_totient(g: GaussianInt) -> Result<i64> {
    if g.is_zero() {
        return Err(Error::ZeroGaussian);
    }
    let n = g.norm();
    let mut phi = n;
    for (p, _) in factorize(n) {
        if p == 2 {
            // the ramified prime 1+i
            phi /= 2;
        } else if p % 4 == 3 {
            // inert: p itself is prime of norm p²
            phi = phi / (p * p) * (p * p - 1);
        } else if g.x % p == 0 && g.y % p == 0 {
            // both conjugate primes above p divide g
            phi = phi / (p * p) * (p - 1) * (p - 1);
        } else {
            phi = phi / p * (p - 1);
        }
    }
    Ok(phi)
}

/// Whether `CᵀC = |det C|·I` with `C` nonsingular, i.e. `C = [[x, y], [∓y, ±x]]`.
pub fn is_go2(c: &IntMat2) -> bool {
    let det = c.det();
    det != 0 && c.transpose() * *c == IntMat2::scalar(det.abs())
}

/// The Gaussian integer `x + iy` read off the first row of `C ∈ GO₂(ℤ)`.
pub fn go2_gaussian(c: &IntMat2) -> Result<GaussianInt> {
    if !is_go2(c) {
        return Err(Error::NotSimilitude);
    }
    Ok(GaussianInt::new(c.a, c.b))
}
