//! The moment main term: a double residue at `s = t = 0`, computed on nested
//! circles with the trapezoid rule.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{archimedean_ratio, Damping};
use crate::lfun::{coprime, FundamentalDiscriminant, KroneckerCharacter};

/// Quadrature layout for the residue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidueOptions {
    /// Radius of the outer `t` circle; the `s` circle has half this radius.
    pub radius: f64,
    pub nodes: usize,
    pub damping: Damping,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions {
            radius: 0.1,
            nodes: 128,
            damping: Damping::OneMinusSAllSquared,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueReport {
    pub q1: FundamentalDiscriminant,
    pub q2: FundamentalDiscriminant,
    pub n: f64,
    pub k: i64,
    pub residue: f64,
    /// Imaginary part left by the quadrature; zero in exact arithmetic.
    pub residue_im: f64,
    /// `residue(N) = Σ_j coefficients[j]·(log N)^j`.
    pub coefficients: Vec<f64>,
    pub options: ResidueOptions,
}

/// Highest power of `log N` extracted; the pole order never exceeds five.
const MAX_LOG_POWER: usize = 6;

/// `N`-free integrand samples on the circle grid, reusable across `N`.
#[derive(Clone, Debug)]
pub struct ResidueGrid {
    q1: FundamentalDiscriminant,
    q2: FundamentalDiscriminant,
    k: i64,
    options: ResidueOptions,
    /// `sum_{s,t}` weights `f0(s, t)·s·t / n²` and the node sums `s + t`.
    samples: Vec<(Complex64, Complex64)>,
    coefficients: Vec<Complex64>,
}

/// `L(s + 1, χ_q) L(s + 1, χ_{−4q})`, via `ζ_{ℚ(i)}` when `q = 1`.
fn paired_l(q: i64, s: Complex64) -> Result<Complex64> {
    let a = KroneckerCharacter::new(q)?;
    let b = KroneckerCharacter::new(-4 * q)?;
    Ok(a.l_value(s + 1.0)? * b.l_value(s + 1.0)?)
}

impl ResidueGrid {
    pub fn new(q1: FundamentalDiscriminant, q2: FundamentalDiscriminant, k: i64, options: ResidueOptions) -> Result<Self> {
        if !coprime(q1, q2) {
            return Err(Error::NotCoprime);
        }
        if options.nodes < 8 || !(options.radius > 0.0 && options.radius < 0.5) {
            return Err(Error::InvalidArgument("residue grid needs ≥ 8 nodes and radius in (0, 0.5)".into()));
        }
        let n = options.nodes;
        let rt = options.radius;
        let rs = 0.5 * rt;
        let node = |r: f64, j: usize| Complex64::from_polar(r, TAU * (j as f64 + 0.5) / n as f64);
        let ss: Vec<Complex64> = (0..n).map(|j| node(rs, j)).collect();
        let ts: Vec<Complex64> = (0..n).map(|j| node(rt, j)).collect();

        let side = |q: FundamentalDiscriminant, z: Complex64| -> Result<Complex64> {
            let qa = q.get().abs() as f64;
            Ok(4f64.sqrt()
                * paired_l(q.get(), z)?
                * archimedean_ratio(z, k)
                * options.damping.eval(z)
                * (z * (2.0 * qa.ln())).exp())
        };
        // the factor 4 is split evenly between the two sides
        let fs = ss.iter().map(|&s| side(q1, s)).collect::<Result<Vec<_>>>()?;
        let ft = ts.iter().map(|&t| side(q2, t)).collect::<Result<Vec<_>>>()?;
        let mixed = KroneckerCharacter::new(q1.get() * q2.get())?;
        let inv = 1.0 / (n * n) as f64;
        let mut samples = Vec::with_capacity(n * n);
        for (j, &t) in ts.iter().enumerate() {
            for (i, &s) in ss.iter().enumerate() {
                // f0·s·t with the 1/(st) cancelled
                let w = fs[i] * ft[j] * mixed.l_value(s + t + 1.0)? * inv;
                samples.push((w, s + t));
            }
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); MAX_LOG_POWER + 1];
        for &(w, u) in &samples {
            let mut term = w;
            for (p, c) in coefficients.iter_mut().enumerate() {
                if p > 0 {
                    term *= u / p as f64;
                }
                *c += term;
            }
        }
        Ok(ResidueGrid {
            q1,
            q2,
            k,
            options,
            samples,
            coefficients,
        })
    }

    /// Direct quadrature with the factor `N^{s+t}` included.
    pub fn residue(&self, n: f64) -> Result<ResidueReport> {
        if !(n > 1.0) {
            return Err(Error::InvalidArgument(format!("N = {n} must exceed 1")));
        }
        let ln = n.ln();
        let total = self
            .samples
            .iter()
            .fold(Complex64::new(0.0, 0.0), |a, &(w, u)| a + w * (u * ln).exp());
        Ok(ResidueReport {
            q1: self.q1,
            q2: self.q2,
            n,
            k: self.k,
            residue: total.re,
            residue_im: total.im,
            coefficients: self.coefficients.iter().map(|c| c.re).collect(),
            options: self.options,
        })
    }

    pub fn log_coefficients(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.re).collect()
    }
}

pub fn main_term_residue(q1: FundamentalDiscriminant, q2: FundamentalDiscriminant, n: f64, k: i64) -> Result<ResidueReport> {
    main_term_residue_with(q1, q2, n, k, ResidueOptions::default())
}

pub fn main_term_residue_with(
    q1: FundamentalDiscriminant,
    q2: FundamentalDiscriminant,
    n: f64,
    k: i64,
    options: ResidueOptions,
) -> Result<ResidueReport> {
    ResidueGrid::new(q1, q2, k, options)?.residue(n)
}

/// Polynomial degree in `log N` of the main term.
pub fn expected_degree(q1: FundamentalDiscriminant, q2: FundamentalDiscriminant) -> usize {
    match (q1.get(), q2.get()) {
        (1, 1) => 3,
        (1, -4) | (-4, 1) => 2,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitReport {
    pub degree: usize,
    /// Least-squares coefficients in powers of `log N`, constant term first.
    pub coefficients: Vec<f64>,
    pub leading: f64,
    /// Largest absolute residual of the fit.
    pub residual: f64,
    /// Least-squares slope of the residues against `log N`.
    pub slope: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Least squares `min ‖V c − y‖` via QR, `V` the Vandermonde matrix in `x`.
pub fn polyfit(x: &[f64], y: &[f64], degree: usize) -> Result<Vec<f64>> {
    if x.len() < degree + 1 {
        return Err(Error::Underdetermined {
            points: x.len(),
            degree,
        });
    }
    let v = DMatrix::from_fn(x.len(), degree + 1, |r, c| x[r].powi(c as i32));
    let qr = v.qr();
    let qty = qr.q().transpose() * DVector::from_column_slice(y);
    let c = qr
        .r()
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::InvalidArgument("rank-deficient fit".into()))?;
    Ok(c.iter().cloned().collect())
}

/// Fits `residue(N)` against `log N` at the degree predicted for `(q1, q2)`.
pub fn leading_coeff_fit(
    q1: FundamentalDiscriminant,
    q2: FundamentalDiscriminant,
    k: i64,
    ns: &[f64],
    options: ResidueOptions,
) -> Result<FitReport> {
    let degree = expected_degree(q1, q2);
    if ns.len() < degree + 1 {
        return Err(Error::Underdetermined {
            points: ns.len(),
            degree,
        });
    }
    let grid = ResidueGrid::new(q1, q2, k, options)?;
    let samples = ns
        .iter()
        .map(|&n| Ok((n, grid.residue(n)?.residue)))
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let coefficients = polyfit(&x, &y, degree)?;
    let residual = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| {
            let f: f64 = coefficients.iter().enumerate().map(|(p, c)| c * xi.powi(p as i32)).sum();
            (f - yi).abs()
        })
        .fold(0.0, f64::max);
    let slope = if x.len() >= 2 { polyfit(&x, &y, 1)?[1] } else { 0.0 };
    Ok(FitReport {
        degree,
        leading: coefficients[degree],
        coefficients,
        residual,
        slope,
        samples,
    })
}
