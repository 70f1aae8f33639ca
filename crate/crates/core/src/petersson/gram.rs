//! Consistency of the Fourier coefficients with the spectral expansion: the
//! normalised coefficient matrix is Hermitian and positive semi-definite.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::fourier::{h_fourier_cached, HCoefficient};
use super::params::{NormalizationConstant, SpectralParams};
use crate::error::Result;
use crate::matcore::HalfIntegralForm;
use crate::sp4::CosetCache;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub forms: Vec<HalfIntegralForm>,
    pub normalization: NormalizationConstant,
    /// `G[i][j] = h_{T_j}(T_i)(det T_j)^{k/2−3/4} / (8 c_N)`.
    #[serde(serialize_with = "crate::json::complex_matrix")]
    pub matrix: Vec<Vec<Complex64>>,
    /// `max |G[i][j] − conj G[j][i]|`.
    pub hermitian_defect: f64,
    /// Smallest eigenvalue of `(G + G*)/2`.
    pub min_eigenvalue: f64,
    /// `max_{ij} (tail(i, j) + tail(j, i)) / (8 c_N)`, the budget for the defect.
    pub tail_budget: f64,
    /// `coefficients[i][j]` is `h_Q(T)·(det T)^{k/2−3/4}` for `Q = T_j`, `T = T_i`.
    pub coefficients: Vec<Vec<HCoefficient>>,
}

/// Smallest eigenvalue of a Hermitian matrix through its real `2n × 2n` form.
pub fn min_hermitian_eigenvalue(h: &[Vec<Complex64>]) -> f64 {
    let n = h.len();
    if n == 0 {
        return f64::NAN;
    }
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = h[r % n][c % n];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

pub fn spectral_gram(ts: &[HalfIntegralForm], params: &SpectralParams) -> Result<GramReport> {
    let norm = NormalizationConstant::new(params.k, params.level)?;
    let scale = 1.0 / (8.0 * norm.value);
    let e = params.det_exponent();
    let cache = CosetCache::new();
    let n = ts.len();
    let mut coefficients = Vec::with_capacity(n);
    for ti in ts {
        let row = ts
            .iter()
            .map(|tj| h_fourier_cached(tj, ti, params, &cache))
            .collect::<Result<Vec<_>>>()?;
        coefficients.push(row);
    }
    let weight = |i: usize, j: usize| (ts[j].det() / ts[i].det()).powf(e) * scale;
    let matrix: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| coefficients[i][j].total * weight(i, j)).collect())
        .collect();
    let mut defect: f64 = 0.0;
    let mut budget: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            defect = defect.max((matrix[i][j] - matrix[j][i].conj()).norm());
            budget = budget.max(
                coefficients[i][j].tail_bound * weight(i, j) + coefficients[j][i].tail_bound * weight(j, i),
            );
        }
    }
    let sym: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| (matrix[i][j] + matrix[j][i].conj()) * 0.5).collect())
        .collect();
    Ok(GramReport {
        forms: ts.to_vec(),
        normalization: norm,
        min_eigenvalue: if n == 0 { 0.0 } else { min_hermitian_eigenvalue(&sym) },
        matrix,
        hermitian_defect: defect,
        tail_budget: budget,
        coefficients,
    })
}
