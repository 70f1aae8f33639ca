//! Bottom rows of `Sp₄(ℤ)`, their completion, and the coset space `D mod CΛ`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::arith::{gcd, mod_inv, modp};
use crate::matcore::IntMat2;

/// 4×4 integer matrix, row-major.
pub type IntMat4 = [[i64; 4]; 4];

/// Standard symplectic form `J = [[0, I], [−I, 0]]`.
pub const J: IntMat4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];

fn mul4(x: &IntMat4, y: &IntMat4) -> IntMat4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn transpose4(x: &IntMat4) -> IntMat4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = x[j][i];
        }
    }
    out
}

/// Assembles `[[A, B], [C, D]]`.
pub fn block(a: &IntMat2, b: &IntMat2, c: &IntMat2, d: &IntMat2) -> IntMat4 {
    [
        [a.a, a.b, b.a, b.b],
        [a.c, a.d, b.c, b.d],
        [c.a, c.b, d.a, d.b],
        [c.c, c.d, d.c, d.d],
    ]
}

/// `MᵀJM = J`.
pub fn is_symplectic(m: &IntMat4) -> bool {
    mul4(&mul4(&transpose4(m), &J), m) == J
}

/// Gcd of the six 2×2 minors of the 2×4 matrix `(C D)`.
pub fn minor_gcd(c: &IntMat2, d: &IntMat2) -> i64 {
    let rows = [[c.a, c.b, d.a, d.b], [c.c, c.d, d.c, d.d]];
    let mut g = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            g = gcd(g, rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]);
        }
    }
    g
}

/// Whether `(C, D)` is the bottom block-row of an element of `Sp₄(ℤ)`.
pub fn is_bottom_pair(c: &IntMat2, d: &IntMat2) -> Result<bool> {
    if c.det() == 0 {
        return Err(Error::SingularModulus);
    }
    // C⁻¹D symmetric ⇔ C·Dᵀ symmetric
    Ok((*c * d.transpose()).is_symmetric() && minor_gcd(c, d) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BottomPair {
    pub c: IntMat2,
    pub d: IntMat2,
}

impl BottomPair {
    pub fn new(c: IntMat2, d: IntMat2) -> Result<Self> {
        if is_bottom_pair(&c, &d)? {
            Ok(BottomPair { c, d })
        } else {
            Err(Error::NotBottomPair)
        }
    }

    pub fn complete(&self) -> SymplecticCompletion {
        complete_unchecked(&self.c, &self.d)
    }
}

/// Top block-row `(A, B)` completing a bottom pair to an element of `Sp₄(ℤ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticCompletion {
    pub a: IntMat2,
    pub b: IntMat2,
}

/// Some `(A, B)` with `[[A, B], [C, D]] ∈ Sp₄(ℤ)`.
pub fn complete_to_symplectic(c: &IntMat2, d: &IntMat2) -> Result<SymplecticCompletion> {
    BottomPair::new(*c, *d).map(|p| p.complete())
}

fn complete_unchecked(c: &IntMat2, d: &IntMat2) -> SymplecticCompletion {
    let out = if c.is_scalar() {
        complete_scalar(c.a, d)
    } else {
        complete_general(c, d)
    };
    debug_assert!(is_symplectic(&block(&out.a, &out.b, c, d)));
    out
}

/// `C = nI`: here `D` is symmetric with `det D` coprime to `n`, and
/// `A = det(D)⁻¹·adj(D) mod n` works.
fn complete_scalar(n: i64, d: &IntMat2) -> SymplecticCompletion {
    let m = n.abs();
    let inv = mod_inv(d.det(), m).expect("primitive pair has det D prime to n");
    let a = IntMat2::new(
        modp(inv * d.d, m),
        modp(-inv * d.b, m),
        modp(-inv * d.c, m),
        modp(inv * d.a, m),
    );
    // AᵀD − CᵀB = I with Cᵀ = nI
    let r = a.transpose() * *d - IntMat2::IDENTITY;
    let b = IntMat2::new(r.a / n, r.b / n, r.c / n, r.d / n);
    SymplecticCompletion { a, b }
}

/// Generic route: a right inverse `[E; F]` of `(C D)` gives `A = Fᵀ`, `B = −Eᵀ`
/// with `ADᵀ − BCᵀ = I`; a shift `(A, B) ↦ (A + SC, B + SD)` then makes `ABᵀ`
/// symmetric.
fn complete_general(c: &IntMat2, d: &IntMat2) -> SymplecticCompletion {
    let (e, f) = right_inverse(c, d);
    let a = f.transpose();
    let b = -e.transpose();
    let w = (a * b.transpose()).b - (b * a.transpose()).b;
    let s = IntMat2::new(0, w, 0, 0);
    SymplecticCompletion {
        a: a + s * *c,
        b: b + s * *d,
    }
}

/// `(E, F)` with `C·E + D·F = I` for primitive `(C D)`.
fn right_inverse(c: &IntMat2, d: &IntMat2) -> (IntMat2, IntMat2) {
    let mut m = [[c.a, c.b, d.a, d.b], [c.c, c.d, d.c, d.d]];
    let mut r: IntMat4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    // column operations to lower-triangular (H 0), tracked in R
    for row in 0..2 {
        loop {
            let nonzero: Vec<usize> = (row..4).filter(|&j| m[row][j] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    swap_cols(&mut m, &mut r, row, j);
                }
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&j| m[row][j].abs()).unwrap();
            swap_cols(&mut m, &mut r, row, piv);
            for j in row + 1..4 {
                let q = m[row][j].div_euclid(m[row][row]);
                if q != 0 {
                    for i in 0..2 {
                        m[i][j] -= q * m[i][row];
                    }
                    for rr in r.iter_mut() {
                        rr[j] -= q * rr[row];
                    }
                }
            }
        }
    }
    let h = IntMat2::new(m[0][0], 0, m[1][0], m[1][1]);
    let hinv = h.inverse_unimodular().expect("primitive pair");
    let top = IntMat2::new(r[0][0], r[0][1], r[1][0], r[1][1]) * hinv;
    let bottom = IntMat2::new(r[2][0], r[2][1], r[3][0], r[3][1]) * hinv;
    (top, bottom)
}

fn swap_cols(m: &mut [[i64; 4]; 2], r: &mut IntMat4, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in m.iter_mut() {
        row.swap(i, j);
    }
    for row in r.iter_mut() {
        row.swap(i, j);
    }
}

/// One coset `D mod CΛ` with the data that Kloosterman phases need.
///
/// `x` and `p` are the numerators of the symmetric matrices `AC⁻¹` and `C⁻¹D`
/// over the common denominator `|det C|`, stored as `(m11, m12, m22)` reduced
/// into `[0, |det C|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub d: IntMat2,
    pub a: IntMat2,
    pub x: [i64; 3],
    pub p: [i64; 3],
}

impl Coset {
    /// Numerator of `tr(AC⁻¹Q + C⁻¹DT)` over `|det C|`, reduced.
    #[inline]
    pub fn phase(&self, q: [i64; 3], t: [i64; 3], modulus: i64) -> i64 {
        let v = self.x[0] * q[0]
            + self.x[1] * q[1]
            + self.x[2] * q[2]
            + self.p[0] * t[0]
            + self.p[1] * t[1]
            + self.p[2] * t[2];
        modp(v, modulus)
    }
}

/// The full list of cosets for a modulus `C`, in increasing order of the key
/// `(p12, p11, p22)`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    pub c: IntMat2,
    pub modulus: i64,
    pub cosets: Vec<Coset>,
}

impl CosetTable {
    pub fn new(c: &IntMat2) -> Result<Self> {
        let m = c.det().abs();
        if m == 0 {
            return Err(Error::SingularModulus);
        }
        let sign = c.det().signum();
        let adj = c.adj().scale(sign);
        let mut cosets = Vec::new();
        for p12 in 0..m {
            // D = C·P/m must be integral
            let ok11: Vec<i64> = (0..m)
                .filter(|&p11| (c.a * p11 + c.b * p12) % m == 0 && (c.c * p11 + c.d * p12) % m == 0)
                .collect();
            if ok11.is_empty() {
                continue;
            }
            let ok22: Vec<i64> = (0..m)
                .filter(|&p22| (c.a * p12 + c.b * p22) % m == 0 && (c.c * p12 + c.d * p22) % m == 0)
                .collect();
            for &p11 in &ok11 {
                for &p22 in &ok22 {
                    let pn = IntMat2::new(p11, p12, p12, p22);
                    let dn = *c * pn;
                    let d = IntMat2::new(dn.a / m, dn.b / m, dn.c / m, dn.d / m);
                    if minor_gcd(c, &d) != 1 {
                        continue;
                    }
                    let comp = complete_unchecked(c, &d);
                    let xn = comp.a * adj;
                    debug_assert!(xn.is_symmetric());
                    cosets.push(Coset {
                        d,
                        a: comp.a,
                        x: [modp(xn.a, m), modp(xn.b, m), modp(xn.d, m)],
                        p: [p11, p12, p22],
                    });
                }
            }
        }
        Ok(CosetTable {
            c: *c,
            modulus: m,
            cosets,
        })
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// Representatives `D` of `{D mod CΛ : (C, D) bottom pair}`, one per coset.
pub fn enumerate_bottom_cosets(c: &IntMat2) -> Result<Vec<IntMat2>> {
    Ok(CosetTable::new(c)?.cosets.into_iter().map(|x| x.d).collect())
}

/// Number of bottom-pair cosets for `C`.
pub fn coset_count(c: &IntMat2) -> Result<usize> {
    Ok(CosetTable::new(c)?.len())
}

/// Shared coset tables for diagonal moduli `diag(c1, c2)`, built on first use.
#[derive(Debug, Default)]
pub struct CosetCache {
    tables: Mutex<HashMap<(i64, i64), Arc<CosetTable>>>,
}

impl CosetCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, c1: i64, c2: i64) -> Result<Arc<CosetTable>> {
        if let Some(t) = self.tables.lock().expect("coset cache poisoned").get(&(c1, c2)) {
            return Ok(t.clone());
        }
        let table = Arc::new(CosetTable::new(&IntMat2::diag(c1, c2))?);
        let mut guard = self.tables.lock().expect("coset cache poisoned");
        Ok(guard.entry((c1, c2)).or_insert(table).clone())
    }

    pub fn len(&self) -> usize {
        self.tables.lock().expect("coset cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
