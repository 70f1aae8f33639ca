//! Binary quadratic forms: half-integral matrices, rational symmetric
//! matrices, reduction and `GL₂(ℤ)`-equivalence.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::mat::{parse_rows, IntMat2, RatMat2};
use crate::error::{Error, Result};

/// Symmetric half-integral matrix `[[t1, t2/2], [t2/2, t4]]`; no definiteness assumed.
///
/// Degenerate values such as `0` or `μ·I` with `μ ≤ 0` appear as arguments of
/// exponential sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfIntegralMatrix {
    pub t1: i64,
    pub t2: i64,
    pub t4: i64,
}

impl HalfIntegralMatrix {
    pub const fn new(t1: i64, t2: i64, t4: i64) -> Self {
        HalfIntegralMatrix { t1, t2, t4 }
    }

    pub const fn scalar(mu: i64) -> Self {
        HalfIntegralMatrix::new(mu, 0, mu)
    }

    /// `4·det`, an integer.
    pub fn disc(&self) -> i64 {
        4 * self.t1 * self.t4 - self.t2 * self.t2
    }

    pub fn det(&self) -> f64 {
        self.disc() as f64 / 4.0
    }

    /// `2T`, which has integer entries.
    pub fn doubled(&self) -> IntMat2 {
        IntMat2::new(2 * self.t1, self.t2, self.t2, 2 * self.t4)
    }

    fn from_doubled(m: IntMat2) -> Self {
        debug_assert!(m.is_symmetric() && m.a % 2 == 0 && m.d % 2 == 0);
        HalfIntegralMatrix::new(m.a / 2, m.b, m.d / 2)
    }

    /// `Uᵀ T U`.
    pub fn congruent(&self, u: &IntMat2) -> Self {
        Self::from_doubled(u.transpose() * self.doubled() * *u)
    }

    /// `U T Uᵀ`.
    pub fn congruent_t(&self, u: &IntMat2) -> Self {
        self.congruent(&u.transpose())
    }

    pub fn scale(&self, k: i64) -> Self {
        HalfIntegralMatrix::new(k * self.t1, k * self.t2, k * self.t4)
    }

    /// Value of the form at `(x, y)`: `t1 x² + t2 x y + t4 y²`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.t1 * x * x + self.t2 * x * y + self.t4 * y * y
    }

    pub fn is_positive_definite(&self) -> bool {
        self.t1 >= 1 && self.disc() >= 1
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let h = self.t2 as f64 / 2.0;
        [[self.t1 as f64, h], [h, self.t4 as f64]]
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.t1, self.t2, self.t4)
    }
}

impl FromStr for HalfIntegralMatrix {
    type Err = Error;

    /// `t1,t2,t4`, or the symmetric matrix literal `a,b;b,d` (then `t2 = 2b`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed form literal {s:?}, expected t1,t2,t4 or a,b;b,d"));
        match parse_rows(s).ok_or_else(bad)?.as_slice() {
            [r] if r.len() == 3 => Ok(HalfIntegralMatrix::new(r[0], r[1], r[2])),
            [r1, r2] if r1.len() == 2 && r2.len() == 2 && r1[1] == r2[0] => {
                Ok(HalfIntegralMatrix::new(r1[0], 2 * r1[1], r2[1]))
            }
            _ => Err(bad()),
        }
    }
}

impl FromStr for HalfIntegralForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<HalfIntegralMatrix>()?.try_into()
    }
}

/// Positive-definite element of the set 𝒮 of Fourier indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "HalfIntegralMatrix", into = "HalfIntegralMatrix")]
pub struct HalfIntegralForm(HalfIntegralMatrix);

impl HalfIntegralForm {
    pub fn new(t1: i64, t2: i64, t4: i64) -> Result<Self> {
        HalfIntegralMatrix::new(t1, t2, t4).try_into()
    }

    pub fn identity() -> Self {
        HalfIntegralForm(HalfIntegralMatrix::scalar(1))
    }

    pub fn diag(x: i64, y: i64) -> Result<Self> {
        Self::new(x, 0, y)
    }

    pub fn matrix(&self) -> HalfIntegralMatrix {
        self.0
    }

    pub fn t1(&self) -> i64 {
        self.0.t1
    }
    pub fn t2(&self) -> i64 {
        self.0.t2
    }
    pub fn t4(&self) -> i64 {
        self.0.t4
    }

    pub fn disc(&self) -> i64 {
        self.0.disc()
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    /// `Uᵀ T U`; stays positive definite for nonsingular `U`.
    pub fn congruent(&self, u: &IntMat2) -> Self {
        debug_assert!(u.det() != 0);
        HalfIntegralForm(self.0.congruent(u))
    }

    /// `U T Uᵀ`.
    pub fn congruent_t(&self, u: &IntMat2) -> Self {
        self.congruent(&u.transpose())
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.0.eval(x, y)
    }

    pub fn to_sym_rat(&self) -> SymRat2 {
        SymRat2::new(
            Ratio::from_integer(self.t1()),
            Ratio::new(self.t2(), 2),
            Ratio::from_integer(self.t4()),
        )
    }
}

impl TryFrom<HalfIntegralMatrix> for HalfIntegralForm {
    type Error = Error;
    fn try_from(m: HalfIntegralMatrix) -> Result<Self> {
        if m.is_positive_definite() {
            Ok(HalfIntegralForm(m))
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }
}

impl From<HalfIntegralForm> for HalfIntegralMatrix {
    fn from(f: HalfIntegralForm) -> Self {
        f.0
    }
}

impl fmt::Display for HalfIntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Symmetric 2×2 matrix with exact rational entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymRat2 {
    pub a11: Ratio<i64>,
    pub a12: Ratio<i64>,
    pub a22: Ratio<i64>,
}

impl SymRat2 {
    pub fn new(a11: Ratio<i64>, a12: Ratio<i64>, a22: Ratio<i64>) -> Self {
        SymRat2 { a11, a12, a22 }
    }

    pub fn from_ints(a11: i64, a12: i64, a22: i64) -> Self {
        SymRat2::new(
            Ratio::from_integer(a11),
            Ratio::from_integer(a12),
            Ratio::from_integer(a22),
        )
    }

    /// Symmetric part check included: `None` if `m` is not symmetric.
    pub fn from_rat_mat(m: &RatMat2) -> Option<Self> {
        m.is_symmetric().then(|| SymRat2::new(m.a, m.b, m.d))
    }

    pub fn to_rat_mat(&self) -> RatMat2 {
        RatMat2::new(self.a11, self.a12, self.a12, self.a22)
    }

    pub fn det(&self) -> Ratio<i64> {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn trace(&self) -> Ratio<i64> {
        self.a11 + self.a22
    }

    pub fn is_positive_definite(&self) -> bool {
        let zero = Ratio::from_integer(0);
        self.a11 > zero && self.det() > zero
    }

    /// `Uᵀ A U`.
    pub fn congruent(&self, u: &IntMat2) -> Self {
        let m = u.to_rat().transpose() * self.to_rat_mat() * u.to_rat();
        SymRat2::new(m.a, m.b, m.d)
    }

    /// `A[x, y] = a11 x² + 2 a12 x y + a22 y²`.
    pub fn eval(&self, x: i64, y: i64) -> Ratio<i64> {
        let (x, y) = (Ratio::from_integer(x), Ratio::from_integer(y));
        self.a11 * x * x + Ratio::from_integer(2) * self.a12 * x * y + self.a22 * y * y
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> i64 {
        [self.a11, self.a12, self.a22]
            .iter()
            .fold(1, |l, r| num_integer::lcm(l, *r.denom()))
    }

    pub fn is_minkowski_reduced(&self) -> bool {
        let twice = Ratio::from_integer(2) * self.a12;
        twice <= self.a11 && -twice <= self.a11 && self.a11 <= self.a22
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let f = |x: Ratio<i64>| *x.numer() as f64 / *x.denom() as f64;
        [[f(self.a11), f(self.a12)], [f(self.a12), f(self.a22)]]
    }
}

/// Reduces a positive-definite `A` to `A_red = Uᵀ A U` with `0 ≤ 2·a12 ≤ a11 ≤ a22`.
pub fn minkowski_reduce(a: &SymRat2) -> Result<(SymRat2, IntMat2)> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut cur = *a;
    let mut u = IntMat2::IDENTITY;
    loop {
        if cur.a11 > cur.a22 {
            cur = cur.congruent(&IntMat2::SWAP);
            u = u * IntMat2::SWAP;
        }
        // translate the second basis vector by the nearest multiple of the first
        let m = (cur.a12 / cur.a11).round().to_integer();
        if m != 0 {
            let t = IntMat2::new(1, -m, 0, 1);
            cur = cur.congruent(&t);
            u = u * t;
        }
        if cur.a11 <= cur.a22 {
            break;
        }
    }
    if cur.a12 < Ratio::from_integer(0) {
        let flip = IntMat2::diag(1, -1);
        cur = cur.congruent(&flip);
        u = u * flip;
    }
    debug_assert!(cur.is_minkowski_reduced());
    Ok((cur, u))
}

/// All integer vectors `(x, y)` with `T[x, y] ≤ bound`, for positive-definite `T`.
pub fn short_vectors(t: &HalfIntegralForm, bound: i64) -> Vec<(i64, i64)> {
    // T[x,y] ≥ (disc / 4 t4) x², and symmetrically for y
    let disc = t.disc() as f64;
    let xmax = ((4.0 * t.t4() as f64 * bound as f64 / disc).sqrt()).floor() as i64 + 1;
    let ymax = ((4.0 * t.t1() as f64 * bound as f64 / disc).sqrt()).floor() as i64 + 1;
    let mut out = Vec::new();
    for x in -xmax..=xmax {
        for y in -ymax..=ymax {
            if t.eval(x, y) <= bound {
                out.push((x, y));
            }
        }
    }
    out
}

fn bilinear(q: &HalfIntegralForm, u: (i64, i64), v: (i64, i64)) -> i64 {
    // 2·uᵀ Q v, integral
    let d = q.matrix().doubled();
    u.0 * (d.a * v.0 + d.b * v.1) + u.1 * (d.c * v.0 + d.d * v.1)
}

/// All unimodular `U` with `Uᵀ Q U = T`, in lexicographic order of columns.
pub fn equivalences(q: &HalfIntegralForm, t: &HalfIntegralForm) -> Vec<IntMat2> {
    if q.disc() != t.disc() {
        return Vec::new();
    }
    // the columns u1, u2 of U represent t1 and t4 by Q
    let first: Vec<_> = short_vectors(q, t.t1())
        .into_iter()
        .filter(|&(x, y)| q.eval(x, y) == t.t1())
        .collect();
    let second: Vec<_> = short_vectors(q, t.t4())
        .into_iter()
        .filter(|&(x, y)| q.eval(x, y) == t.t4())
        .collect();
    let mut out = Vec::new();
    for &u1 in &first {
        for &u2 in &second {
            let m = IntMat2::new(u1.0, u2.0, u1.1, u2.1);
            if m.det().abs() == 1 && bilinear(q, u1, u2) == t.t2() {
                out.push(m);
            }
        }
    }
    out
}

/// Some unimodular `U` with `Uᵀ Q U = T`, if the forms are equivalent.
pub fn gl2_equivalence(q: &HalfIntegralForm, t: &HalfIntegralForm) -> Option<IntMat2> {
    equivalences(q, t).into_iter().next()
}

/// `#Aut(T) = #{U ∈ GL₂(ℤ) : Uᵀ T U = T}`.
pub fn aut_count(t: &HalfIntegralForm) -> usize {
    equivalences(t, t).len()
}
