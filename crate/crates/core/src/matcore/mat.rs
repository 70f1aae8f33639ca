use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// 2×2 integer matrix `[[a, b], [c, d]]`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2::new(1, 0, 0, 1);
    pub const ZERO: IntMat2 = IntMat2::new(0, 0, 0, 0);
    /// The swap `[[0, 1], [1, 0]]`.
    pub const SWAP: IntMat2 = IntMat2::new(0, 1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub const fn diag(x: i64, y: i64) -> Self {
        IntMat2::new(x, 0, 0, y)
    }

    pub const fn scalar(n: i64) -> Self {
        IntMat2::new(n, 0, 0, n)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate: `M · adj(M) = det(M) · I`.
    pub fn adj(&self) -> Self {
        IntMat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn transpose(&self) -> Self {
        IntMat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMat2::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_abs(&self) -> i64 {
        self.entries().iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// Inverse of a unimodular matrix, `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        match self.det() {
            1 => Some(self.adj()),
            -1 => Some(self.adj().scale(-1)),
            _ => None,
        }
    }

    /// Gcd of all four entries (0 for the zero matrix).
    pub fn content(&self) -> i64 {
        self.entries()
            .iter()
            .fold(0, |g, &x| num_integer::gcd(g, x))
    }

    /// Exact inverse over the rationals; `None` when singular.
    pub fn inverse_rat(&self) -> Option<RatMat2> {
        let det = self.det();
        if det == 0 {
            return None;
        }
        let adj = self.adj();
        let r = |x: i64| Ratio::new(x, det);
        Some(RatMat2::new(r(adj.a), r(adj.b), r(adj.c), r(adj.d)))
    }

    pub fn to_rat(&self) -> RatMat2 {
        RatMat2::new(
            Ratio::from_integer(self.a),
            Ratio::from_integer(self.b),
            Ratio::from_integer(self.c),
            Ratio::from_integer(self.d),
        )
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [
            [self.a as f64, self.b as f64],
            [self.c as f64, self.d as f64],
        ]
    }
}

impl Mul for IntMat2 {
    type Output = IntMat2;
    fn mul(self, o: IntMat2) -> IntMat2 {
        IntMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for IntMat2 {
    type Output = IntMat2;
    fn add(self, o: IntMat2) -> IntMat2 {
        IntMat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for IntMat2 {
    type Output = IntMat2;
    fn sub(self, o: IntMat2) -> IntMat2 {
        IntMat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for IntMat2 {
    type Output = IntMat2;
    fn neg(self) -> IntMat2 {
        self.scale(-1)
    }
}

impl fmt::Display for IntMat2 {
    /// Same literal format the command line accepts: `a,b;c,d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// 2×2 matrix with exact rational entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RatMat2 {
    pub a: Ratio<i64>,
    pub b: Ratio<i64>,
    pub c: Ratio<i64>,
    pub d: Ratio<i64>,
}

impl RatMat2 {
    pub fn new(a: Ratio<i64>, b: Ratio<i64>, c: Ratio<i64>, d: Ratio<i64>) -> Self {
        RatMat2 { a, b, c, d }
    }

    pub fn det(&self) -> Ratio<i64> {
        self.a * self.d - self.b * self.c
    }

    pub fn transpose(&self) -> Self {
        RatMat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn trace(&self) -> Ratio<i64> {
        self.a + self.d
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.c
    }

    pub fn is_integral(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMat2> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMat2::new(
            self.a.to_integer(),
            self.b.to_integer(),
            self.c.to_integer(),
            self.d.to_integer(),
        ))
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let f = |x: Ratio<i64>| *x.numer() as f64 / *x.denom() as f64;
        [[f(self.a), f(self.b)], [f(self.c), f(self.d)]]
    }
}

impl Mul for RatMat2 {
    type Output = RatMat2;
    fn mul(self, o: RatMat2) -> RatMat2 {
        RatMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Sub for RatMat2 {
    type Output = RatMat2;
    fn sub(self, o: RatMat2) -> RatMat2 {
        RatMat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

fn parse_ints(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

/// Parses rows of comma-separated integers separated by `;`.
pub(crate) fn parse_rows(s: &str) -> Option<Vec<Vec<i64>>> {
    s.split(';').map(parse_ints).collect()
}

impl FromStr for IntMat2 {
    type Err = Error;

    /// `a,b;c,d`
    fn from_str(s: &str) -> Result<Self, Error> {
        match parse_rows(s).as_deref() {
            Some([r1, r2]) if r1.len() == 2 && r2.len() == 2 => Ok(IntMat2::new(r1[0], r1[1], r2[0], r2[1])),
            _ => Err(Error::InvalidArgument(format!("malformed matrix literal {s:?}, expected a,b;c,d"))),
        }
    }
}
