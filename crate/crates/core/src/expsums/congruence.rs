use crate::error::{Error, Result};
use crate::matcore::arith::{gcd, is_prime};

/// Number of `(d1, d2, d4) mod N` with
///
/// ```text
/// h1 ≡ a(d1 + d4)
/// (d1 d4 − d2²) h2 ≡ b(d4 c1 − d2 c2 + d1 c4)
/// d1 d4 − d2² ≢ 0
/// ```
///
/// for a prime `N ≡ 3 mod 4` with `4 c1 c4 − c2² ≢ 0` and `a`, `b` prime to `N`.
#[allow(clippy::too_many_arguments)]
pub fn congruence_count(
    n: i64,
    c1: i64,
    c2: i64,
    c4: i64,
    h1: i64,
    h2: i64,
    a: i64,
    b: i64,
) -> Result<u64> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if n % 4 != 3 {
        return Err(Error::InvalidArgument(format!("{n} is not 3 mod 4")));
    }
    if (4 * c1 * c4 - c2 * c2).rem_euclid(n) == 0 {
        return Err(Error::InvalidArgument(
            "4·c1·c4 − c2² vanishes mod N".into(),
        ));
    }
    if gcd(a, n) != 1 || gcd(b, n) != 1 {
        return Err(Error::NotCoprime);
    }
    let m = |x: i64| x.rem_euclid(n);
    let mut count = 0;
    for d1 in 0..n {
        for d4 in 0..n {
            if m(h1 - a * (d1 + d4)) != 0 {
                continue;
            }
            for d2 in 0..n {
                let delta = m(d1 * d4 - d2 * d2);
                if delta == 0 {
                    continue;
                }
                if m(delta * h2 - b * (d4 * c1 - d2 * c2 + d1 * c4)) == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        // d4 = −d1 and δ = −(d1² + d2²), which vanishes mod 3 only at the origin
        assert_eq!(congruence_count(3, 1, 0, 1, 0, 0, 1, 1), Ok(8));
        assert!(congruence_count(3, 1, 0, 1, 1, 0, 1, 1).unwrap() <= 4);
        assert!(congruence_count(7, 1, 0, 2, 0, 0, 1, 1).unwrap() <= 8);
        assert!(congruence_count(5, 1, 0, 1, 0, 0, 1, 1).is_err());
        assert!(congruence_count(3, 1, 0, 1, 0, 0, 3, 1).is_err());
        // 4·c1·c4 − c2² ≡ 0 mod 3
        assert!(congruence_count(3, 1, 1, 1, 0, 0, 1, 1).is_err());
    }

    /// In the main case `d4 ≡ −d1`, the second congruence is automatic and
    /// `δ ≡ −(d1² + d2²)`. For `N ≡ 3 mod 4` the form `x² + y²` is anisotropic
    /// mod `N`, so exactly the pair `(0, 0)` is excluded.
    #[test]
    fn main_case() {
        for n in [3i64, 7, 11] {
            for (a, b) in [(1, 1), (2, 1), (1, n - 1), (n - 2, 2)] {
                assert_eq!(
                    congruence_count(n, 2, 0, 2 + n, 0, n, a, b),
                    Ok((n * n - 1) as u64)
                );
            }
        }
    }
}
