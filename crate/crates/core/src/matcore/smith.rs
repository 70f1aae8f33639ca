//! Smith normal form of 2×2 integer matrices.

use super::mat::IntMat2;
use crate::error::{Error, Result};

/// Elementary divisors of a nonsingular `C`.
///
/// Returns `(c1, c2, U, V)` with `U·C·V = diag(c1, c2)`, `c1 | c2`, both positive,
/// and `U`, `V` unimodular.
pub fn elementary_divisors(c: &IntMat2) -> Result<(i64, i64, IntMat2, IntMat2)> {
    if c.det() == 0 {
        return Err(Error::SingularModulus);
    }
    let mut m = *c;
    let mut u = IntMat2::IDENTITY;
    let mut v = IntMat2::IDENTITY;
    loop {
        // move the entry of least nonzero magnitude to the pivot
        let entries = m.entries();
        let (idx, _) = entries
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .min_by_key(|(_, x)| x.abs())
            .expect("nonsingular matrix has a nonzero entry");
        if idx / 2 == 1 {
            m = IntMat2::SWAP * m;
            u = IntMat2::SWAP * u;
        }
        if idx % 2 == 1 {
            m = m * IntMat2::SWAP;
            v = v * IntMat2::SWAP;
        }
        let p = m.a;
        if m.c != 0 {
            let e = IntMat2::new(1, 0, -m.c.div_euclid(p), 1);
            m = e * m;
            u = e * u;
        }
        if m.b != 0 {
            let e = IntMat2::new(1, -m.b.div_euclid(p), 0, 1);
            m = m * e;
            v = v * e;
        }
        if m.b != 0 || m.c != 0 {
            continue;
        }
        if m.d % p != 0 {
            // fold the second row into the first and reduce again
            let e = IntMat2::new(1, 1, 0, 1);
            m = e * m;
            u = e * u;
            continue;
        }
        break;
    }
    if m.a < 0 {
        let e = IntMat2::diag(-1, 1);
        m = e * m;
        u = e * u;
    }
    if m.d < 0 {
        let e = IntMat2::diag(1, -1);
        m = e * m;
        u = e * u;
    }
    debug_assert_eq!(u * *c * v, m);
    Ok((m.a, m.d, u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let (c1, c2, u, v) = elementary_divisors(&IntMat2::IDENTITY).unwrap();
        assert_eq!((c1, c2, u, v), (1, 1, IntMat2::IDENTITY, IntMat2::IDENTITY));
        let (c1, c2, _, _) = elementary_divisors(&IntMat2::diag(2, 4)).unwrap();
        assert_eq!((c1, c2), (2, 4));
        let (c1, c2, _, _) = elementary_divisors(&IntMat2::new(2, 1, 0, 3)).unwrap();
        assert_eq!((c1, c2), (1, 6));
        assert_eq!(
            elementary_divisors(&IntMat2::new(1, 2, 2, 4)),
            Err(Error::SingularModulus)
        );
    }

    #[test]
    fn round_trip_small_entries() {
        let r = -20..=20i64;
        for a in r.clone().step_by(3) {
            for b in r.clone().step_by(5) {
                for c in r.clone().step_by(4) {
                    for d in r.clone().step_by(3) {
                        let m = IntMat2::new(a, b, c, d);
                        if m.det() == 0 {
                            continue;
                        }
                        let (c1, c2, u, v) = elementary_divisors(&m).unwrap();
                        assert_eq!(u * m * v, IntMat2::diag(c1, c2));
                        assert!(u.is_unimodular() && v.is_unimodular());
                        assert!(c1 > 0 && c2 % c1 == 0);
                        assert_eq!(c1 * c2, m.det().abs());
                        assert_eq!(c1, m.content());
                    }
                }
            }
        }
    }
}
