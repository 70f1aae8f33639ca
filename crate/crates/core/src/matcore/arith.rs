//! Elementary arithmetic on machine integers.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    num_integer::lcm(a, b)
}

/// `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Non-negative residue of `a` modulo `m > 0`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(modp(a, m), m);
    (g == 1).then(|| modp(x, m))
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation of `|n|` by trial division, as `(p, e)` pairs in increasing order.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Positive divisors of `n ≠ 0`, sorted.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut ds = vec![1];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: i64) -> i64 {
    factorize(n)
        .iter()
        .fold(n.abs(), |acc, &(p, _)| acc / p * (p - 1))
}

/// Kronecker symbol `(q / n)`.
pub fn kronecker(q: i64, n: i64) -> i32 {
    if n == 0 {
        return if q == 1 || q == -1 { 1 } else { 0 };
    }
    let mut sign = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if q < 0 {
            sign = -1;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if q % 2 == 0 {
            return 0;
        }
        // (q/2) = 1 for q ≡ ±1 mod 8, −1 for q ≡ ±3 mod 8
        let r = modp(q, 8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            sign = -sign;
        }
    }
    sign * jacobi(q, n)
}

/// Jacobi symbol `(a / n)` for odd `n > 0`.
fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = modp(a, n);
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legendre symbol by Euler's criterion.
    fn legendre_oracle(a: i64, p: i64) -> i32 {
        let a = modp(a, p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i64;
        let mut b = a;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        for n in 1..50 {
            assert_eq!(kronecker(1, n), 1);
        }
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(5, 5), 0);
        // χ₋₄(n) = (−1)^((n−1)/2) on odd n
        for n in (1..200).step_by(2) {
            let expected = if (n - 1) / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(kronecker(-4, n), expected);
        }
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn kronecker_matches_legendre() {
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for q in -40..40 {
                assert_eq!(kronecker(q, p), legendre_oracle(q, p), "q={q} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_periodic_and_multiplicative() {
        for q in [1i64, -4, 5, -3, 8, 13] {
            let period = 4 * q.abs();
            for n in 0..200 {
                assert_eq!(kronecker(q, n), kronecker(q, n + period), "q={q} n={n}");
            }
            for m in 1..30 {
                for n in 1..30 {
                    assert_eq!(kronecker(q, m * n), kronecker(q, m) * kronecker(q, n));
                }
            }
        }
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(mod_inv(2, 3), Some(2));
        assert_eq!(mod_inv(3, 6), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(36), 12);
        assert!(is_prime(97) && !is_prime(91));
        assert!(is_square(49) && !is_square(50));
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!((g, 240 * x + 46 * y), (2, 2));
    }
}
