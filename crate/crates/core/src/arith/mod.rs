//! Exact integer and modular arithmetic.
//!
//! [`Integer`] and [`Rational`] are arbitrary precision; nothing in this module
//! ever rounds. Small-word fast paths (`*_u64`) exist for the hot loops of the
//! prime sums and the census and agree with the big-integer versions.

mod factor;
mod polymod;
mod sieve;

pub(crate) use factor::factorize_unbounded;
pub use factor::{factorize, factorize_u64, is_prime, is_prime_u64, Factorization};
pub(crate) use polymod::dedekind_index_coprime;
pub use polymod::{poly_factor_mod, ModFactorization, ModPoly};
pub use sieve::{prime_iter, Primes};

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest `e` with `ℓ^e | n`.
pub fn valuation(n: &Integer, ell: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell));
    }
    let mut n = n.abs();
    let ell = Integer::from(ell);
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&ell);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// Valuation of a nonzero machine integer; `ell` must be prime (not checked).
pub fn valuation_i128(mut n: i128, ell: u64) -> u32 {
    debug_assert!(n != 0);
    let ell = ell as i128;
    let mut e = 0;
    while n % ell == 0 {
        n /= ell;
        e += 1;
    }
    e
}

/// Kronecker symbol `(a|n)` with the usual conventions: `(a|0) = [a = ±1]`,
/// `(a|-1) = sign(a)` and `(a|2)` given by `a mod 8`.
pub fn kronecker(a: &Integer, n: &Integer) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 {
            let r = mod_small(a, 8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // n is odd and positive: Jacobi symbol.
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let t = a.trailing_zeros().unwrap_or(0);
        if t > 0 {
            a >>= t;
            let r = mod_small(&n, 8);
            if t % 2 == 1 && (r == 3 || r == 5) {
                result = -result;
            }
        }
        if mod_small(&a, 4) == 3 && mod_small(&n, 4) == 3 {
            result = -result;
        }
        core::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Jacobi symbol `(a|n)` for odd `n > 0` and `0 ≤ a < n`.
pub fn jacobi_u64(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1 && a < n);
    let mut result = 1i8;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(a|ℓ)` for a machine integer `a` and odd prime `ℓ`, or `ℓ = 2`.
pub fn kronecker_i64_prime(a: i64, ell: u64) -> i8 {
    if ell == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    jacobi_u64((a as i128).rem_euclid(ell as i128) as u64, ell)
}

/// `n mod m` as a machine word, `m > 0`.
pub fn mod_small(n: &Integer, m: u64) -> u64 {
    let r = n.mod_floor(&Integer::from(m));
    r.to_u64().expect("residue fits")
}

/// True for `n` with no repeated prime factor. Zero is not squarefree.
pub fn is_squarefree(n: &Integer) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    Ok(factorize(n)?.factors.iter().all(|(_, e)| *e == 1))
}

/// Squarefree kernel of a product: `a·b` with squares of common primes removed.
pub fn squarefree_product(a: &Integer, b: &Integer) -> Integer {
    let g = a.gcd(b);
    let sign = if (a.sign() == Sign::Minus) ^ (b.sign() == Sign::Minus) {
        -Integer::one()
    } else {
        Integer::one()
    };
    let a = a.abs() / &g;
    let b = b.abs() / &g;
    sign * a * b
}

/// Floor of the `k`-th root of a nonnegative integer.
pub fn iroot(n: &Integer, k: u32) -> Integer {
    debug_assert!(!n.is_negative());
    n.nth_root(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&int(31), 31), Ok(1));
        assert_eq!(valuation(&int(4 + 27), 31), Ok(1));
        assert_eq!(valuation(&int(864), 2), Ok(5));
        assert_eq!(valuation(&int(-864), 3), Ok(3));
        assert_eq!(valuation(&int(0), 3), Err(Error::ZeroValuation));
        assert_eq!(valuation(&int(10), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn kronecker_examples() {
        for ell in [3u64, 5, 7, 31, 97] {
            assert_eq!(kronecker(&int(1), &int(ell as i64)), 1);
        }
        assert_eq!(kronecker(&int(-3), &int(31)), 1);
        assert_eq!(kronecker(&int(6), &int(31)), -1);
    }

    #[test]
    fn kronecker_conventions() {
        assert_eq!(kronecker(&int(1), &int(0)), 1);
        assert_eq!(kronecker(&int(-1), &int(0)), 1);
        assert_eq!(kronecker(&int(2), &int(0)), 0);
        assert_eq!(kronecker(&int(-5), &int(-1)), -1);
        assert_eq!(kronecker(&int(5), &int(-1)), 1);
        // (a|2) by a mod 8
        assert_eq!(kronecker(&int(1), &int(2)), 1);
        assert_eq!(kronecker(&int(7), &int(2)), 1);
        assert_eq!(kronecker(&int(-3), &int(2)), -1);
        assert_eq!(kronecker(&int(5), &int(2)), -1);
        assert_eq!(kronecker(&int(6), &int(2)), 0);
        // multiplicative in the bottom argument
        assert_eq!(
            kronecker(&int(5), &int(12)),
            kronecker(&int(5), &int(4)) * kronecker(&int(5), &int(3))
        );
        assert_eq!(kronecker(&int(-10), &int(3)), -1);
    }

    #[test]
    fn kronecker_matches_exhaustive_squares() {
        for ell in prime_iter(3, 100).unwrap() {
            let squares: Vec<u64> = (1..ell).map(|x| x * x % ell).collect();
            for a in 0..ell {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(
                    kronecker(&int(a as i64), &int(ell as i64)),
                    expected,
                    "({a}|{ell})"
                );
                assert_eq!(
                    kronecker(&int(a as i64 - ell as i64), &int(ell as i64)),
                    expected
                );
                assert_eq!(kronecker_i64_prime(a as i64, ell), expected);
            }
        }
    }

    #[test]
    fn squarefree_product_examples() {
        assert_eq!(squarefree_product(&int(2), &int(-3)), int(-6));
        assert_eq!(squarefree_product(&int(6), &int(10)), int(15));
        assert_eq!(squarefree_product(&int(-3), &int(-3)), int(1));
    }

    #[test]
    fn squarefree_checks() {
        assert!(is_squarefree(&int(-10)).unwrap());
        assert!(!is_squarefree(&int(12)).unwrap());
        assert!(!is_squarefree(&int(0)).unwrap());
    }
}
