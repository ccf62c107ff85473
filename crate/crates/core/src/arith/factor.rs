//! Integer factorization: trial division, Miller–Rabin and Brent's variant of
//! Pollard rho. Deterministic for every input.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::Integer;
use crate::{Error, Result};

const TRIAL_BOUND: u64 = 1000;

/// Bases making Miller–Rabin deterministic below 3.3·10²⁴ (so for every `u64`).
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
/// Extra bases used above that range.
const MR_EXTRA_BASES: [u64; 7] = [43, 47, 53, 59, 61, 67, 71];

/// Prime factorization with the sign kept separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `-1` or `1`.
    pub sign: i8,
    /// Distinct primes in ascending order with their exponents.
    pub factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Integer {
        let mut acc = Integer::from(self.sign);
        for (q, e) in &self.factors {
            acc *= num_traits::pow(q.clone(), *e as usize);
        }
        acc
    }

    /// The distinct primes, if they all fit a machine word.
    pub fn primes_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|(q, _)| q.to_u64()).collect()
    }
}

/// Factor a nonzero integer of absolute value below `2^128`.
pub fn factorize(n: &Integer) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let bits = n.bits();
    if bits > 128 {
        return Err(Error::FactorOutOfContract { bits });
    }
    Ok(factorize_unbounded(n))
}

/// Same algorithm without the size contract. Terminates for every input, but
/// may be slow for products of two large primes.
pub(crate) fn factorize_unbounded(n: &Integer) -> Factorization {
    debug_assert!(!n.is_zero());
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut primes: Vec<BigUint> = Vec::new();
    let m = n.magnitude().clone();
    match (m.to_u64(), m.to_u128()) {
        (Some(small), _) => primes.extend(prime_factors_u64(small).into_iter().map(BigUint::from)),
        (None, Some(mid)) => primes.extend(prime_factors_u128(mid).into_iter().map(BigUint::from)),
        _ => {
            let mut m = m;
            for q in trial_primes() {
                let qb = BigUint::from(q);
                while (&m % &qb).is_zero() {
                    m /= &qb;
                    primes.push(qb.clone());
                }
            }
            split_big(m, &mut primes);
        }
    }
    primes.sort();
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    for q in primes {
        let q = BigInt::from(q);
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization { sign, factors }
}

/// Factor a machine word into `(prime, exponent)` pairs, ascending.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "cannot factor zero");
    let mut primes = prime_factors_u64(n);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

fn trial_primes() -> impl Iterator<Item = u64> {
    (2..TRIAL_BOUND).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0))
}

/// Prime factors with repetition, unsorted.
fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5] {
        while n.is_multiple_of(q) {
            n /= q;
            out.push(q);
        }
    }
    let mut d = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d < TRIAL_BOUND && d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            out.push(d);
        }
        d += steps[i];
        i = (i + 1) % steps.len();
    }
    if n > 1 {
        split_u64(n, &mut out);
    }
    out
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'bases: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary integer (negative numbers and 0, 1 are not prime).
///
/// Exact below 3.3·10²⁴; above that Miller–Rabin with 20 fixed bases.
pub fn is_prime(n: &Integer) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n.magnitude()),
    }
}

/// Prime factors with repetition for inputs above the word size.
fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    for q in trial_primes() {
        let q = q as u128;
        while n.is_multiple_of(q) {
            n /= q;
            out.push(q);
        }
    }
    split_u128(n, &mut out);
    out
}

fn split_u128(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if let Ok(small) = u64::try_from(n) {
        out.extend(prime_factors_u64(small).into_iter().map(u128::from));
        return;
    }
    let mont = Mont::new(n);
    if mont.is_probable_prime() {
        out.push(n);
        return;
    }
    let d = mont.rho();
    split_u128(d, out);
    split_u128(n / d, out);
}

/// Montgomery arithmetic modulo an odd `n < 2^128` with `R = 2^128`.
struct Mont {
    n: u128,
    /// `-n^{-1} mod R`
    n_neg_inv: u128,
    /// `R mod n`, the Montgomery form of 1.
    one: u128,
    /// `R^2 mod n`
    r2: u128,
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & u64::MAX as u128);
    let (b1, b0) = (b >> 64, b & u64::MAX as u128);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & u64::MAX as u128) + (p10 & u64::MAX as u128);
    let lo = (p00 & u64::MAX as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl Mont {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n > 1);
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let one = 0u128.wrapping_sub(n) % n;
        let mut r2 = one;
        for _ in 0..128 {
            r2 = Self::add_mod(r2, r2, n);
        }
        Mont {
            n,
            n_neg_inv: inv.wrapping_neg(),
            one,
            r2,
        }
    }

    fn add_mod(a: u128, b: u128, n: u128) -> u128 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= n {
            s.wrapping_sub(n)
        } else {
            s
        }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, c1) = lo.overflowing_add(ml);
        let (t, c2) = hi.overflowing_add(mh);
        let (t, c3) = t.overflowing_add(c1 as u128);
        if c2 || c3 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn pow(&self, mut b: u128, mut e: u128) -> u128 {
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn is_probable_prime(&self) -> bool {
        let n = self.n;
        let minus_one = n - self.one;
        let d0 = n - 1;
        let s = d0.trailing_zeros();
        let d = d0 >> s;
        'bases: for a in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
            let a = *a as u128;
            if a.is_multiple_of(n) {
                continue;
            }
            let mut x = self.pow(self.to_mont(a), d);
            if x == self.one || x == minus_one {
                continue;
            }
            for _ in 1..s {
                x = self.mul(x, x);
                if x == minus_one {
                    continue 'bases;
                }
            }
            return false;
        }
        true
    }

    fn rho(&self) -> u128 {
        let n = self.n;
        let gcd = |a: u128, b: u128| num_integer::gcd(a, b);
        for c in 1u128.. {
            let c = self.to_mont(c);
            let f = |x: u128| Self::add_mod(self.mul(x, x), c, n);
            let (mut y, mut r, mut q) = (self.to_mont(2), 1u64, self.one);
            let (mut x, mut ys) = (0u128, 0u128);
            let mut g = 1u128;
            while g == 1 {
                x = y;
                for _ in 0..r {
                    y = f(y);
                }
                let mut k = 0;
                while k < r && g == 1 {
                    ys = y;
                    for _ in 0..core::cmp::min(128, r - k) {
                        y = f(y);
                        q = self.mul(q, x.abs_diff(y));
                    }
                    g = gcd(q, n);
                    k += 128;
                }
                r *= 2;
            }
            if g == n {
                loop {
                    ys = f(ys);
                    g = gcd(x.abs_diff(ys), n);
                    if g > 1 {
                        break;
                    }
                }
            }
            if g != n {
                return g;
            }
        }
        unreachable!()
    }
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(mid) = n.to_u128() {
        if mid % 2 == 0 {
            return mid == 2;
        }
        if let Ok(small) = u64::try_from(mid) {
            return is_prime_u64(small);
        }
        for q in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
            if mid % *q as u128 == 0 {
                return false;
            }
        }
        return Mont::new(mid).is_probable_prime();
    }
    for q in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
        if (n % q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
        let mut x = BigUint::from(*a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial divisor of the odd composite `n` (Brent's cycle detection with
/// batched gcds).
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut g = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..core::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = num_integer::gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = num_integer::gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        out.extend(prime_factors_u64(small).into_iter().map(BigUint::from));
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

fn rho_big(n: &BigUint) -> BigUint {
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        let mut g = BigUint::one();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..core::cmp::min(128, r - k) {
                    y = f(&y);
                    q = q * diff(&x, &y) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}
