//! Polynomials over the prime field `F_ℓ` and their complete factorization
//! (squarefree split, distinct-degree split, Cantor–Zassenhaus equal-degree split).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_prime_u64, mod_small, Integer};
use crate::{Error, Result};

/// Seed for the equal-degree splitting. Fixed so that output is reproducible.
const SPLIT_SEED: u64 = 0x5e1_b0d5;

/// A polynomial over `F_ℓ`, coefficients constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    modulus: u64,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let mut e = m - 2;
    let mut b = a % m;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

impl ModPoly {
    pub fn new(mut coeffs: Vec<u64>, modulus: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        let mut p = ModPoly { coeffs, modulus };
        p.trim();
        p
    }

    /// Reduce an integer polynomial (constant term first).
    pub fn from_integers(coeffs: &[Integer], modulus: u64) -> Self {
        Self::new(
            coeffs.iter().map(|c| mod_small(c, modulus)).collect(),
            modulus,
        )
    }

    pub fn zero(modulus: u64) -> Self {
        ModPoly {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(vec![1], modulus)
    }

    pub fn x(modulus: u64) -> Self {
        Self::new(vec![0, 1], modulus)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn add(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + b as u128) % p as u128) as u64
            })
            .collect();
        Self::new(c, p)
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + p as u128 - b as u128) % p as u128) as u64
            })
            .collect();
        Self::new(c, p)
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = ((c[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        Self::new(c, p)
    }

    fn scale(&self, k: u64) -> Self {
        let p = self.modulus;
        Self::new(self.coeffs.iter().map(|&a| mul_mod(a, k, p)).collect(), p)
    }

    pub(crate) fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.modulus))
    }

    pub(crate) fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.modulus;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.lead(), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dd], inv, p);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    let t = mul_mod(coef, b, p);
                    r[k + j] = (r[k + j] + p - t) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(q, p), Self::new(r, p))
    }

    fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.modulus).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    fn derivative(&self) -> Self {
        let p = self.modulus;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, (i as u64) % p, p))
            .collect();
        Self::new(c, p)
    }

    /// `g` with `g(x^ℓ) = self`; requires every exponent to be a multiple of `ℓ`.
    fn pth_root(&self) -> Self {
        let p = self.modulus as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        Self::new(c, self.modulus)
    }

    /// Lift to an integer polynomial with coefficients in `[0, ℓ)`.
    pub(crate) fn lift(&self) -> Vec<Integer> {
        self.coeffs.iter().map(|&c| Integer::from(c)).collect()
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.modulus)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Complete factorization over `F_ℓ`: `unit · ∏ factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub modulus: u64,
    /// Leading coefficient of the input.
    pub unit: u64,
    /// Monic irreducible factors sorted by degree, then by coefficients from the
    /// top down.
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Degrees of the factors, with multiplicity ignored.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|(g, _)| g.degree().unwrap_or(0))
            .collect()
    }

    pub fn product(&self) -> ModPoly {
        let mut acc = ModPoly::new(vec![self.unit], self.modulus);
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Factor an integer polynomial (constant term first) modulo the prime `ℓ`.
pub fn poly_factor_mod(f: &[Integer], ell: u64) -> Result<ModFactorization> {
    if !is_prime_u64(ell) || ell >= 1 << 63 {
        return Err(Error::NotPrime(ell));
    }
    let poly = ModPoly::from_integers(f, ell);
    let lead_int = f
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .cloned()
        .unwrap_or_default();
    if poly.is_zero() || mod_small(&lead_int, ell) == 0 || poly.degree() != degree_of(f) {
        return Err(Error::LeadingCoefficientVanishes(ell));
    }
    Ok(factor_poly(&poly))
}

fn degree_of(f: &[Integer]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn factor_poly(poly: &ModPoly) -> ModFactorization {
    let ell = poly.modulus;
    let unit = poly.lead();
    let monic = poly.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors: Vec<(ModPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_split(&monic) {
        for (block, d) in distinct_degree_split(&part) {
            for g in equal_degree_split(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp_key(&b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(ModPoly, u32)> = Vec::new();
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    ModFactorization {
        modulus: ell,
        unit,
        factors: merged,
    }
}

/// Monic `f = ∏ part^mult` with each part squarefree and coprime to the others.
fn squarefree_split(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let ell = f.modulus;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.div_exact(&y);
        if part.degree().unwrap_or(0) > 0 {
            out.push((part, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_split(&c.pth_root()) {
            out.push((g, m * ell as u32));
        }
    }
    out
}

/// Split a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree_split(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let ell = f.modulus;
    let x = ModPoly::x(ell);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(ell, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

/// Cantor–Zassenhaus: split a product of distinct irreducibles of degree `d`.
fn equal_degree_split(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let ell = f.modulus;
    loop {
        let a = ModPoly::new((0..n).map(|_| rng.next_u64() % ell).collect(), ell);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if ell == 2 {
            // absolute trace to F_2
            let mut t = a.clone();
            let mut power = a.clone();
            for _ in 1..d {
                power = power.mulmod(&power, f);
                t = t.add(&power);
            }
            t
        } else {
            // a^((ℓ^d - 1)/2) = (a^(1 + ℓ + ... + ℓ^(d-1)))^((ℓ - 1)/2)
            let mut norm = a.clone();
            let mut frob = a.clone();
            for _ in 1..d {
                frob = frob.powmod(ell, f);
                norm = norm.mulmod(&frob, f);
            }
            norm.powmod((ell - 1) / 2, f).sub(&ModPoly::one(ell))
        };
        let g = probe.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut left = equal_degree_split(&g, d, rng);
            left.extend(equal_degree_split(&f.div_exact(&g), d, rng));
            return left;
        }
    }
}

/// Dedekind's criterion: for monic `f ∈ Z[x]` with factorization `fac` mod `ℓ`,
/// true iff `ℓ` does not divide the index `[O_K : Z[θ]]`.
pub(crate) fn dedekind_index_coprime(f: &[Integer], fac: &ModFactorization) -> bool {
    let ell = fac.modulus;
    let mut radical = ModPoly::one(ell);
    let mut cofactor = ModPoly::one(ell);
    for (g, e) in &fac.factors {
        radical = radical.mul(g);
        for _ in 1..*e {
            cofactor = cofactor.mul(g);
        }
    }
    let prod = int_poly_mul(&radical.lift(), &cofactor.lift());
    let ell_int = BigInt::from(ell);
    let len = f.len().max(prod.len());
    let diff: Vec<Integer> = (0..len)
        .map(|i| {
            let a = f.get(i).cloned().unwrap_or_default();
            let b = prod.get(i).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!((&d % &ell_int).is_zero());
            d / &ell_int
        })
        .collect();
    let reduced = ModPoly::from_integers(&diff, ell);
    reduced.gcd(&radical).gcd(&cofactor).is_one()
}

fn int_poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ModPoly {
    /// Evaluate at a field element.
    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| {
            ((mul_mod(acc, x, p) as u128 + c as u128) % p as u128) as u64
        })
    }

    /// Coefficients as signed machine integers, if each fits.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&c| Integer::from(c)).collect()
    }

    #[test]
    fn cube_root_of_two_mod_5() {
        let fac = poly_factor_mod(&ints(&[-2, 0, 0, 1]), 5).unwrap();
        assert_eq!(fac.degrees(), vec![1, 2]);
        assert!(fac.is_squarefree());
        // 3^3 = 27 = 2 mod 5
        assert_eq!(fac.factors[0].0.coeffs(), &[2, 1]);
    }

    #[test]
    fn cube_root_of_two_mod_31() {
        let fac = poly_factor_mod(&ints(&[-2, 0, 0, 1]), 31).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1]);
        assert!(fac
            .factors
            .iter()
            .all(|(g, _)| g.eval(31 - g.coeffs()[0]) == 0));
        let roots: Vec<u64> = fac
            .factors
            .iter()
            .map(|(g, _)| (31 - g.coeffs()[0]) % 31)
            .collect();
        assert!(roots.contains(&4));
    }

    #[test]
    fn x_squared_plus_one_mod_2() {
        let fac = poly_factor_mod(&ints(&[1, 0, 1]), 2).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.coeffs(), &[1, 1]);
        assert_eq!(fac.factors[0].1, 2);
    }

    #[test]
    fn leading_coefficient_vanishing() {
        assert_eq!(
            poly_factor_mod(&ints(&[1, 0, 5]), 5),
            Err(Error::LeadingCoefficientVanishes(5))
        );
        assert_eq!(poly_factor_mod(&ints(&[1, 1]), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn inseparable_powers() {
        // (x^3 - 1)^3 * (x + 1)^2 mod 3 = (x - 1)^9 (x + 1)^2
        let f = ModPoly::new(vec![2, 1], 3); // x - 1
        let g = ModPoly::new(vec![1, 1], 3);
        let mut prod = ModPoly::one(3);
        for _ in 0..9 {
            prod = prod.mul(&f);
        }
        prod = prod.mul(&g).mul(&g);
        let fac = factor_poly(&prod);
        assert_eq!(fac.factors, vec![(g, 2), (f, 9)]);
    }

    #[test]
    fn product_reconstructs_input() {
        let f = ints(&[31, 36, 27, -4, 9, 0, 1]);
        for ell in [2u64, 3, 5, 7, 11, 13, 101, 1_000_003] {
            let fac = poly_factor_mod(&f, ell).unwrap();
            assert_eq!(fac.product(), ModPoly::from_integers(&f, ell));
        }
    }

    #[test]
    fn dedekind_on_gaussian_integers() {
        // x^2 + 1 mod 2 = (x + 1)^2, Z[i] is maximal
        let f = ints(&[1, 0, 1]);
        let fac = poly_factor_mod(&f, 2).unwrap();
        assert!(dedekind_index_coprime(&f, &fac));
        // x^2 + 3 mod 2: Z[sqrt(-3)] has index 2 in Z[ζ_3]
        let f = ints(&[3, 0, 1]);
        let fac = poly_factor_mod(&f, 2).unwrap();
        assert!(!dedekind_index_coprime(&f, &fac));
    }
}
