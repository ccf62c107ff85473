//! The family of short Weierstrass curves `y² = x³ + Ax + B` with `4A³ + 27B² ≠ 0`
//! and no prime `ℓ` with `ℓ⁴ | A` and `ℓ⁶ | B`, ordered by height
//! `max(|A|³, B²)`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factorize, factorize_u64, factorize_unbounded, iroot, is_prime_u64, is_squarefree, kronecker,
    valuation, Integer,
};
use crate::{Error, Result};

/// A member of the family; construction checks both conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveParams {
    a: Integer,
    b: Integer,
}

impl CurveParams {
    pub fn new(a: Integer, b: Integer) -> Result<Self> {
        if !is_member(&a, &b) {
            return Err(Error::NotInFamily {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(CurveParams { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(Integer::from(a), Integer::from(b))
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    /// `max(|A|³, B²)`
    pub fn height(&self) -> Integer {
        let a3 = self.a.abs().pow(3);
        let b2 = &self.b * &self.b;
        a3.max(b2)
    }

    /// `4A³ + 27B²`, nonzero for members.
    pub fn discriminant_part(&self) -> Integer {
        discriminant_part(&self.a, &self.b)
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

fn discriminant_part(a: &Integer, b: &Integer) -> Integer {
    Integer::from(4) * a * a * a + Integer::from(27) * b * b
}

/// Both family conditions: nonvanishing `4A³ + 27B²` and no `ℓ` with `ℓ⁴ | A`, `ℓ⁶ | B`.
pub fn is_member(a: &Integer, b: &Integer) -> bool {
    if discriminant_part(a, b).is_zero() {
        return false;
    }
    // such an ℓ has ℓ⁴ | gcd(A, B)
    let g = a.gcd(b);
    if g.is_one() {
        return true;
    }
    let primes: Vec<Integer> = match g.to_u64() {
        Some(small) => factorize_u64(small)
            .into_iter()
            .filter(|&(_, e)| e >= 4)
            .map(|(q, _)| Integer::from(q))
            .collect(),
        None => factorize_unbounded(&g)
            .factors
            .into_iter()
            .filter(|(_, e)| *e >= 4)
            .map(|(q, _)| q)
            .collect(),
    };
    !primes.iter().any(|q| {
        let q4 = q.pow(4);
        let q6 = q.pow(6);
        (a % &q4).is_zero() && (b % &q6).is_zero()
    })
}

/// Reduction type of a member at a prime `ℓ ≥ 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionType {
    Good,
    /// Type `I_n`, `n = v_ℓ(4A³ + 27B²)`; split when `6B` is a square mod `ℓ`.
    Multiplicative {
        n: u32,
        split: bool,
    },
    Additive,
}

impl ReductionType {
    pub fn is_bad(&self) -> bool {
        !matches!(self, ReductionType::Good)
    }
}

/// Classify reduction at `ℓ ≥ 5`. The given model is `ℓ`-minimal because of the
/// family condition, so valuations of `4A³ + 27B²` are those of the minimal
/// discriminant.
pub fn reduction_type(c: &CurveParams, ell: u64) -> Result<ReductionType> {
    if ell < 5 {
        return Err(Error::ReductionPrimeTooSmall);
    }
    if !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell));
    }
    let v = valuation(&c.discriminant_part(), ell)?;
    if v == 0 {
        return Ok(ReductionType::Good);
    }
    let l = Integer::from(ell);
    if (&c.a % &l).is_zero() && (&c.b % &l).is_zero() {
        return Ok(ReductionType::Additive);
    }
    let six_b = Integer::from(6) * &c.b;
    Ok(ReductionType::Multiplicative {
        n: v,
        split: kronecker(&six_b, &l) == 1,
    })
}

/// Twist by `Q(√D)`: `(D²A, D³B)` brought back into the family by removing
/// `(ℓ⁴, ℓ⁶)` factors.
pub fn quadratic_twist(c: &CurveParams, d: &Integer) -> Result<CurveParams> {
    if d.is_zero() || !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    let d2 = d * d;
    let mut a = &d2 * &c.a;
    let mut b = &d2 * d * &c.b;
    // only primes dividing D can appear: c itself is in the family
    for (q, _) in factorize(d)?.factors {
        let q4 = q.pow(4);
        let q6 = q.pow(6);
        while (&a % &q4).is_zero() && (&b % &q6).is_zero() {
            a /= &q4;
            b /= &q6;
        }
    }
    Ok(CurveParams { a, b })
}

/// Coefficient box of height `≤ X`: `|A| ≤ ⌊X^{1/3}⌋`, `|B| ≤ ⌊X^{1/2}⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightBox {
    pub a_max: Integer,
    pub b_max: Integer,
}

impl HeightBox {
    /// `None` for `X < 1`.
    pub fn new(x: &Integer) -> Option<Self> {
        if x < &Integer::one() {
            return None;
        }
        Some(HeightBox {
            a_max: iroot(x, 3),
            b_max: iroot(x, 2),
        })
    }
}

/// Members of height `≤ X` in order of ascending `A`, then ascending `B`.
pub fn enumerate(x: &Integer) -> FamilyIter {
    match HeightBox::new(x) {
        Some(hb) => FamilyIter::new(-hb.a_max.clone(), hb.a_max, hb.b_max),
        None => FamilyIter::empty(),
    }
}

/// The part of [`enumerate`] with `A` in `[a_lo, a_hi]`. Shards over disjoint
/// `A`-ranges partition the full enumeration.
pub fn enumerate_shard(x: &Integer, a_lo: &Integer, a_hi: &Integer) -> FamilyIter {
    match HeightBox::new(x) {
        Some(hb) => {
            let lo = a_lo.max(&-hb.a_max.clone()).clone();
            let hi = a_hi.min(&hb.a_max).clone();
            FamilyIter::new(lo, hi, hb.b_max)
        }
        None => FamilyIter::empty(),
    }
}

/// Streaming enumeration; see [`enumerate`].
#[derive(Debug, Clone)]
pub struct FamilyIter {
    a: Integer,
    a_hi: Integer,
    b: Integer,
    b_max: Integer,
}

impl FamilyIter {
    fn new(a_lo: Integer, a_hi: Integer, b_max: Integer) -> Self {
        FamilyIter {
            b: -b_max.clone(),
            a: a_lo,
            a_hi,
            b_max,
        }
    }

    fn empty() -> Self {
        FamilyIter::new(Integer::one(), Integer::zero(), Integer::zero())
    }
}

impl Iterator for FamilyIter {
    type Item = CurveParams;

    fn next(&mut self) -> Option<CurveParams> {
        while self.a <= self.a_hi {
            while self.b <= self.b_max {
                let b = self.b.clone();
                self.b += 1;
                if is_member(&self.a, &b) {
                    return Some(CurveParams {
                        a: self.a.clone(),
                        b,
                    });
                }
            }
            self.a += 1;
            self.b = -self.b_max.clone();
        }
        None
    }
}
