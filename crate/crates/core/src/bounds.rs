//! Rigorous rational enclosures of `C_p(K/F)` and of the average-rank bounds
//! built from it.
//!
//! Every output is a [`BoundInterval`] with exact rational endpoints. The prime
//! sum in `C_p` is evaluated with directed rounding at scale `2^256` and closed
//! off with an explicit tail bound; irrational constants (`√3`, `π`) enter only
//! through rational enclosures.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{iroot, is_prime_u64, prime_iter, Integer, Rational};
use crate::numfield::{ExtensionDesc, FieldDesc};
use crate::{Error, Result};

/// Default prime-sum cutoff `L`.
pub const DEFAULT_CUTOFF: u64 = 1_000_000;
/// Smallest accepted cutoff; below it the tail bound no longer fits in `2[F:Q]/L`.
pub const MIN_CUTOFF: u64 = 100;

const SCALE_BITS: usize = 256;

/// A closed interval `[lo, hi]` of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInterval {
    lo: Rational,
    hi: Rational,
}

impl BoundInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        BoundInterval { lo, hi }
    }

    pub fn exact(value: Rational) -> Self {
        BoundInterval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn zero() -> Self {
        Self::exact(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Multiply by a rational; a negative factor swaps the endpoints.
    pub fn scale(&self, k: &Rational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            BoundInterval { lo: b, hi: a }
        } else {
            BoundInterval { lo: a, hi: b }
        }
    }

    /// Product of two intervals with nonnegative endpoints.
    pub fn mul_nonneg(&self, other: &Self) -> Self {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        BoundInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint as a float, for display.
    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / Rational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl Add for BoundInterval {
    type Output = BoundInterval;

    fn add(self, rhs: BoundInterval) -> BoundInterval {
        BoundInterval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl<'a> Add<&'a BoundInterval> for &'a BoundInterval {
    type Output = BoundInterval;

    fn add(self, rhs: &BoundInterval) -> BoundInterval {
        BoundInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6}, {:.6}]", self.lo_f64(), self.hi_f64())
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rat_int(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// `(2ℓ⁸ − ℓ⁷ − 1)/(ℓ¹⁰ − 1)`, the density of `ℓ`-adic conditions under which a
/// curve in the family is bad at `ℓ` but not of type `I₁`.
pub fn density_term(ell: u64) -> Rational {
    let (num, den) = density_parts(ell);
    Rational::new(num.into(), den.into())
}

fn density_parts(ell: u64) -> (BigUint, BigUint) {
    let l = BigUint::from(ell);
    let l7 = l.pow(7);
    let l8 = &l7 * &l;
    let num = (l8 << 1) - l7 - 1u32;
    let den = l.pow(10) - 1u32;
    (num, den)
}

/// Enclosure of `√3` to within `10⁻¹²`.
pub fn sqrt3() -> BoundInterval {
    let scale = Integer::from(10u64.pow(12));
    let s = iroot(&(Integer::from(3) * &scale * &scale), 2);
    BoundInterval::new(
        Rational::new(s.clone(), scale.clone()),
        Rational::new(s + 1, scale),
    )
}

/// Enclosure of `3^{k/2}`.
pub fn pow3_half(k: u32) -> BoundInterval {
    let whole = rat_int(Integer::from(3).pow(k / 2));
    if k.is_multiple_of(2) {
        BoundInterval::exact(whole)
    } else {
        sqrt3().scale(&whole)
    }
}

/// `3^{5/2}(p+1)/p`: the average `p`-Selmer rank bound over `Q`.
pub fn rational_selmer_avg(p: u64) -> BoundInterval {
    pow3_half(5).scale(&Rational::new((p + 1).into(), p.into()))
}

/// What a composed bound measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `C_p(K/F)` itself.
    Constant,
    /// Average of `|dim Sel_p(E/K)^G − dim Sel_p(E/F)|`.
    DescentFailure,
    /// Average of `dim Sel_p(E/K)^G` over `F = Q`.
    FixedSpace,
    /// Average `dim Sel_p(E/F)` for odd `p` and multiquadratic `F`.
    GoodCharAverage,
    /// Average `dim Sel_p(E/K)`.
    Selmer,
    /// Average rank of `E(K)`.
    Rank,
    /// Average multiplicity of an integral representation in `E(K) ⊗ Q`.
    MwMultiplicity,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Constant => "constant",
            BoundKind::DescentFailure => "descent-failure",
            BoundKind::FixedSpace => "fixed-space",
            BoundKind::GoodCharAverage => "goodchar-average",
            BoundKind::Selmer => "selmer",
            BoundKind::Rank => "rank",
            BoundKind::MwMultiplicity => "mw-multiplicity",
        })
    }
}

/// A labeled enclosure, with an optional remark about how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub kind: BoundKind,
    pub interval: BoundInterval,
    pub note: Option<&'static str>,
}

impl Bound {
    fn new(kind: BoundKind, interval: BoundInterval) -> Self {
        Bound {
            kind,
            interval,
            note: None,
        }
    }
}

/// The data every `C_p`-based bound needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRequest {
    pub p: u64,
    pub ext: ExtensionDesc,
    pub cutoff: u64,
    /// Admit primes other than 2, 3, 5 in the theorem-level composers.
    pub conjectural: bool,
}

impl BoundRequest {
    pub fn new(p: u64, ext: ExtensionDesc, cutoff: u64, conjectural: bool) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if cutoff < MIN_CUTOFF {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        Ok(BoundRequest {
            p,
            ext,
            cutoff,
            conjectural,
        })
    }

    fn require_unconditional_prime(&self) -> Result<()> {
        if matches!(self.p, 2 | 3 | 5) || self.conjectural {
            Ok(())
        } else {
            Err(Error::PrimeNeedsConjecture(self.p))
        }
    }

    /// The same request for `F/Q` in place of `K/F`.
    fn for_base_over_rationals(&self) -> Result<Self> {
        let ext = ExtensionDesc::over_rationals(self.ext.base().clone())?;
        Ok(BoundRequest {
            ext,
            ..self.clone()
        })
    }
}

/// Partial prime sum with directed rounding: both fields are sums of
/// `2^256 · 2ω_F(ℓ)·density(ℓ)`, rounded down and up respectively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrimeSumPart {
    floor: BigUint,
    ceil: BigUint,
}

impl Add for PrimeSumPart {
    type Output = PrimeSumPart;

    fn add(self, rhs: PrimeSumPart) -> PrimeSumPart {
        PrimeSumPart {
            floor: self.floor + rhs.floor,
            ceil: self.ceil + rhs.ceil,
        }
    }
}

/// `C_p(K/F)` split into its exact finite part and a prime sum that can be
/// evaluated piecewise (and in parallel) with [`Self::sum_range`].
#[derive(Debug, Clone)]
pub struct CConstantPlan<'a> {
    base: &'a FieldDesc,
    excluded: BTreeSet<u64>,
    finite_part: Integer,
    cutoff: u64,
}

impl<'a> CConstantPlan<'a> {
    pub fn new(req: &'a BoundRequest) -> Result<Self> {
        let base = req.ext.base();
        let excluded = req.ext.bad_support(req.p);
        let omega = base.omega_of_support(&excluded)?;
        let delta2 = u32::from(req.p == 2);
        let finite_part = Integer::from(2 * omega + base.degree() + delta2 * base.r1());
        Ok(CConstantPlan {
            base,
            excluded,
            finite_part,
            cutoff: req.cutoff,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// `2ω_F(6pΔ_K) + [F:Q] + δ₂(p)·r₁(F)`
    pub fn finite_part(&self) -> &Integer {
        &self.finite_part
    }

    /// The prime sum restricted to primes in `[lo, hi] ∩ [2, L]`.
    pub fn sum_range(&self, lo: u64, hi: u64) -> Result<PrimeSumPart> {
        let hi = hi.min(self.cutoff);
        let mut part = PrimeSumPart::default();
        if lo > hi {
            return Ok(part);
        }
        for ell in prime_iter(lo, hi)? {
            if self.excluded.contains(&ell) {
                continue;
            }
            let weight = 2 * self.base.primes_above(ell)?;
            let (floor, ceil) = scaled_term(ell, weight);
            part.floor += floor;
            part.ceil += ceil;
        }
        Ok(part)
    }

    /// Split `[2, L]` into `pieces` contiguous ranges for [`Self::sum_range`].
    pub fn ranges(&self, pieces: u64) -> Vec<(u64, u64)> {
        let pieces = pieces.max(1);
        let span = (self.cutoff - 1).div_ceil(pieces).max(1);
        let mut out = Vec::new();
        let mut lo = 2;
        while lo <= self.cutoff {
            let hi = (lo + span - 1).min(self.cutoff);
            out.push((lo, hi));
            lo = hi + 1;
        }
        out
    }

    /// Assemble the interval from the sum over all of `[2, L]`.
    pub fn finish(&self, sum: PrimeSumPart) -> BoundInterval {
        let scale = Integer::one() << SCALE_BITS;
        let fixed = rat_int(self.finite_part.clone());
        let lo = &fixed + Rational::new(BigInt::from(sum.floor), scale.clone());
        let hi = fixed
            + Rational::new(BigInt::from(sum.ceil), scale)
            + tail_bound(self.cutoff, self.base.degree());
        BoundInterval::new(lo, hi)
    }
}

fn scaled_term(ell: u64, weight: u32) -> (BigUint, BigUint) {
    let (num, den) = density_parts(ell);
    let (q, r) = ((num * weight) << SCALE_BITS).div_rem(&den);
    let ceil = if r.is_zero() { q.clone() } else { &q + 1u32 };
    (q, ceil)
}

/// Bound on `Σ_{ℓ > L} 2ω_F(ℓ)·density(ℓ)`. Uses `ω_F(ℓ) ≤ [F:Q]`,
/// `density(ℓ) < 2/ℓ²`, and that every other integer coprime to 6 past `a = L+1`
/// advances by 6: `Σ 1/n² ≤ 2/a² + 1/(3a)`.
fn tail_bound(cutoff: u64, degree: u32) -> Rational {
    let a = Integer::from(cutoff + 1);
    let inner = Rational::new(2.into(), &a * &a) + Rational::new(1.into(), Integer::from(3) * &a);
    inner * rat_int(Integer::from(4 * degree))
}

/// `C_p(K/F)`, evaluated on a single thread.
pub fn c_constant(req: &BoundRequest) -> Result<BoundInterval> {
    let plan = CConstantPlan::new(req)?;
    let sum = plan.sum_range(2, plan.cutoff())?;
    Ok(plan.finish(sum))
}

/// The descent-failure bound is `C_p(K/F)` itself.
pub fn descent_failure_avg_bound(c: &BoundInterval) -> Bound {
    Bound::new(BoundKind::DescentFailure, c.clone())
}

/// `C_p(K/Q) + 3^{5/2}(p+1)/p` for `F = Q`. When `p ∤ [K:Q]` the fixed space
/// is the `Q`-Selmer group and only the second term remains.
pub fn fixed_space_avg_bound(req: &BoundRequest, c: &BoundInterval) -> Result<Bound> {
    req.require_unconditional_prime()?;
    if req.ext.base() != &FieldDesc::Rational {
        return Err(Error::InvalidExtension(
            "fixed-space bound needs F = Q".into(),
        ));
    }
    let rational = rational_selmer_avg(req.p);
    if u64::from(req.ext.top().degree()) % req.p != 0 {
        return Ok(Bound {
            kind: BoundKind::FixedSpace,
            interval: rational,
            note: Some("p does not divide [K:Q]: Galois descent is exact"),
        });
    }
    Ok(Bound::new(BoundKind::FixedSpace, c + &rational))
}

/// `3^{5/2}(p+1)/p · Σ_{D∈𝒬(F)} |D|⁵` for odd `p` and `F` rational or multiquadratic.
pub fn multiquadratic_goodchar_avg(p: u64, base: &FieldDesc) -> Result<Bound> {
    if p == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let qset = base.qset().map_err(|_| Error::BaseNotMultiquadratic)?;
    let power_sum: Integer = qset.iter().map(|d| d.abs().pow(5)).sum();
    Ok(Bound::new(
        BoundKind::GoodCharAverage,
        rational_selmer_avg(p).scale(&rat_int(power_sum)),
    ))
}

/// `[K:F]·(C_p(K/F) + avg_F)`, where `avg_F` bounds the average `dim Sel_p(E/F)`.
pub fn p_extension_selmer_avg_bound(
    req: &BoundRequest,
    c: &BoundInterval,
    avg_base: &BoundInterval,
) -> Result<Bound> {
    let degree = u64::from(req.ext.degree_kf());
    if !is_power_of(degree, req.p) {
        return Err(Error::NotPPower { degree, p: req.p });
    }
    let total = (c + avg_base).scale(&rat_int(degree.into()));
    Ok(Bound::new(BoundKind::Selmer, total))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Bound on the average `dim Sel_p(E/F)` for the base field of `req`:
/// `3^{5/2}(p+1)/p` over `Q`; the good-characteristic bound for odd `p`; for
/// `p = 2` descent from `F` to `Q`, `[F:Q](C₂(F/Q) + 3^{7/2}/2)`.
pub fn base_selmer_avg(req: &BoundRequest) -> Result<BoundInterval> {
    let base = req.ext.base();
    if base == &FieldDesc::Rational {
        return Ok(rational_selmer_avg(req.p));
    }
    if !base.is_multiquadratic_or_rational() {
        return Err(Error::BaseNotMultiquadratic);
    }
    if req.p != 2 {
        return Ok(multiquadratic_goodchar_avg(req.p, base)?.interval);
    }
    let c_base = c_constant(&req.for_base_over_rationals()?)?;
    Ok((c_base + rational_selmer_avg(2)).scale(&rat_int(base.degree().into())))
}

/// Average `dim Sel_p(E/K)` bound for `[K:F]` a power of `p` and `F` rational or
/// multiquadratic. `c` is `C_p(K/F)` for `req`.
pub fn selmer_avg_bound(req: &BoundRequest, c: &BoundInterval) -> Result<Bound> {
    req.require_unconditional_prime()?;
    let avg = base_selmer_avg(req)?;
    p_extension_selmer_avg_bound(req, c, &avg)
}

/// Average rank of `E(K)`: the Selmer bound, since `E(K)/pE(K)` embeds in `Sel_p(E/K)`.
pub fn rank_avg_bound(req: &BoundRequest, c: &BoundInterval) -> Result<Bound> {
    let mut b = selmer_avg_bound(req, c)?;
    b.kind = BoundKind::Rank;
    Ok(b)
}

/// `(C_p(K/F) + avg_F)/dim_fixed`, `dim_fixed = dim (Λ/pΛ)^G`.
pub fn mw_multiplicity_avg_bound(
    c: &BoundInterval,
    dim_fixed: u32,
    avg_base: &BoundInterval,
) -> Result<Bound> {
    if dim_fixed == 0 {
        return Err(Error::HypothesisViolated);
    }
    let total = (c + avg_base).scale(&rat(1, i64::from(dim_fixed)));
    Ok(Bound::new(BoundKind::MwMultiplicity, total))
}

/// [`mw_multiplicity_avg_bound`] with `avg_F` from [`base_selmer_avg`].
pub fn mw_multiplicity_corollary(
    req: &BoundRequest,
    c: &BoundInterval,
    dim_fixed: u32,
) -> Result<Bound> {
    req.require_unconditional_prime()?;
    let avg = base_selmer_avg(req)?;
    mw_multiplicity_avg_bound(c, dim_fixed, &avg)
}

const PI_LO: &str = "3.14159265358979323846264338327950288";
const PI_HI: &str = "3.14159265358979323846264338327950289";

fn decimal(s: &str) -> Rational {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: Integer = alloc::format!("{whole}{frac}")
        .parse()
        .expect("decimal literal");
    Rational::new(digits, Integer::from(10).pow(frac.len() as u32))
}

/// Enclosure of `ζ(10) = π¹⁰/93555`.
pub fn zeta10() -> BoundInterval {
    let den = rat(93555, 1);
    let lo = decimal(PI_LO).pow(10) / &den;
    let hi = decimal(PI_HI).pow(10) / den;
    BoundInterval::new(lo, hi)
}

/// Enclosure of `X^{5/6}` to within `10⁻⁶`.
pub fn x_pow_five_sixths(x: &Integer) -> BoundInterval {
    assert!(!x.is_negative());
    let scale = Integer::from(10).pow(6);
    let r = iroot(&(x.pow(5) * scale.pow(6)), 6);
    BoundInterval::new(
        Rational::new(r.clone(), scale.clone()),
        Rational::new(r + 1, scale),
    )
}

/// `4X^{5/6}/ζ(10)`, the asymptotic size of the height-`X` family.
pub fn family_count_prediction(x: &Integer) -> BoundInterval {
    let z = zeta10();
    let xp = x_pow_five_sixths(x);
    let four = Integer::from(4);
    BoundInterval::new(
        xp.lo() * rat_int(four.clone()) / z.hi(),
        xp.hi() * rat_int(four) / z.lo(),
    )
}
