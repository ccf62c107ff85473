//! Descriptions of the base field `F` and of a Galois extension `K/F`, and the
//! splitting data the bounds consume: `[F:Q]`, `r₁(F)`, `𝒬(F)`, `ω_F(n)` and
//! residue degrees at unramified primes.
//!
//! Only the prime support of `Δ_K` is ever stored; every formula downstream
//! depends on `Δ_K` through that support alone.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    dedekind_index_coprime, factorize, is_squarefree, kronecker, kronecker_i64_prime, mod_small,
    poly_factor_mod, prime_iter, squarefree_product, Integer, Rational,
};
use crate::{Error, Result};

/// A prime of `F` above a rational prime: ramification index and residue degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalPrime {
    pub e: u32,
    pub f: u32,
}

impl LocalPrime {
    /// `[F_v : Q_ℓ]`
    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }
}

/// How irreducibility of a monogenic defining polynomial was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    /// Irreducible modulo the given prime.
    ModPrime(u64),
    /// The factor-degree patterns modulo several primes admit no common proper
    /// subset sum.
    DegreePatterns,
    /// Asserted by the caller.
    Trusted,
}

/// Input for [`FieldDesc::monogenic`].
#[derive(Debug, Clone, Default)]
pub struct MonogenicSpec {
    /// Monic defining polynomial, constant term first.
    pub minpoly: Vec<Integer>,
    /// Field discriminant, if known. Its prime support is the ramified set.
    pub discriminant: Option<Integer>,
    /// Explicit ramified primes.
    pub ramified: Option<BTreeSet<u64>>,
    /// Caller asserts `[O_F : Z[θ]]` is coprime to `disc(minpoly)`, so the
    /// polynomial discriminant's support is the ramified set.
    pub index_coprime: bool,
    /// Decomposition of primes the polynomial cannot resolve (`ℓ | index`).
    pub splitting: BTreeMap<u64, Vec<LocalPrime>>,
    /// Accept the polynomial as irreducible when no proof is found.
    pub trust_irreducible: bool,
}

/// A field given by a monic integral defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonogenicField {
    minpoly: Vec<Integer>,
    discriminant: Option<Integer>,
    ramified: Option<BTreeSet<u64>>,
    index_coprime: bool,
    splitting: BTreeMap<u64, Vec<LocalPrime>>,
    irreducibility: Irreducibility,
}

impl MonogenicField {
    pub fn minpoly(&self) -> &[Integer] {
        &self.minpoly
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }
}

/// `Q`, `Q(√D)`, a multiquadratic field or a monogenic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDesc {
    Rational,
    Quadratic {
        d: Integer,
    },
    /// Generators multiplicatively independent modulo squares; `qset` is the
    /// full group they generate, ascending.
    Multiquadratic {
        generators: Vec<Integer>,
        qset: Vec<Integer>,
    },
    Monogenic(MonogenicField),
}

impl FieldDesc {
    pub fn quadratic(d: Integer) -> Result<Self> {
        check_quadratic_generator(&d)?;
        Ok(FieldDesc::Quadratic { d })
    }

    pub fn multiquadratic(generators: Vec<Integer>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidField(
                "multiquadratic field needs a generator".into(),
            ));
        }
        for d in &generators {
            check_quadratic_generator(d)?;
        }
        let mut group = vec![Integer::one()];
        for d in &generators {
            let extra: Vec<Integer> = group.iter().map(|g| squarefree_product(g, d)).collect();
            group.extend(extra);
        }
        group.sort();
        group.dedup();
        if group.len() != 1 << generators.len() {
            return Err(Error::InvalidField(
                "generators are not independent modulo squares".into(),
            ));
        }
        Ok(FieldDesc::Multiquadratic {
            generators,
            qset: group,
        })
    }

    pub fn monogenic(spec: MonogenicSpec) -> Result<Self> {
        let MonogenicSpec {
            mut minpoly,
            discriminant,
            ramified,
            index_coprime,
            splitting,
            trust_irreducible,
        } = spec;
        while minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(Error::InvalidField(
                "defining polynomial must have degree ≥ 1".into(),
            ));
        }
        if !minpoly.last().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidField(
                "defining polynomial must be monic".into(),
            ));
        }
        for (ell, primes) in &splitting {
            let total: u32 = primes.iter().map(|q| q.e * q.f).sum();
            if total as usize != minpoly.len() - 1 {
                return Err(Error::InvalidField(format!(
                    "splitting data at {ell} has Σ e·f = {total}, expected {}",
                    minpoly.len() - 1
                )));
            }
        }
        let irreducibility = match prove_irreducible(&minpoly) {
            Some(proof) => proof,
            None if trust_irreducible => Irreducibility::Trusted,
            None => {
                return Err(Error::InvalidField(
                    "irreducibility not established; set trust_irreducible".into(),
                ))
            }
        };
        Ok(FieldDesc::Monogenic(MonogenicField {
            minpoly,
            discriminant,
            ramified,
            index_coprime,
            splitting,
            irreducibility,
        }))
    }

    /// `[F : Q]`
    pub fn degree(&self) -> u32 {
        match self {
            FieldDesc::Rational => 1,
            FieldDesc::Quadratic { .. } => 2,
            FieldDesc::Multiquadratic { generators, .. } => 1 << generators.len(),
            FieldDesc::Monogenic(m) => (m.minpoly.len() - 1) as u32,
        }
    }

    /// Number of real embeddings.
    pub fn r1(&self) -> u32 {
        match self {
            FieldDesc::Rational => 1,
            FieldDesc::Quadratic { d } => {
                if d.is_positive() {
                    2
                } else {
                    0
                }
            }
            FieldDesc::Multiquadratic { qset, .. } => {
                if qset.iter().all(|d| d.is_positive()) {
                    self.degree()
                } else {
                    0
                }
            }
            FieldDesc::Monogenic(m) => count_real_roots(&m.minpoly),
        }
    }

    /// True for `Q` and for (multi)quadratic fields.
    pub fn is_multiquadratic_or_rational(&self) -> bool {
        !matches!(self, FieldDesc::Monogenic(_))
    }

    /// Squarefree `D` with `Q(√D) ⊆ F`, ascending, including 1.
    pub fn qset(&self) -> Result<Vec<Integer>> {
        match self {
            FieldDesc::Rational => Ok(vec![Integer::one()]),
            FieldDesc::Quadratic { d } => {
                let mut out = vec![Integer::one(), d.clone()];
                out.sort();
                Ok(out)
            }
            FieldDesc::Multiquadratic { qset, .. } => Ok(qset.clone()),
            FieldDesc::Monogenic(_) => Err(Error::QsetUndefined),
        }
    }

    /// The primes of `F` above the rational prime `ℓ`.
    pub fn decompose(&self, ell: u64) -> Result<Vec<LocalPrime>> {
        if !crate::arith::is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        match self {
            FieldDesc::Rational => Ok(vec![LocalPrime { e: 1, f: 1 }]),
            FieldDesc::Quadratic { d } => Ok(quadratic_group_decomposition(
                &[Integer::one(), d.clone()],
                ell,
            )),
            FieldDesc::Multiquadratic { qset, .. } => Ok(quadratic_group_decomposition(qset, ell)),
            FieldDesc::Monogenic(m) => monogenic_decomposition(m, ell),
        }
    }

    /// Number of primes of `F` above `ℓ`.
    pub fn primes_above(&self, ell: u64) -> Result<u32> {
        Ok(self.decompose(ell)?.len() as u32)
    }

    /// `ω_F(n)`: the number of prime ideals of `F` dividing `n`.
    pub fn omega(&self, n: &Integer) -> Result<u32> {
        let fac = factorize(n)?;
        let mut total = 0;
        for (q, _) in &fac.factors {
            let ell = q
                .to_u64()
                .ok_or(Error::FactorOutOfContract { bits: q.bits() })?;
            total += self.primes_above(ell)?;
        }
        Ok(total)
    }

    /// `ω_F` of a product given by its prime support.
    pub fn omega_of_support(&self, primes: &BTreeSet<u64>) -> Result<u32> {
        primes.iter().map(|&ell| self.primes_above(ell)).sum()
    }

    /// Rational primes that ramify in `F`.
    pub fn ramified_primes(&self) -> Result<BTreeSet<u64>> {
        match self {
            FieldDesc::Rational => Ok(BTreeSet::new()),
            FieldDesc::Quadratic { d } => quadratic_group_ramified(&[Integer::one(), d.clone()]),
            FieldDesc::Multiquadratic { qset, .. } => quadratic_group_ramified(qset),
            FieldDesc::Monogenic(m) => {
                if let Some(r) = &m.ramified {
                    return Ok(r.clone());
                }
                let disc =
                    match (&m.discriminant, m.index_coprime) {
                        (Some(d), _) => d.clone(),
                        (None, true) => poly_discriminant(&m.minpoly),
                        (None, false) => return Err(Error::InvalidField(
                            "ramified primes unknown: give ramified, discriminant or index_coprime"
                                .into(),
                        )),
                    };
                support_u64(&disc)
            }
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => f.write_str("Q"),
            FieldDesc::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
            FieldDesc::Multiquadratic { generators, .. } => {
                f.write_str("Q(")?;
                for (i, d) in generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "sqrt({d})")?;
                }
                f.write_str(")")
            }
            FieldDesc::Monogenic(m) => {
                f.write_str("Q[x]/(")?;
                f.write_str(&format_poly(&m.minpoly))?;
                f.write_str(")")
            }
        }
    }
}

fn format_poly(coeffs: &[Integer]) -> String {
    let mut s = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        let show_coeff = !mag.is_one() || i == 0;
        if show_coeff {
            s.push_str(&format!("{mag}"));
        }
        match i {
            0 => {}
            1 => s.push('x'),
            _ => s.push_str(&format!("x^{i}")),
        }
    }
    s
}

fn check_quadratic_generator(d: &Integer) -> Result<()> {
    if d.is_zero() || d.is_one() {
        return Err(Error::InvalidField(format!(
            "quadratic generator {d} must be ≠ 0, 1"
        )));
    }
    if !is_squarefree(d)? {
        return Err(Error::InvalidField(format!(
            "quadratic generator {d} is not squarefree"
        )));
    }
    Ok(())
}

fn unramified_at(d: &Integer, ell: u64) -> bool {
    if ell == 2 {
        mod_small(d, 4) == 1
    } else {
        mod_small(d, ell) != 0
    }
}

fn kronecker_prime(d: &Integer, ell: u64) -> i8 {
    match d.to_i64() {
        Some(small) => kronecker_i64_prime(small, ell),
        None => kronecker(d, &Integer::from(ell)),
    }
}

/// Decomposition in the multiquadratic field whose squarefree group is `group`:
/// with `U` the quadratic subfields unramified at `ℓ`, `e = |group|/|U|`,
/// `f ∈ {1, 2}` by whether `ℓ` splits in all of them, and `g = |U|/f`.
fn quadratic_group_decomposition(group: &[Integer], ell: u64) -> Vec<LocalPrime> {
    let unramified: Vec<&Integer> = group.iter().filter(|d| unramified_at(d, ell)).collect();
    let u = unramified.len() as u32;
    let f = if unramified.iter().all(|d| kronecker_prime(d, ell) == 1) {
        1
    } else {
        2
    };
    let e = group.len() as u32 / u;
    vec![LocalPrime { e, f }; (u / f) as usize]
}

fn quadratic_group_ramified(group: &[Integer]) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for d in group {
        if d.is_one() {
            continue;
        }
        out.extend(support_u64(d)?);
        if mod_small(d, 4) != 1 {
            out.insert(2);
        }
    }
    Ok(out)
}

fn support_u64(n: &Integer) -> Result<BTreeSet<u64>> {
    let fac = factorize(n)?;
    fac.factors
        .iter()
        .map(|(q, _)| {
            q.to_u64()
                .ok_or(Error::FactorOutOfContract { bits: q.bits() })
        })
        .collect()
}

fn monogenic_decomposition(m: &MonogenicField, ell: u64) -> Result<Vec<LocalPrime>> {
    let fac = poly_factor_mod(&m.minpoly, ell)?;
    let from_factors = || {
        let mut out: Vec<LocalPrime> = fac
            .factors
            .iter()
            .map(|(g, e)| LocalPrime {
                e: *e,
                f: g.degree().unwrap_or(0) as u32,
            })
            .collect();
        out.sort();
        out
    };
    if fac.is_squarefree() || dedekind_index_coprime(&m.minpoly, &fac) {
        return Ok(from_factors());
    }
    if let Some(data) = m.splitting.get(&ell) {
        return Ok(data.clone());
    }
    Err(Error::SplittingDataRequired(ell))
}

/// Try to prove a monic integer polynomial irreducible over `Q` by reducing it
/// modulo small primes of good reduction.
fn prove_irreducible(f: &[Integer]) -> Option<Irreducibility> {
    let n = f.len() - 1;
    if n == 1 {
        return Some(Irreducibility::DegreePatterns);
    }
    // possible degrees of a proper rational factor, as a bitmask over 1..n-1
    let full: u64 = ((1u64 << n) - 1) & !1;
    let mut feasible = full;
    for ell in prime_iter(2, 2000).ok()? {
        let Ok(fac) = poly_factor_mod(f, ell) else {
            continue;
        };
        if !fac.is_squarefree() {
            continue;
        }
        let degrees = fac.degrees();
        if degrees.len() == 1 {
            return Some(Irreducibility::ModPrime(ell));
        }
        let mut sums: u64 = 1;
        for d in degrees {
            sums |= sums << d;
        }
        feasible &= sums;
        if feasible & full == 0 {
            return Some(Irreducibility::DegreePatterns);
        }
    }
    None
}

/// Discriminant of a monic integer polynomial, `(-1)^{n(n-1)/2} Res(f, f')`.
pub fn poly_discriminant(f: &[Integer]) -> Integer {
    let n = f.len() - 1;
    let df: Vec<Integer> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Integer::from(i))
        .collect();
    let res = resultant(f, &df);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Resultant via the Sylvester matrix and fraction-free elimination.
fn resultant(f: &[Integer], g: &[Integer]) -> Integer {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![Integer::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

pub(crate) fn bareiss_determinant(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::one();
    }
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Number of distinct real roots, by Sturm's theorem.
fn count_real_roots(f: &[Integer]) -> u32 {
    let to_q = |p: &[Integer]| -> Vec<Rational> {
        p.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    };
    let mut chain: Vec<Vec<Rational>> = vec![to_q(f)];
    let df: Vec<Integer> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Integer::from(i))
        .collect();
    chain.push(to_q(&df));
    loop {
        let len = chain.len();
        let r = rat_poly_rem(&chain[len - 2], &chain[len - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let sign_changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count() as u32;
    let at_pos_inf: Vec<bool> = chain
        .iter()
        .map(|p| p.last().unwrap().is_positive())
        .collect();
    let at_neg_inf: Vec<bool> = chain
        .iter()
        .map(|p| {
            let lead_pos = p.last().unwrap().is_positive();
            if (p.len() - 1) % 2 == 1 {
                !lead_pos
            } else {
                lead_pos
            }
        })
        .collect();
    sign_changes(at_neg_inf) - sign_changes(at_pos_inf)
}

fn rat_poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let top = r.len() - 1;
        let coef = &r[top] / &lead;
        let shift = top - db;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &coef * c;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// The degree of the unramified local extension `K_w/F_v` at `ℓ`: `f_K(ℓ)/f_F(ℓ)`.
///
/// Residue degrees of `K` above `ℓ` must agree (true whenever `K/Q` is Galois),
/// and so must those of `F`.
pub fn residue_degree_unramified(top: &FieldDesc, base: &FieldDesc, ell: u64) -> Result<u32> {
    let f_top = uniform_residue_degree(top, ell)?;
    let f_base = uniform_residue_degree(base, ell)?;
    local_degree_ratio(f_top, f_base, ell)
}

pub(crate) fn local_degree_ratio(f_top: u32, f_base: u32, ell: u64) -> Result<u32> {
    if !f_top.is_multiple_of(f_base) {
        return Err(Error::NotGaloisAt(ell));
    }
    Ok(f_top / f_base)
}

pub(crate) fn uniform_residue_degree(field: &FieldDesc, ell: u64) -> Result<u32> {
    if field.ramified_primes().is_ok_and(|r| r.contains(&ell)) {
        return Err(Error::Ramified(ell));
    }
    let primes = field.decompose(ell)?;
    if primes.iter().any(|q| q.e > 1) {
        return Err(Error::Ramified(ell));
    }
    let f = primes[0].f;
    if primes.iter().any(|q| q.f != f) {
        return Err(Error::NotGaloisAt(ell));
    }
    Ok(f)
}

/// A Galois extension `K/F` described by its two fields, `[K:F]`, and the prime
/// support of `Δ_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDesc {
    base: FieldDesc,
    top: FieldDesc,
    degree_kf: u32,
    ramified: BTreeSet<u64>,
}

impl ExtensionDesc {
    /// `ramified = None` derives the set from `top`. `galois` must be `true`:
    /// Galois-ness is asserted by the caller and spot-checked later through
    /// uniform residue degrees.
    pub fn new(
        base: FieldDesc,
        top: FieldDesc,
        degree_kf: u32,
        ramified: Option<BTreeSet<u64>>,
        galois: bool,
    ) -> Result<Self> {
        if !galois {
            return Err(Error::InvalidExtension(
                "K/F must be asserted Galois".into(),
            ));
        }
        if degree_kf == 0 || top.degree() != degree_kf * base.degree() {
            return Err(Error::InvalidExtension(format!(
                "[K:Q] = {} but [K:F]·[F:Q] = {}·{}",
                top.degree(),
                degree_kf,
                base.degree()
            )));
        }
        let ramified = match ramified {
            Some(r) => r,
            None => top.ramified_primes()?,
        };
        for &ell in &ramified {
            if !crate::arith::is_prime_u64(ell) {
                return Err(Error::NotPrime(ell));
            }
        }
        if ramified.is_empty() && top.degree() > 1 {
            return Err(Error::InvalidExtension(
                "a proper extension of Q ramifies somewhere".into(),
            ));
        }
        Ok(ExtensionDesc {
            base,
            top,
            degree_kf,
            ramified,
        })
    }

    /// `F/Q` viewed as an extension, with `F`'s own ramified set.
    pub fn over_rationals(field: FieldDesc) -> Result<Self> {
        let degree = field.degree();
        Self::new(FieldDesc::Rational, field, degree, None, true)
    }

    pub fn base(&self) -> &FieldDesc {
        &self.base
    }

    pub fn top(&self) -> &FieldDesc {
        &self.top
    }

    /// `[K:F]`
    pub fn degree_kf(&self) -> u32 {
        self.degree_kf
    }

    /// Rational primes dividing `Δ_K`.
    pub fn ramified(&self) -> &BTreeSet<u64> {
        &self.ramified
    }

    /// Prime support of `6pΔ_K`.
    pub fn bad_support(&self, p: u64) -> BTreeSet<u64> {
        let mut s = self.ramified.clone();
        s.extend([2, 3, p]);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&c| int(c)).collect()
    }

    fn mono(coeffs: &[i64]) -> FieldDesc {
        FieldDesc::monogenic(MonogenicSpec {
            minpoly: ints(coeffs),
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(FieldDesc::Rational.degree(), 1);
        assert_eq!(
            FieldDesc::multiquadratic(ints(&[2, 3])).unwrap().degree(),
            4
        );
        assert_eq!(mono(&[-2, 0, 0, 1]).degree(), 3);
    }

    #[test]
    fn r1_examples() {
        assert_eq!(FieldDesc::quadratic(int(-3)).unwrap().r1(), 0);
        assert_eq!(FieldDesc::quadratic(int(5)).unwrap().r1(), 2);
        assert_eq!(FieldDesc::multiquadratic(ints(&[2, 3])).unwrap().r1(), 4);
        assert_eq!(FieldDesc::multiquadratic(ints(&[2, -3])).unwrap().r1(), 0);
        assert_eq!(mono(&[-2, 0, 0, 1]).r1(), 1);
        assert_eq!(mono(&[1, -3, 0, 1]).r1(), 3);
        assert_eq!(mono(&[1, 0, 1]).r1(), 0);
    }

    #[test]
    fn qset_examples() {
        assert_eq!(FieldDesc::Rational.qset().unwrap(), ints(&[1]));
        assert_eq!(
            FieldDesc::quadratic(int(-10)).unwrap().qset().unwrap(),
            ints(&[-10, 1])
        );
        assert_eq!(
            FieldDesc::multiquadratic(ints(&[2, -3]))
                .unwrap()
                .qset()
                .unwrap(),
            ints(&[-6, -3, 1, 2])
        );
        assert_eq!(mono(&[-2, 0, 0, 1]).qset(), Err(Error::QsetUndefined));
    }

    #[test]
    fn invalid_descriptors() {
        assert!(FieldDesc::quadratic(int(1)).is_err());
        assert!(FieldDesc::quadratic(int(12)).is_err());
        assert!(FieldDesc::multiquadratic(ints(&[2, 3, 6])).is_err());
        assert!(FieldDesc::multiquadratic(ints(&[2, 8])).is_err());
        // reducible: (x - 1)(x + 1)
        assert!(FieldDesc::monogenic(MonogenicSpec {
            minpoly: ints(&[-1, 0, 1]),
            ..Default::default()
        })
        .is_err());
        // not monic
        assert!(FieldDesc::monogenic(MonogenicSpec {
            minpoly: ints(&[1, 0, 2]),
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn biquadratic_needs_trust() {
        // x^4 - 10x^2 + 1 is reducible modulo every prime
        let spec = MonogenicSpec {
            minpoly: ints(&[1, 0, -10, 0, 1]),
            ..Default::default()
        };
        assert!(FieldDesc::monogenic(spec.clone()).is_err());
        let f = FieldDesc::monogenic(MonogenicSpec {
            trust_irreducible: true,
            ..spec
        })
        .unwrap();
        match f {
            FieldDesc::Monogenic(m) => assert_eq!(m.irreducibility(), Irreducibility::Trusted),
            _ => unreachable!(),
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(FieldDesc::Rational.omega(&int(12)), Ok(2));
        let f = FieldDesc::quadratic(int(-3)).unwrap();
        assert_eq!(f.omega(&int(6 * 3 * 11)), Ok(3));
        let f = FieldDesc::quadratic(int(-10)).unwrap();
        assert_eq!(f.omega(&int(30)), Ok(3));
        // 7 splits in Q(sqrt(-3))
        assert_eq!(FieldDesc::quadratic(int(-3)).unwrap().omega(&int(7)), Ok(2));
        // 2 splits in Q(sqrt(-7)) since -7 = 1 mod 8
        assert_eq!(FieldDesc::quadratic(int(-7)).unwrap().omega(&int(2)), Ok(2));
    }

    #[test]
    fn multiquadratic_local_data_at_two() {
        // Q(sqrt(-1), sqrt(2)) = Q(ζ_8): 2 totally ramified
        let f = FieldDesc::multiquadratic(ints(&[-1, 2])).unwrap();
        assert_eq!(f.decompose(2).unwrap(), vec![LocalPrime { e: 4, f: 1 }]);
        // Q(sqrt(-7), sqrt(5)): U(2) = {1, -7, 5, -35}; -35 = 5 mod 8 so f = 2
        let f = FieldDesc::multiquadratic(ints(&[-7, 5])).unwrap();
        assert_eq!(f.decompose(2).unwrap(), vec![LocalPrime { e: 1, f: 2 }; 2]);
        assert_eq!(f.ramified_primes().unwrap(), [5, 7].into_iter().collect());
    }

    #[test]
    fn ramified_sets() {
        assert_eq!(
            FieldDesc::quadratic(int(-3))
                .unwrap()
                .ramified_primes()
                .unwrap(),
            [3].into()
        );
        assert_eq!(
            FieldDesc::quadratic(int(-10))
                .unwrap()
                .ramified_primes()
                .unwrap(),
            [2, 5].into()
        );
        assert_eq!(
            FieldDesc::multiquadratic(ints(&[2, 3]))
                .unwrap()
                .ramified_primes()
                .unwrap(),
            [2, 3].into()
        );
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly_discriminant(&ints(&[-2, 0, 0, 1])), int(-108));
        assert_eq!(poly_discriminant(&ints(&[1, 0, 1])), int(-4));
        assert_eq!(
            poly_discriminant(&ints(&[1, 3, 12, -11, 6, -3, 1])),
            int(-16 * 129140163)
        );
    }

    #[test]
    fn monogenic_needs_data_at_index_primes() {
        // Z[sqrt(-3)]: 2 divides the index
        let f = FieldDesc::monogenic(MonogenicSpec {
            minpoly: ints(&[3, 0, 1]),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(f.decompose(2), Err(Error::SplittingDataRequired(2)));
        let mut splitting = BTreeMap::new();
        splitting.insert(2, vec![LocalPrime { e: 1, f: 2 }]);
        let f = FieldDesc::monogenic(MonogenicSpec {
            minpoly: ints(&[3, 0, 1]),
            splitting,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(f.decompose(2).unwrap(), vec![LocalPrime { e: 1, f: 2 }]);
        // 3 ramifies but Dedekind resolves it
        assert_eq!(f.decompose(3).unwrap(), vec![LocalPrime { e: 2, f: 1 }]);
    }

    #[test]
    fn extension_validation() {
        let k = FieldDesc::quadratic(int(-3)).unwrap();
        let ext = ExtensionDesc::new(FieldDesc::Rational, k.clone(), 2, None, true).unwrap();
        assert_eq!(ext.ramified(), &[3].into());
        assert_eq!(ext.bad_support(2), [2, 3].into());
        assert!(ExtensionDesc::new(FieldDesc::Rational, k.clone(), 3, None, true).is_err());
        assert!(ExtensionDesc::new(FieldDesc::Rational, k, 2, None, false).is_err());
    }
}
