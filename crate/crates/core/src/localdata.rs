//! Local norm indices `E(F_v)/N E(K_w)` at multiplicative primes, the local caps
//! on Selmer genus contributions, and the resulting per-curve genus bound
//! `g_p(K/F; E) = g⁰ + g¹`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{factorize, is_prime_u64, Integer};
use crate::curves::{reduction_type, CurveParams, ReductionType};
use crate::numfield::{local_degree_ratio, uniform_residue_degree, ExtensionDesc};
use crate::{Error, Result};

/// The cyclic group `E(F_v)/N E(K_w)` at a prime of multiplicative reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormIndexInfo {
    group_order: u32,
}

impl NormIndexInfo {
    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    /// `dim_{F_p}` of the group modulo `p`: 1 iff `p` divides its order.
    pub fn mod_p_dim(&self, p: u64) -> u32 {
        u32::from(u64::from(self.group_order) % p == 0)
    }
}

/// Split multiplicative reduction, unramified local extension of degree `n`:
/// cyclic of order `gcd(v(Δ), n)`.
pub fn norm_index_split_mult(v_disc: u32, n: u32) -> NormIndexInfo {
    NormIndexInfo {
        group_order: v_disc.gcd(&n),
    }
}

/// Non-split multiplicative reduction: trivial for odd `n`; for even `n`, of
/// order 2 exactly when `v(Δ)` is even.
pub fn norm_index_nonsplit_mult(v_disc: u32, n: u32) -> NormIndexInfo {
    let group_order = if n.is_multiple_of(2) && v_disc.is_multiple_of(2) {
        2
    } else {
        1
    };
    NormIndexInfo { group_order }
}

/// A place of `F`, as far as the local cap cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// Above `p`, with `[F_v : Q_p]`.
    AboveP {
        local_degree: u32,
    },
    FiniteNotP,
    Real,
    Complex,
}

/// Upper bound for the local genus contribution at a place.
pub fn local_cap(place: Place, p: u64) -> u32 {
    match place {
        Place::AboveP { local_degree } => 2 + local_degree,
        Place::FiniteNotP => 2,
        Place::Real => u32::from(p == 2),
        Place::Complex => 0,
    }
}

/// `Paper` charges 2 for every place above a bad prime that is not of type
/// `I₁`; `Refined` evaluates the norm index at multiplicative places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenusMode {
    Paper,
    Refined,
}

impl fmt::Display for GenusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusMode::Paper => "paper",
            GenusMode::Refined => "refined",
        })
    }
}

/// Per-curve genus bound with its decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusBoundReport {
    pub mode: GenusMode,
    /// Caps summed over places above `6pΔ_K` and at infinity.
    pub g0_cap: u32,
    /// Bad primes outside `6pΔ_K` with their total contribution over places of `F`.
    pub g1_terms: Vec<(u64, u32)>,
    pub total: u32,
}

impl GenusBoundReport {
    pub fn g1(&self) -> u32 {
        self.g1_terms.iter().map(|(_, c)| c).sum()
    }
}

/// Everything about `(K/F, p)` that does not depend on the curve. Reusing one
/// context across a family amortizes the `g⁰` computation.
#[derive(Debug, Clone)]
pub struct GenusContext<'a> {
    ext: &'a ExtensionDesc,
    p: u64,
    support: BTreeSet<u64>,
    g0_cap: u32,
    scan_limit: Integer,
}

impl<'a> GenusContext<'a> {
    /// `scan_limit` bounds `|4A³ + 27B²|` for curves handed to [`Self::bound`].
    pub fn new(ext: &'a ExtensionDesc, p: u64, scan_limit: Integer) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let support = ext.bad_support(p);
        let g0_cap = g0_cap(ext, p, &support)?;
        Ok(GenusContext {
            ext,
            p,
            support,
            g0_cap,
            scan_limit,
        })
    }

    pub fn g0_cap(&self) -> u32 {
        self.g0_cap
    }

    pub fn bound(&self, c: &CurveParams, mode: GenusMode) -> Result<GenusBoundReport> {
        let mut rest = c.discriminant_part().abs();
        if rest > self.scan_limit {
            return Err(Error::ScanLimitExceeded);
        }
        for &ell in &self.support {
            let l = Integer::from(ell);
            loop {
                let (q, r) = rest.div_rem(&l);
                if r.sign() != num_bigint::Sign::NoSign {
                    break;
                }
                rest = q;
            }
        }
        let mut g1_terms = Vec::new();
        for (q, _) in factorize(&rest)?.factors {
            let ell = q
                .to_u64()
                .ok_or(Error::FactorOutOfContract { bits: q.bits() })?;
            let contribution = self.contribution(c, ell, mode)?;
            g1_terms.push((ell, contribution));
        }
        let total = self.g0_cap + g1_terms.iter().map(|(_, c)| c).sum::<u32>();
        Ok(GenusBoundReport {
            mode,
            g0_cap: self.g0_cap,
            g1_terms,
            total,
        })
    }

    fn contribution(&self, c: &CurveParams, ell: u64, mode: GenusMode) -> Result<u32> {
        let places = self.ext.base().decompose(ell)?;
        let v_disc = match reduction_type(c, ell)? {
            ReductionType::Good => return Ok(0),
            ReductionType::Additive => return Ok(2 * places.len() as u32),
            ReductionType::Multiplicative { n: 1, .. } => return Ok(0),
            ReductionType::Multiplicative { n, split } => {
                if mode == GenusMode::Paper {
                    return Ok(2 * places.len() as u32);
                }
                (n, split)
            }
        };
        let (n, split_over_q) = v_disc;
        let f_top = uniform_residue_degree(self.ext.top(), ell)?;
        let mut total = 0;
        for v in &places {
            let local_degree = local_degree_ratio(f_top, v.f, ell)?;
            // every element of F_ℓ is a square in an even-degree extension
            let split = split_over_q || v.f % 2 == 0;
            let info = if split {
                norm_index_split_mult(n, local_degree)
            } else {
                norm_index_nonsplit_mult(n, local_degree)
            };
            total += info.mod_p_dim(self.p);
        }
        Ok(total)
    }
}

fn g0_cap(ext: &ExtensionDesc, p: u64, support: &BTreeSet<u64>) -> Result<u32> {
    let base = ext.base();
    let mut cap = 0;
    for &ell in support {
        for v in base.decompose(ell)? {
            let place = if ell == p {
                Place::AboveP {
                    local_degree: v.local_degree(),
                }
            } else {
                Place::FiniteNotP
            };
            cap += local_cap(place, p);
        }
    }
    let r1 = base.r1();
    let r2 = (base.degree() - r1) / 2;
    cap += r1 * local_cap(Place::Real, p) + r2 * local_cap(Place::Complex, p);
    Ok(cap)
}

/// One-shot form of [`GenusContext::bound`].
pub fn genus_bound(
    c: &CurveParams,
    ext: &ExtensionDesc,
    p: u64,
    mode: GenusMode,
    scan_limit: &Integer,
) -> Result<GenusBoundReport> {
    GenusContext::new(ext, p, scan_limit.clone())?.bound(c, mode)
}

/// Default cap on `|4A³ + 27B²|`: the factorization contract.
pub fn default_scan_limit() -> Integer {
    Integer::from(1) << 128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::enumerate;
    use crate::numfield::FieldDesc;

    fn eisenstein() -> ExtensionDesc {
        ExtensionDesc::over_rationals(FieldDesc::quadratic(Integer::from(-3)).unwrap()).unwrap()
    }

    fn curve(a: i64, b: i64) -> CurveParams {
        CurveParams::from_i64(a, b).unwrap()
    }

    #[test]
    fn split_norm_index() {
        assert_eq!(norm_index_split_mult(1, 7).group_order(), 1);
        assert_eq!(norm_index_split_mult(4, 6).group_order(), 2);
        assert_eq!(norm_index_split_mult(6, 3).group_order(), 3);
    }

    #[test]
    fn nonsplit_norm_index() {
        assert_eq!(norm_index_nonsplit_mult(2, 2).group_order(), 2);
        assert_eq!(norm_index_nonsplit_mult(3, 2).group_order(), 1);
        assert_eq!(norm_index_nonsplit_mult(7, 3).group_order(), 1);
    }

    #[test]
    fn norm_index_table() {
        for v in 1..=12u32 {
            for n in 1..=12u32 {
                let split = norm_index_split_mult(v, n);
                assert_eq!(split.group_order(), v.gcd(&n));
                assert_eq!(n % split.group_order(), 0);
                let nonsplit = norm_index_nonsplit_mult(v, n);
                if n % 2 == 1 {
                    assert_eq!(nonsplit.group_order(), 1);
                } else {
                    assert_eq!(nonsplit.group_order(), if v % 2 == 0 { 2 } else { 1 });
                }
                for p in [2u64, 3, 5, 7] {
                    assert!(split.mod_p_dim(p) <= 1 && nonsplit.mod_p_dim(p) <= 1);
                    assert_eq!(
                        split.mod_p_dim(p) == 1,
                        u64::from(split.group_order()) % p == 0
                    );
                }
            }
        }
    }

    #[test]
    fn caps() {
        assert_eq!(local_cap(Place::Real, 2), 1);
        assert_eq!(local_cap(Place::Real, 3), 0);
        assert_eq!(local_cap(Place::Complex, 3), 0);
        for p in [2, 3, 5] {
            assert_eq!(local_cap(Place::AboveP { local_degree: 1 }, p), 3);
        }
        assert_eq!(local_cap(Place::FiniteNotP, 5), 2);
    }

    #[test]
    fn genus_examples() {
        let ext = eisenstein();
        let limit = default_scan_limit();
        for mode in [GenusMode::Paper, GenusMode::Refined] {
            let r = genus_bound(&curve(1, 1), &ext, 2, mode, &limit).unwrap();
            assert_eq!(
                (r.g0_cap, r.g1_terms.clone(), r.total),
                (6, alloc::vec![(31, 0)], 6)
            );
            let r = genus_bound(&curve(1, -2), &ext, 2, mode, &limit).unwrap();
            assert_eq!((r.g0_cap, r.total), (6, 6));
        }
    }

    #[test]
    fn g0_over_biquadratic_base() {
        // F = Q(√2, √3), K = F(√-1) with Δ_K supported on {2, 3}; p = 3.
        // Places of F: 2 is totally ramified (1 place), 3 has e = 2, f = 2 (1 place
        // of local degree 4), four real places charged 0 for odd p.
        let base = FieldDesc::multiquadratic(alloc::vec![2.into(), 3.into()]).unwrap();
        let top = FieldDesc::multiquadratic(alloc::vec![2.into(), 3.into(), (-1).into()]).unwrap();
        let ext = ExtensionDesc::new(base, top, 2, None, true).unwrap();
        let ctx = GenusContext::new(&ext, 3, default_scan_limit()).unwrap();
        assert_eq!(ctx.g0_cap(), 2 + (2 + 4));
        let ctx = GenusContext::new(&ext, 2, default_scan_limit()).unwrap();
        assert_eq!(ctx.g0_cap(), (2 + 4) + 2 + 4);
    }

    #[test]
    fn refined_multiplicative_contribution() {
        // (-15, 22): 4·(-3375) + 27·484 = -432 = -2⁴·3³, bad only inside the support.
        let ext = eisenstein();
        let limit = default_scan_limit();
        let r = genus_bound(&curve(-15, 22), &ext, 2, GenusMode::Paper, &limit).unwrap();
        assert!(r.g1_terms.is_empty());
        // find a curve with I₂ at 5 (5 is inert in Q(√-3), so n = 2 over Q):
        // refined charges 1 for p = 2 either way, paper charges 2.
        let c = enumerate(&Integer::from(10_000))
            .find(|c| {
                matches!(
                    reduction_type(c, 5),
                    Ok(ReductionType::Multiplicative { n: 2, .. })
                )
            })
            .unwrap();
        let paper = genus_bound(&c, &ext, 2, GenusMode::Paper, &limit).unwrap();
        let refined = genus_bound(&c, &ext, 2, GenusMode::Refined, &limit).unwrap();
        let at5 = |r: &GenusBoundReport| r.g1_terms.iter().find(|t| t.0 == 5).unwrap().1;
        assert_eq!((at5(&paper), at5(&refined)), (2, 1));
        // for p = 3 the order divides 2, so nothing is charged
        let refined = genus_bound(&c, &ext, 3, GenusMode::Refined, &limit).unwrap();
        assert_eq!(at5(&refined), 0);
    }

    #[test]
    fn refined_never_exceeds_paper() {
        let ext = eisenstein();
        for p in [2u64, 3, 5] {
            let ctx = GenusContext::new(&ext, p, default_scan_limit()).unwrap();
            for c in enumerate(&Integer::from(10_000)) {
                let paper = ctx.bound(&c, GenusMode::Paper).unwrap();
                let refined = ctx.bound(&c, GenusMode::Refined).unwrap();
                assert!(refined.total <= paper.total, "{c}, p = {p}");
                assert!(refined.total >= refined.g0_cap);
                assert_eq!(paper.total, paper.g0_cap + paper.g1());
            }
        }
    }

    #[test]
    fn scan_limit_enforced() {
        let ext = eisenstein();
        let r = genus_bound(&curve(1, 1), &ext, 2, GenusMode::Paper, &Integer::from(30));
        assert_eq!(r, Err(Error::ScanLimitExceeded));
    }
}
