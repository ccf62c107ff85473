//! Allocation-light enumeration of the height-`X` family on machine integers.
//!
//! [`crate::curves::enumerate`] works on arbitrary-precision values; this kernel
//! covers the ranges a census can actually sweep (`X` up to about `10¹⁸`) and is
//! what the statistics harness shards across threads.

use alloc::vec::Vec;

use crate::arith::{factorize_u64, prime_iter};

/// Coefficient bounds for height `≤ X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusBox {
    pub a_max: i64,
    pub b_max: i64,
}

impl CensusBox {
    /// `None` for `X = 0`.
    pub fn new(x: u64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let a_max = num_integer::Roots::cbrt(&x) as i64;
        let b_max = num_integer::Roots::sqrt(&x) as i64;
        Some(CensusBox { a_max, b_max })
    }
}

/// `4A³ + 27B²`, exact for `|A| < 2^40`, `|B| < 2^58`.
pub fn discriminant_part(a: i64, b: i64) -> i128 {
    let a = i128::from(a);
    let b = i128::from(b);
    4 * a * a * a + 27 * b * b
}

/// Sixth powers `q⁶` of the primes `q` that could make `(A, B)` non-minimal:
/// those with `q⁴ | A`, or for `A = 0`, all with `q⁶ ≤ b_max`.
fn sixth_power_moduli(a: i64, b_max: i64) -> Vec<i64> {
    if a == 0 {
        let limit = num_integer::Roots::nth_root(&(b_max.max(1) as u64), 6);
        return prime_iter(2, limit.max(2))
            .map(|it| {
                it.filter(|&q| q.pow(6) <= b_max as u64)
                    .map(|q| q.pow(6) as i64)
                    .collect()
            })
            .unwrap_or_default();
    }
    factorize_u64(a.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e >= 4)
        .filter_map(|(q, _)| i64::try_from(q.checked_pow(6)?).ok())
        .collect()
}

/// Members with `A` in `[a_lo, a_hi]` (clipped to the box), in enumeration order.
/// The callback receives `(A, B, 4A³ + 27B²)`.
pub fn scan(x: u64, a_lo: i64, a_hi: i64, mut visit: impl FnMut(i64, i64, i128)) {
    let Some(bx) = CensusBox::new(x) else { return };
    for a in a_lo.max(-bx.a_max)..=a_hi.min(bx.a_max) {
        let moduli = sixth_power_moduli(a, bx.b_max);
        for b in -bx.b_max..=bx.b_max {
            if moduli.iter().any(|&m| b % m == 0) {
                continue;
            }
            let disc = discriminant_part(a, b);
            if disc != 0 {
                visit(a, b, disc);
            }
        }
    }
}

/// Number of members with `A` in `[a_lo, a_hi]`.
pub fn count(x: u64, a_lo: i64, a_hi: i64) -> u64 {
    let mut n = 0;
    scan(x, a_lo, a_hi, |_, _, _| n += 1);
    n
}

/// Members with `A` in `[a_lo, a_hi]` whose cubic `x³ + Ax + B` has an integer
/// root, i.e. with a rational point of order 2.
pub fn count_two_torsion(x: u64, a_lo: i64, a_hi: i64) -> u64 {
    let Some(bx) = CensusBox::new(x) else {
        return 0;
    };
    // an integer root r satisfies r² ≤ |A| + |B|
    let r_max = num_integer::Roots::sqrt(&((bx.a_max + bx.b_max) as u64)) as i64 + 1;
    let mut total = 0;
    let mut seen = Vec::new();
    for a in a_lo.max(-bx.a_max)..=a_hi.min(bx.a_max) {
        let moduli = sixth_power_moduli(a, bx.b_max);
        seen.clear();
        for r in -r_max..=r_max {
            let b = -(i128::from(r) * (i128::from(r) * i128::from(r) + i128::from(a)));
            if b.unsigned_abs() <= bx.b_max as u128 {
                seen.push(b as i64);
            }
        }
        seen.sort_unstable();
        seen.dedup();
        total += seen
            .iter()
            .filter(|&&b| !moduli.iter().any(|&m| b % m == 0) && discriminant_part(a, b) != 0)
            .count() as u64;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Integer;
    use crate::curves::enumerate;
    use num_traits::ToPrimitive;

    #[test]
    fn counts_match_the_exact_enumerator() {
        for x in [1u64, 2, 27, 64, 1000, 4096, 20_000] {
            let expected: Vec<(i64, i64)> = enumerate(&Integer::from(x))
                .map(|c| (c.a().to_i64().unwrap(), c.b().to_i64().unwrap()))
                .collect();
            let mut got = Vec::new();
            scan(x, i64::MIN, i64::MAX, |a, b, _| got.push((a, b)));
            assert_eq!(got, expected, "X = {x}");
        }
        assert_eq!(count(0, -10, 10), 0);
        assert_eq!(count(1, i64::MIN, i64::MAX), 8);
        assert_eq!(count(1000, i64::MIN, i64::MAX), 1320);
        assert_eq!(count(10_000, i64::MIN, i64::MAX), 8630);
    }

    #[test]
    fn zero_a_column_respects_sixth_powers() {
        // X = 10⁴: b_max = 100, so 64 is the only sixth power in range
        let mut bs = Vec::new();
        scan(10_000, 0, 0, |_, b, _| bs.push(b));
        assert!(!bs.contains(&64) && !bs.contains(&-64) && !bs.contains(&0));
        assert_eq!(bs.len(), 200 - 2);
    }

    #[test]
    fn two_torsion_matches_brute_force() {
        for x in [100u64, 5000, 30_000] {
            let mut expected = 0;
            scan(x, i64::MIN, i64::MAX, |a, b, _| {
                let bound = (a.abs() + b.abs()) as f64;
                let r_max = bound.sqrt() as i64 + 1;
                if (-r_max..=r_max).any(|r| r * r * r + a * r + b == 0) {
                    expected += 1;
                }
            });
            assert_eq!(
                count_two_torsion(x, i64::MIN, i64::MAX),
                expected,
                "X = {x}"
            );
        }
    }
}
