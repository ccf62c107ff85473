//! Census experiments over the height-`X` family, sharded across threads.
//!
//! Every experiment is a map over contiguous `A`-ranges followed by an in-order
//! reduction of exact integers, so a report does not depend on the shard count.

use std::fmt;
use std::thread;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use selbound_core::arith::{is_prime_u64, Integer, Rational};
use selbound_core::bounds::{
    c_constant, density_term, family_count_prediction, BoundInterval, BoundRequest, CConstantPlan,
    PrimeSumPart,
};
use selbound_core::census::{self, CensusBox};
use selbound_core::curves::CurveParams;
use selbound_core::localdata::{GenusContext, GenusMode};
use selbound_core::{Error, Result};

/// One experiment: an exact observation next to the value it is compared with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub name: String,
    pub x: u64,
    pub shards: usize,
    pub observed: Rational,
    pub predicted: Rational,
    pub abs_error: Rational,
}

impl ExperimentReport {
    fn new(name: String, x: u64, shards: usize, observed: Rational, predicted: Rational) -> Self {
        let abs_error = (&observed - &predicted).abs();
        ExperimentReport {
            name,
            x,
            shards,
            observed,
            predicted,
            abs_error,
        }
    }

    /// `|observed − predicted| / predicted`; infinite when nothing is predicted.
    pub fn relative_error(&self) -> f64 {
        if self.predicted.is_zero() {
            return f64::INFINITY;
        }
        to_f64(&(&self.abs_error / self.predicted.abs()))
    }

    /// Column names matching [`fmt::Display`].
    pub const HEADER: &'static str =
        "name\tX\tobserved\tpredicted\tabs_error\tobserved_exact\tpredicted_exact";
}

/// `name, X, observed, predicted, |error|` as 6-decimal floats, then the exact
/// observed and predicted values.
impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
            self.name,
            self.x,
            to_f64(&self.observed),
            to_f64(&self.predicted),
            to_f64(&self.abs_error),
            self.observed,
            self.predicted,
        )
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Thread count used when the caller does not choose one.
pub fn default_shards() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Split `[-a_max, a_max]` into at most `shards` contiguous, nonempty ranges.
pub fn a_ranges(a_max: i64, shards: usize) -> Vec<(i64, i64)> {
    let total = 2 * a_max + 1;
    let shards = (shards.max(1) as i64).min(total);
    let mut out = Vec::with_capacity(shards as usize);
    let mut lo = -a_max;
    for k in 0..shards {
        // first `total % shards` ranges get one extra value
        let len = total / shards + i64::from(k < total % shards);
        out.push((lo, lo + len - 1));
        lo += len;
    }
    out
}

/// Run `map` on every item on its own scoped thread and fold the results in
/// item order.
fn map_reduce<I, T, M, R>(items: Vec<I>, map: M, init: T, reduce: R) -> T
where
    I: Send,
    T: Send,
    M: Fn(I) -> T + Sync,
    R: Fn(T, T) -> T,
{
    let map = &map;
    let parts: Vec<T> = thread::scope(|s| {
        let handles: Vec<_> = items
            .into_iter()
            .map(|item| s.spawn(move || map(item)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census shard panicked"))
            .collect()
    });
    parts.into_iter().fold(init, reduce)
}

fn census_map<T, M>(x: u64, shards: usize, map: M, init: T, reduce: impl Fn(T, T) -> T) -> T
where
    T: Send,
    M: Fn(i64, i64) -> T + Sync,
{
    let Some(bx) = CensusBox::new(x) else {
        return init;
    };
    map_reduce(
        a_ranges(bx.a_max, shards),
        |(lo, hi)| map(lo, hi),
        init,
        reduce,
    )
}

fn ratio(num: u64, den: u64) -> Rational {
    if den == 0 {
        return Rational::zero();
    }
    Rational::new(num.into(), den.into())
}

fn integer(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exact `#ℰ(X)` against `4X^{5/6}/ζ(10)` (the midpoint of its enclosure).
pub fn count_curves(x: u64, shards: usize) -> Result<ExperimentReport> {
    if x == 0 {
        return Err(Error::EmptyRange);
    }
    let n = census_map(
        x,
        shards,
        |lo, hi| census::count(x, lo, hi),
        0,
        |a, b| a + b,
    );
    let predicted = midpoint(&family_count_prediction(&Integer::from(x)));
    Ok(ExperimentReport::new(
        "count".into(),
        x,
        shards,
        integer(n),
        predicted,
    ))
}

fn midpoint(i: &BoundInterval) -> Rational {
    (i.lo() + i.hi()) / Rational::from_integer(2.into())
}

/// Fraction of `ℰ(X)` with additive or `I_n`, `n ≥ 2`, reduction at `ℓ`, against
/// the local density `(2ℓ⁸−ℓ⁷−1)/(ℓ¹⁰−1)`.
pub fn bad_not_i1_fraction(ell: u64, x: u64, shards: usize) -> Result<ExperimentReport> {
    if !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell < 5 {
        return Err(Error::ReductionPrimeTooSmall);
    }
    if x == 0 {
        return Err(Error::EmptyRange);
    }
    // For ℓ ≥ 5 both kinds are exactly ℓ² | 4A³ + 27B²: additive reduction means
    // ℓ | A and ℓ | B, which already forces ℓ² | 4A³ + 27B².
    let square = i128::from(ell) * i128::from(ell);
    let (bad, total) = census_map(
        x,
        shards,
        |lo, hi| {
            let (mut bad, mut total) = (0u64, 0u64);
            census::scan(x, lo, hi, |_, _, disc| {
                total += 1;
                bad += u64::from(disc % square == 0);
            });
            (bad, total)
        },
        (0, 0),
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(ExperimentReport::new(
        format!("bad-not-I1[ell={ell}]"),
        x,
        shards,
        ratio(bad, total),
        density_term(ell),
    ))
}

/// Mean genus-theory bound over `ℰ(X)` against `C_p(K/F).hi`.
pub fn avg_genus_bound_empirical(
    req: &BoundRequest,
    x: u64,
    mode: GenusMode,
    shards: usize,
) -> Result<ExperimentReport> {
    if x == 0 {
        return Err(Error::EmptyRange);
    }
    let scan_limit = census_scan_limit(x);
    let ctx = GenusContext::new(&req.ext, req.p, scan_limit)?;
    let (sum, total) = census_map(
        x,
        shards,
        |lo, hi| {
            let mut acc = Ok((0u64, 0u64));
            census::scan(x, lo, hi, |a, b, _| {
                let Ok((sum, total)) = &mut acc else { return };
                let step = CurveParams::from_i64(a, b).and_then(|c| ctx.bound(&c, mode));
                match step {
                    Ok(report) => {
                        *sum += u64::from(report.total);
                        *total += 1;
                    }
                    Err(e) => acc = Err(e),
                }
            });
            acc
        },
        Ok((0, 0)),
        |a, b| {
            let (a, b) = (a?, b?);
            Ok((a.0 + b.0, a.1 + b.1))
        },
    )?;
    let c = c_constant_sharded(req, shards)?;
    Ok(ExperimentReport::new(
        format!("genus-avg[p={},mode={mode}]", req.p),
        x,
        shards,
        ratio(sum, total),
        c.hi().clone(),
    ))
}

/// Upper bound on `|4A³ + 27B²|` over the height-`X` box.
fn census_scan_limit(x: u64) -> Integer {
    let bx = CensusBox::new(x).expect("x ≥ 1");
    let a = BigInt::from(bx.a_max);
    let b = BigInt::from(bx.b_max);
    BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b
}

/// Fraction of `ℰ(X)` with a rational point of order 2. Nothing is predicted
/// beyond decay in `X`, so the comparison value is 0.
pub fn two_torsion_fraction(x: u64, shards: usize) -> Result<ExperimentReport> {
    if x == 0 {
        return Err(Error::EmptyRange);
    }
    let (hits, total) = census_map(
        x,
        shards,
        |lo, hi| {
            (
                census::count_two_torsion(x, lo, hi),
                census::count(x, lo, hi),
            )
        },
        (0, 0),
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(ExperimentReport::new(
        "two-torsion".into(),
        x,
        shards,
        ratio(hits, total),
        Rational::zero(),
    ))
}

/// [`c_constant`] with the prime sum split over `shards` threads. The partial
/// sums are exact integers, so the result is identical for every shard count.
pub fn c_constant_sharded(req: &BoundRequest, shards: usize) -> Result<BoundInterval> {
    if shards <= 1 {
        return c_constant(req);
    }
    let plan = CConstantPlan::new(req)?;
    let sum = map_reduce(
        plan.ranges(shards as u64),
        |(lo, hi)| plan.sum_range(lo, hi),
        Ok(PrimeSumPart::default()),
        |a: Result<PrimeSumPart>, b| Ok(a? + b?),
    )?;
    Ok(plan.finish(sum))
}
