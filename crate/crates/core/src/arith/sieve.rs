use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const SEGMENT: u64 = 1 << 16;

/// Primes in `[lo, hi]`, ascending, produced by a segmented sieve of Eratosthenes.
pub fn prime_iter(lo: u64, hi: u64) -> Result<Primes> {
    if lo > hi {
        return Err(Error::EmptyRange);
    }
    let root = isqrt(hi);
    let base = small_primes(root);
    Ok(Primes {
        base,
        next_segment: lo.max(2),
        hi,
        buffer: Vec::new(),
        pos: 0,
    })
}

/// Streaming prime iterator; see [`prime_iter`].
#[derive(Debug, Clone)]
pub struct Primes {
    base: Vec<u64>,
    next_segment: u64,
    hi: u64,
    buffer: Vec<u64>,
    pos: usize,
}

impl Primes {
    fn fill(&mut self) -> bool {
        self.buffer.clear();
        self.pos = 0;
        while self.buffer.is_empty() {
            let start = self.next_segment;
            if start > self.hi || start == 0 {
                return false;
            }
            let end = start.saturating_add(SEGMENT - 1).min(self.hi);
            let mut composite = vec![false; (end - start + 1) as usize];
            for &q in &self.base {
                if q * q > end {
                    break;
                }
                let mut m = (start.div_ceil(q) * q).max(q * q);
                while m <= end {
                    composite[(m - start) as usize] = true;
                    m += q;
                }
            }
            self.buffer.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| start + i as u64)
                    .filter(|&n| n >= 2),
            );
            self.next_segment = end.wrapping_add(1);
        }
        true
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos == self.buffer.len() && !self.fill() {
            return None;
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    num_integer::Roots::sqrt(&n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime_u64;

    fn collect(lo: u64, hi: u64) -> Vec<u64> {
        prime_iter(lo, hi).unwrap().collect()
    }

    #[test]
    fn examples() {
        assert_eq!(collect(1, 10), vec![2, 3, 5, 7]);
        assert_eq!(collect(10, 20), vec![11, 13, 17, 19]);
        assert_eq!(collect(90, 100), vec![97]);
        assert_eq!(collect(0, 1), Vec::<u64>::new());
        assert_eq!(collect(7, 7), vec![7]);
        assert!(prime_iter(5, 4).is_err());
    }

    #[test]
    fn matches_primality_across_segments() {
        let lo = 3 * SEGMENT - 500;
        let hi = 3 * SEGMENT + 500;
        let expected: Vec<u64> = (lo..=hi).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(collect(lo, hi), expected);
        assert_eq!(prime_iter(1, 1_000_000).unwrap().count(), 78498);
    }
}
