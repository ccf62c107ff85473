//! Integral representations of finite groups given by generator matrices:
//! fixed spaces modulo `p`, the rank of the fixed sublattice, and the
//! `p`-torsion of `H¹(G, Λ)`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{is_prime_u64, Integer, Rational};
use crate::numfield::bareiss_determinant;
use crate::{Error, Result};

/// Default cap on the group order explored when checking finiteness.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Square integer matrix, row-major, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidLattice(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(IntMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1;
        }
        IntMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size)
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// `None` on overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let n = self.size;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = a.checked_mul(other.get(k, j))?;
                    entries[i * n + j] = entries[i * n + j].checked_add(t)?;
                }
            }
        }
        Some(IntMatrix { size: n, entries })
    }

    pub fn determinant(&self) -> Integer {
        bareiss_determinant(
            self.rows()
                .into_iter()
                .map(|r| r.into_iter().map(Integer::from).collect())
                .collect(),
        )
    }

    /// The matrix of the permutation `i ↦ perm[i]` on basis vectors.
    pub fn permutation(perm: &Permutation) -> Self {
        let k = perm.degree();
        let mut m = IntMatrix {
            size: k,
            entries: vec![0; k * k],
        };
        for i in 0..k {
            m.entries[perm.image(i) * k + i] = 1;
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.chunks(self.size))
            .finish()
    }
}

/// A permutation of `{0, …, k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let seen: BTreeSet<usize> = images.iter().copied().collect();
        if seen.len() != images.len() || images.iter().any(|&i| i >= images.len()) {
            return Err(Error::InvalidLattice(format!(
                "{images:?} is not a permutation"
            )));
        }
        Ok(Permutation(images))
    }

    /// Build from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &from) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::InvalidLattice(format!(
                        "cycle point out of range {degree}"
                    )));
                }
                images[from] = to;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }
}

/// A `Z`-lattice `Z^m` with a finite group acting through the given generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDesc {
    rank: usize,
    generators: Vec<IntMatrix>,
    group_order: usize,
}

impl LatticeDesc {
    pub fn new(rank: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        Self::with_order_bound(rank, generators, DEFAULT_ORDER_BOUND)
    }

    /// Checks unimodularity of each generator and that the generated group has at
    /// most `order_bound` elements.
    pub fn with_order_bound(
        rank: usize,
        generators: Vec<IntMatrix>,
        order_bound: usize,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        for g in &generators {
            if g.size() != rank {
                return Err(Error::InvalidLattice(format!(
                    "generator of size {} on a rank {rank} lattice",
                    g.size()
                )));
            }
            let det = g.determinant();
            if det != Integer::one() && det != -Integer::one() {
                return Err(Error::InvalidLattice(format!(
                    "generator has determinant {det}"
                )));
            }
        }
        let group_order = closure(rank, &generators, order_bound)?.len();
        Ok(LatticeDesc {
            rank,
            generators,
            group_order,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Every element of the group, identity first.
    pub fn elements(&self) -> Vec<IntMatrix> {
        closure(self.rank, &self.generators, self.group_order).expect("validated at construction")
    }

    /// Rows of the stacked `M_g − I` over all generators.
    fn stacked_differences(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for g in &self.generators {
            for (i, row) in g.rows().into_iter().enumerate() {
                let mut row = row;
                row[i] -= 1;
                rows.push(row);
            }
        }
        rows
    }
}

fn closure(rank: usize, generators: &[IntMatrix], order_bound: usize) -> Result<Vec<IntMatrix>> {
    let identity = IntMatrix::identity(rank);
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
    let mut order = vec![identity.clone()];
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    let infinite = || Error::InvalidLattice(format!("group order exceeds {order_bound}"));
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.checked_mul(s).ok_or_else(infinite)?;
            if seen.insert(h.clone()) {
                if seen.len() > order_bound {
                    return Err(infinite());
                }
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// `dim_{F_p} (Λ/pΛ)^G`.
pub fn fixed_dim_mod_p(lattice: &LatticeDesc, p: u64) -> Result<u32> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let rows = lattice.stacked_differences();
    Ok((lattice.rank - rank_mod_p(&rows, lattice.rank, p)) as u32)
}

/// `rank_Z Λ^G`.
pub fn rational_fixed_rank(lattice: &LatticeDesc) -> u32 {
    let rows = lattice.stacked_differences();
    (lattice.rank - rank_over_q(&rows, lattice.rank)) as u32
}

/// `dim_{F_p} H¹(G, Λ)[p]`, from `0 → Λ^G/p → (Λ/pΛ)^G → H¹(G,Λ)[p] → 0`.
pub fn h1_p_torsion_dim(lattice: &LatticeDesc, p: u64) -> Result<u32> {
    Ok(fixed_dim_mod_p(lattice, p)? - rational_fixed_rank(lattice))
}

fn rank_mod_p(rows: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let p128 = i128::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| (i128::from(x).rem_euclid(p128)) as u64)
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(factor, y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn rank_over_q(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        rank += 1;
    }
    rank
}

/// The sublattice spanned by `e_i − e_0`, `i = 1..k−1`, of the permutation
/// module on `k` points.
pub fn augmentation_lattice(perms: &[Permutation]) -> Result<LatticeDesc> {
    let k = common_degree(perms)?;
    if k < 2 {
        return Err(Error::InvalidLattice(
            "augmentation lattice needs at least 2 points".into(),
        ));
    }
    let m = k - 1;
    let generators = perms
        .iter()
        .map(|sigma| {
            // column i−1 holds σ(e_i − e_0) = (e_σi − e_0) − (e_σ0 − e_0)
            let mut entries = vec![0i64; m * m];
            for i in 1..k {
                if sigma.image(i) != 0 {
                    entries[(sigma.image(i) - 1) * m + (i - 1)] += 1;
                }
                if sigma.image(0) != 0 {
                    entries[(sigma.image(0) - 1) * m + (i - 1)] -= 1;
                }
            }
            IntMatrix { size: m, entries }
        })
        .collect();
    LatticeDesc::new(m, generators)
}

/// `Z^k` with the group permuting the basis.
pub fn permutation_lattice(perms: &[Permutation]) -> Result<LatticeDesc> {
    let k = common_degree(perms)?;
    LatticeDesc::new(k, perms.iter().map(IntMatrix::permutation).collect())
}

fn common_degree(perms: &[Permutation]) -> Result<usize> {
    let k = perms
        .first()
        .ok_or_else(|| Error::InvalidLattice("at least one permutation required".into()))?
        .degree();
    if perms.iter().any(|s| s.degree() != k) {
        return Err(Error::InvalidLattice(
            "permutations act on different point sets".into(),
        ));
    }
    Ok(k)
}

/// Outcome of checking `dim (Λ/pΛ)^G ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisCheck {
    Satisfied(u32),
    Violated,
}

pub fn mw_multiplicity_hypothesis_check(lattice: &LatticeDesc, p: u64) -> Result<HypothesisCheck> {
    Ok(match fixed_dim_mod_p(lattice, p)? {
        0 => HypothesisCheck::Violated,
        d => HypothesisCheck::Satisfied(d),
    })
}

/// `Z[ζ₅]` with `ζ` acting by multiplication and `ζ ↦ ζ²`, an action of
/// `F₅ ⋊ F₅^×` in the basis `1, ζ, ζ², ζ³`.
pub fn cyclotomic_five_lattice() -> LatticeDesc {
    let multiply = IntMatrix::from_rows(vec![
        vec![0, 0, 0, -1],
        vec![1, 0, 0, -1],
        vec![0, 1, 0, -1],
        vec![0, 0, 1, -1],
    ])
    .expect("square");
    // 1 ↦ 1, ζ ↦ ζ², ζ² ↦ ζ⁴ = −1−ζ−ζ²−ζ³, ζ³ ↦ ζ⁶ = ζ
    let square = IntMatrix::from_rows(vec![
        vec![1, 0, -1, 0],
        vec![0, 0, -1, 1],
        vec![0, 1, -1, 0],
        vec![0, 0, -1, 0],
    ])
    .expect("square");
    LatticeDesc::new(4, vec![multiply, square]).expect("finite unimodular action")
}

/// `F₅ ⋊ F₅^×` on the five points of `F₅`: `x ↦ x+1` and `x ↦ 2x`.
pub fn affine_five_permutations() -> Vec<Permutation> {
    vec![
        Permutation::new((0..5).map(|x| (x + 1) % 5).collect()).expect("permutation"),
        Permutation::new((0..5).map(|x| (2 * x) % 5).collect()).expect("permutation"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(rank: usize) -> LatticeDesc {
        LatticeDesc::new(rank, vec![IntMatrix::identity(rank)]).unwrap()
    }

    #[test]
    fn trivial_action() {
        for m in 1..5 {
            let l = trivial(m);
            for p in [2, 3, 5, 7] {
                assert_eq!(fixed_dim_mod_p(&l, p), Ok(m as u32));
                assert_eq!(h1_p_torsion_dim(&l, p), Ok(0));
            }
            assert_eq!(rational_fixed_rank(&l), m as u32);
        }
    }

    #[test]
    fn cyclotomic_five() {
        let l = cyclotomic_five_lattice();
        assert_eq!(l.group_order(), 20);
        assert_eq!(fixed_dim_mod_p(&l, 5), Ok(0));
        assert_eq!(rational_fixed_rank(&l), 0);
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(h1_p_torsion_dim(&l, p), Ok(0));
        }
        assert_eq!(
            mw_multiplicity_hypothesis_check(&l, 5),
            Ok(HypothesisCheck::Violated)
        );
    }

    #[test]
    fn affine_five_augmentation() {
        let l = augmentation_lattice(&affine_five_permutations()).unwrap();
        assert_eq!((l.rank(), l.group_order()), (4, 20));
        assert_eq!(fixed_dim_mod_p(&l, 5), Ok(1));
        assert_eq!(rational_fixed_rank(&l), 0);
        assert_eq!(h1_p_torsion_dim(&l, 5), Ok(1));
        assert_eq!(h1_p_torsion_dim(&l, 2), Ok(0));
        assert_eq!(h1_p_torsion_dim(&l, 3), Ok(0));
        assert_eq!(
            mw_multiplicity_hypothesis_check(&l, 5),
            Ok(HypothesisCheck::Satisfied(1))
        );
        let five_cycle = augmentation_lattice(&affine_five_permutations()[..1]).unwrap();
        assert!(fixed_dim_mod_p(&five_cycle, 5).unwrap() >= 1);
    }

    #[test]
    fn small_augmentations() {
        let id = Permutation::new(vec![0, 1, 2]).unwrap();
        let l = augmentation_lattice(&[id]).unwrap();
        assert_eq!(l.generators()[0], IntMatrix::identity(2));
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let l = augmentation_lattice(&[swap]).unwrap();
        assert_eq!(l.generators()[0].rows(), vec![vec![-1]]);
        assert_eq!(h1_p_torsion_dim(&l, 2), Ok(1));
    }

    #[test]
    fn rejects_bad_generators() {
        let shear = IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert!(LatticeDesc::new(2, vec![shear]).is_err());
        let doubling = IntMatrix::from_rows(vec![vec![2]]).unwrap();
        assert!(LatticeDesc::new(1, vec![doubling]).is_err());
        assert!(IntMatrix::from_rows(vec![vec![1, 0]]).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn cycles_shorthand() {
        let p = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p, Permutation::new(vec![1, 2, 0, 3]).unwrap());
        let l = permutation_lattice(&[p]).unwrap();
        assert_eq!(l.group_order(), 3);
        assert_eq!(rational_fixed_rank(&l), 2);
    }
}
