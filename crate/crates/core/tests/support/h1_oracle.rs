//! Independent computation of `dim_{F_p} H¹(G, Λ)[p]` from cocycles.
//!
//! A crossed homomorphism `f` is determined by its values on the generators
//! `s_1, …, s_k`; walking the Cayley graph expresses every `f(g)` as a linear map
//! `L_g` of `u = (f(s_1), …, f(s_k)) ∈ Z^{km}`. Every non-tree edge `g → gs`
//! imposes `L_{gs} = L_g + g·P_s`, which cuts out `Z¹ = ker C`. Coboundaries are
//! `x ↦ ((s_j − 1)x)_j`. With an integral basis of `Z¹` in hand, `H¹` is the
//! cokernel of the coboundary matrix `Y`, finite of rank `r`, and the number of
//! its invariant factors divisible by `p` is `r − rank_{F_p}(Y)`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use selbound_core::lattice::{IntMatrix, LatticeDesc};

/// Cohomology data independent of `p`.
pub struct CocycleData {
    /// Coordinates of the coboundaries in a basis of `Z¹`: `r` rows, `m` columns.
    coboundaries: Vec<Vec<BigInt>>,
    z1_rank: usize,
}

impl CocycleData {
    #[allow(clippy::needless_range_loop)]
    pub fn new(lattice: &LatticeDesc) -> Self {
        let m = lattice.rank();
        let gens = lattice.generators();
        let k = gens.len();
        let n = k * m;

        // L_g as an m × n matrix; BFS over the Cayley graph
        let identity = IntMatrix::identity(m);
        let mut linear: BTreeMap<IntMatrix, Vec<Vec<i64>>> = BTreeMap::new();
        linear.insert(identity.clone(), vec![vec![0; n]; m]);
        let mut queue = VecDeque::from([identity]);
        let mut constraints: Vec<Vec<i64>> = Vec::new();
        while let Some(g) = queue.pop_front() {
            let lg = linear[&g].clone();
            for (j, s) in gens.iter().enumerate() {
                let h = g.checked_mul(s).expect("finite group");
                let mut candidate = lg.clone();
                for row in 0..m {
                    for col in 0..m {
                        candidate[row][j * m + col] += g.get(row, col);
                    }
                }
                match linear.get(&h) {
                    Some(existing) => {
                        for row in 0..m {
                            let diff: Vec<i64> = (0..n)
                                .map(|c| existing[row][c] - candidate[row][c])
                                .collect();
                            if diff.iter().any(|&x| x != 0) {
                                constraints.push(diff);
                            }
                        }
                    }
                    None => {
                        linear.insert(h.clone(), candidate);
                        queue.push_back(h);
                    }
                }
            }
        }
        assert_eq!(linear.len(), lattice.group_order());

        let (pivots, u_inv) = column_reduce(&constraints, n);
        let z1_rank = n - pivots;

        let mut coboundaries = vec![vec![BigInt::zero(); m]; z1_rank];
        for t in 0..m {
            let mut u = vec![BigInt::zero(); n];
            for (j, s) in gens.iter().enumerate() {
                for row in 0..m {
                    let delta = s.get(row, t) - i64::from(row == t);
                    u[j * m + row] = BigInt::from(delta);
                }
            }
            let y: Vec<BigInt> = u_inv
                .iter()
                .map(|row| row.iter().zip(&u).map(|(a, b)| a * b).sum())
                .collect();
            assert!(
                y[..pivots].iter().all(Zero::is_zero),
                "coboundary outside Z¹"
            );
            for i in 0..z1_rank {
                coboundaries[i][t] = y[pivots + i].clone();
            }
        }
        CocycleData {
            coboundaries,
            z1_rank,
        }
    }

    /// `dim_{F_p} H¹(G, Λ)[p]`.
    pub fn h1_p_dim(&self, p: u64) -> u32 {
        assert_eq!(
            rank_mod(&self.coboundaries, 0),
            self.z1_rank,
            "H¹ must be finite"
        );
        (self.z1_rank - rank_mod(&self.coboundaries, p)) as u32
    }
}

/// Column-reduce `c` (rows × n) with unimodular column operations `U`, tracking
/// `U⁻¹`. Returns the number of pivot columns and `U⁻¹`; columns of `U` past the
/// pivots span the integer kernel.
fn column_reduce(c: &[Vec<i64>], n: usize) -> (usize, Vec<Vec<BigInt>>) {
    let mut a: Vec<Vec<BigInt>> = c
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut u_inv: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut piv = 0;
    for row in 0..a.len() {
        if piv == n {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (piv..n).filter(|&j| !a[row][j].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            if best != piv {
                for r in a.iter_mut() {
                    r.swap(best, piv);
                }
                u_inv.swap(best, piv);
            }
            if nonzero.len() == 1 {
                piv += 1;
                break;
            }
            for j in piv + 1..n {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&a[row][piv]);
                // col_j -= q·col_piv  ⇒  row_piv(U⁻¹) += q·row_j(U⁻¹)
                for r in a.iter_mut() {
                    let t = &q * &r[piv];
                    r[j] -= t;
                }
                let add: Vec<BigInt> = u_inv[j].iter().map(|x| &q * x).collect();
                for (x, y) in u_inv[piv].iter_mut().zip(add) {
                    *x += y;
                }
            }
        }
    }
    (piv, u_inv)
}

/// Rank over `F_p`, or over `Q` when `p = 0`.
fn rank_mod(rows: &[Vec<BigInt>], p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = if p == 0 {
        rows.to_vec()
    } else {
        let pb = BigInt::from(p);
        rows.iter()
            .map(|r| r.iter().map(|x| x.mod_floor(&pb)).collect())
            .collect()
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pr = m[rank].clone();
        for r in m.iter_mut().skip(rank + 1) {
            if r[col].is_zero() {
                continue;
            }
            let (a, b) = (pr[col].clone(), r[col].clone());
            for (x, y) in r.iter_mut().zip(&pr) {
                *x = &*x * &a - y * &b;
                if p != 0 {
                    *x = x.mod_floor(&BigInt::from(p));
                }
            }
        }
        rank += 1;
    }
    rank
}
