//! Small permutation groups shared by the cohomology checks.

use std::collections::BTreeSet;

use selbound_core::lattice::{permutation_lattice, LatticeDesc, Permutation};

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in all_permutations(n - 1) {
        for pos in 0..n {
            let mut p = smaller.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn group_key(lattice: &LatticeDesc) -> BTreeSet<Vec<Vec<i64>>> {
    lattice.elements().iter().map(|g| g.rows()).collect()
}

/// Two-generator subgroups of `S_n` for `n ≤ 4`, each once, plus a fixed list on
/// 5 and 6 points.
pub fn small_permutation_groups() -> Vec<Vec<Permutation>> {
    let mut seen = BTreeSet::new();
    let mut groups = Vec::new();
    for n in 2..=4 {
        let perms = all_permutations(n);
        for a in &perms {
            for b in &perms {
                let gens = vec![
                    Permutation::new(a.clone()).unwrap(),
                    Permutation::new(b.clone()).unwrap(),
                ];
                let key = group_key(&permutation_lattice(&gens).unwrap());
                if seen.insert(key) {
                    groups.push(gens);
                }
            }
        }
    }
    let cyc = |n: usize, cycles: &[&[usize]]| Permutation::from_cycles(n, cycles).unwrap();
    let curated = vec![
        vec![cyc(5, &[&[0, 1, 2, 3, 4]])],
        vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
        vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 2, 4, 3]])],
        vec![cyc(5, &[&[0, 1], &[2, 3, 4]])],
        vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[3, 4]])],
        vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])],
        vec![cyc(5, &[&[0, 1, 2, 3]]), cyc(5, &[&[0, 1]])],
        vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])],
        vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[1, 5], &[2, 4]])],
        vec![
            cyc(6, &[&[0, 1, 2], &[3, 4, 5]]),
            cyc(6, &[&[0, 3], &[1, 5], &[2, 4]]),
        ],
        vec![cyc(6, &[&[0, 1], &[2, 3]]), cyc(6, &[&[4, 5]])],
        vec![
            cyc(6, &[&[0, 1, 2], &[3, 4, 5]]),
            cyc(6, &[&[0, 1], &[3, 4]]),
        ],
        vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])],
        vec![cyc(6, &[&[0, 2, 4], &[1, 3, 5]]), cyc(6, &[&[0, 1]])],
    ];
    for gens in curated {
        let lattice = permutation_lattice(&gens).unwrap();
        assert!(
            lattice.group_order() <= 24,
            "{gens:?} has order {}",
            lattice.group_order()
        );
        groups.push(gens);
    }
    groups
}
