#![allow(dead_code)]

use theta_jordan::{make_group, FiniteAbelianGroup};

/// The ten isomorphism types of abelian groups of order 2..=8.
pub const SMALL_TYPES: [&[i64]; 10] = [
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[7],
    &[8],
    &[4, 2],
    &[2, 2, 2],
];

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of the given order, one per isomorphism type, built
/// from prime-power cyclic factors (one partition of each exponent).
pub fn abelian_types(order: u64) -> Vec<FiniteAbelianGroup> {
    let mut primes = Vec::new();
    let mut n = order;
    let mut p = 2;
    while n > 1 {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p as i64, e));
        }
        p += 1;
    }
    let mut factor_lists: Vec<Vec<i64>> = vec![vec![]];
    for (p, e) in primes {
        let mut next = Vec::new();
        for base in &factor_lists {
            for part in partitions(e, e) {
                let mut l = base.clone();
                l.extend(part.iter().map(|&k| p.pow(k)));
                next.push(l);
            }
        }
        factor_lists = next;
    }
    factor_lists
        .iter()
        .map(|f| make_group(f).unwrap())
        .collect()
}

pub fn all_abelian_groups_up_to(order: u64) -> Vec<FiniteAbelianGroup> {
    (1..=order).flat_map(abelian_types).collect()
}
