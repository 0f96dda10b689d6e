//! Independent oracles checked against the library: brute-force isomorphism
//! search, complex-exponential character values, a floating-point model of
//! the theta law, naive subgroup sweeps.

mod common;

use std::collections::HashSet;
use std::f64::consts::PI;

use theta_jordan::heis::{ThetaElement, ThetaGroup};
use theta_jordan::lattice::{self, ConcreteGroup};
use theta_jordan::symplectic::PairingSpace;
use theta_jordan::{make_group, AbElement, Character, FiniteAbelianGroup, RootExp};

type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cis(t: f64) -> C {
    (t.cos(), t.sin())
}

fn close(a: C, b: C) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

/// `l(k) = exp(2πi Σ c_i x_i / d_i)` evaluated in floating point.
fn character_value(g: &FiniteAbelianGroup, l: &[u64], k: &[u64]) -> C {
    let phase: f64 = g
        .invariant_factors()
        .iter()
        .zip(l.iter().zip(k))
        .map(|(&d, (&c, &x))| (c * x) as f64 / d as f64)
        .sum();
    cis(2.0 * PI * phase)
}

fn root(e: RootExp, m: u64) -> C {
    cis(2.0 * PI * e.0 as f64 / m as f64)
}

fn addition_table(g: &FiniteAbelianGroup) -> Vec<Vec<usize>> {
    let elems = g.enumerate_elements(64).unwrap();
    elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| g.index_of(&g.add(x, y).unwrap()).unwrap() as usize)
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn isomorphic_by_search(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    n == b.len()
        && permutations(n)
            .iter()
            .any(|f| (0..n).all(|x| (0..n).all(|y| f[a[x][y]] == b[f[x]][f[y]])))
}

#[test]
fn crt_recombination_matches_brute_force_isomorphism() {
    let z6 = FiniteAbelianGroup::from_cyclic(&[6]).unwrap();
    // table of Z_2 ⊕ Z_3 built by hand, not through canonicalization
    let z2z3: Vec<Vec<usize>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (a, b) = (i / 3, i % 3);
                    let (c, d) = (j / 3, j % 3);
                    ((a + c) % 2) * 3 + (b + d) % 3
                })
                .collect()
        })
        .collect();
    let canon = make_group(&[2, 3]).unwrap();
    assert_eq!(canon, z6);
    assert!(isomorphic_by_search(&z2z3, &addition_table(&canon)));
    let klein = make_group(&[2, 2]).unwrap();
    let z4 = make_group(&[4]).unwrap();
    assert!(!isomorphic_by_search(
        &addition_table(&klein),
        &addition_table(&z4)
    ));
}

#[test]
fn evaluate_matches_complex_exponential() {
    for g in common::all_abelian_groups_up_to(16) {
        let elems = g.enumerate_elements(16).unwrap();
        for m in [g.order(), 2 * g.order()] {
            for l in &elems {
                for k in &elems {
                    let e = g.evaluate(&Character(l.0.clone()), k, m).unwrap();
                    assert!(
                        close(root(e, m), character_value(&g, &l.0, &k.0)),
                        "{g}: l={l:?} k={k:?} m={m}"
                    );
                }
            }
        }
    }
}

#[test]
fn sign_character_values_against_complex_oracle() {
    let z2 = make_group(&[2]).unwrap();
    assert!(close(character_value(&z2, &[1], &[1]), (-1.0, 0.0)));
    let v4 = make_group(&[2, 2]).unwrap();
    assert!(close(
        character_value(&v4, &[1, 1], &[1, 0]),
        root(RootExp(2), 4)
    ));
}

/// The theta law with a genuine complex central coordinate.
fn complex_mul(
    g: &FiniteAbelianGroup,
    x: &(C, Vec<u64>, Vec<u64>),
    y: &(C, Vec<u64>, Vec<u64>),
) -> (C, Vec<u64>, Vec<u64>) {
    let z = cmul(cmul(x.0, y.0), character_value(g, &y.2, &x.1));
    let k = g
        .add(&AbElement(x.1.clone()), &AbElement(y.1.clone()))
        .unwrap()
        .0;
    let l = g
        .add(&AbElement(x.2.clone()), &AbElement(y.2.clone()))
        .unwrap()
        .0;
    (z, k, l)
}

#[test]
fn theta_law_matches_complex_model() {
    for f in [&[2][..], &[3], &[4], &[2, 2]] {
        let k = make_group(f).unwrap();
        let theta = ThetaGroup::new(k.clone()).unwrap();
        let m = theta.root_order();
        let to_c = |g: &ThetaElement| (root(g.a, m), g.k.0.clone(), g.l.0.clone());
        for i in 0..theta.order() {
            let x = theta.element_at(i).unwrap();
            for j in 0..theta.order() {
                let y = theta.element_at(j).unwrap();
                let ours = to_c(&theta.mul(&x, &y).unwrap());
                let model = complex_mul(&k, &to_c(&x), &to_c(&y));
                assert!(close(ours.0, model.0) && ours.1 == model.1 && ours.2 == model.2);
            }
        }
    }
}

#[test]
fn noncommuting_products_against_complex_model() {
    let k = make_group(&[2]).unwrap();
    let x = ((1.0, 0.0), vec![1], vec![0]);
    let y = ((1.0, 0.0), vec![0], vec![1]);
    let xy = complex_mul(&k, &x, &y);
    let yx = complex_mul(&k, &y, &x);
    assert!(close(xy.0, (-1.0, 0.0)) && xy.1 == [1] && xy.2 == [1]);
    assert!(close(yx.0, (1.0, 0.0)) && yx.1 == [1] && yx.2 == [1]);
}

#[test]
fn inverse_by_exhaustive_search() {
    for f in [&[2][..], &[3], &[4], &[2, 2], &[5], &[6]] {
        let theta = ThetaGroup::new(make_group(f).unwrap()).unwrap();
        let e = theta.identity();
        for i in 0..theta.order() {
            let g = theta.element_at(i).unwrap();
            let found: Vec<ThetaElement> = (0..theta.order())
                .map(|j| theta.element_at(j).unwrap())
                .filter(|h| theta.mul(&g, h).unwrap() == e)
                .collect();
            assert_eq!(found, vec![theta.inv(&g).unwrap()]);
        }
    }
    let theta = ThetaGroup::new(make_group(&[2]).unwrap()).unwrap();
    assert_eq!(
        theta.inv(&ThetaElement::new(0, vec![1], vec![1])).unwrap(),
        ThetaElement::new(1, vec![1], vec![1])
    );
}

/// Naive closure: iterate products of all pairs until nothing new appears.
fn naive_closure(g: &ConcreteGroup, gens: &[u32]) -> Vec<u32> {
    let mut set: HashSet<u32> = gens.iter().copied().collect();
    set.insert(g.identity());
    loop {
        let cur: Vec<u32> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            for &b in &cur {
                set.insert(g.mul(a, b));
            }
        }
        if set.len() == before {
            let mut v: Vec<u32> = set.into_iter().collect();
            v.sort_unstable();
            return v;
        }
    }
}

/// Closes every subset of at most three elements and keeps the largest
/// abelian result.
fn sweep_max_abelian(g: &ConcreteGroup) -> u64 {
    let n = g.order() as u32;
    let mut best = 1;
    let commutes = |s: &[u32]| s.iter().all(|&a| s.iter().all(|&b| g.commute(a, b)));
    for a in 0..n {
        for b in a..n {
            if !g.commute(a, b) {
                continue;
            }
            for c in b..n {
                if !commutes(&[a, b, c]) {
                    continue;
                }
                let s = naive_closure(g, &[a, b, c]);
                if s.len() as u64 > best && commutes(&s) {
                    best = s.len() as u64;
                }
            }
        }
    }
    best
}

#[test]
fn oracle_agrees_with_subset_sweep() {
    for f in [&[2][..], &[3], &[4], &[2, 2]] {
        let g = ThetaGroup::new(make_group(f).unwrap())
            .unwrap()
            .concrete(512)
            .unwrap();
        let sweep = sweep_max_abelian(&g);
        assert_eq!(lattice::max_abelian_order(&g, 512).unwrap(), sweep, "{f:?}");
        assert!(sweep >= lattice::center(&g).order());
    }
}

#[test]
fn oracle_exact_values() {
    let heis = |f: &[i64]| {
        ThetaGroup::new(make_group(f).unwrap())
            .unwrap()
            .concrete(512)
            .unwrap()
    };
    assert_eq!(lattice::max_abelian_order(&heis(&[2]), 512).unwrap(), 4);
    assert_eq!(lattice::max_abelian_order(&heis(&[3]), 512).unwrap(), 9);
    assert_eq!(lattice::min_abelian_index(&heis(&[2]), 512).unwrap(), 2);
    assert_eq!(lattice::min_abelian_index(&heis(&[4]), 512).unwrap(), 4);
    for n in 1..=5 {
        let g = ThetaGroup::new(FiniteAbelianGroup::cyclic(n).unwrap())
            .unwrap()
            .concrete(512)
            .unwrap();
        assert_eq!(lattice::min_abelian_index(&g, 512).unwrap(), n);
    }
}

#[test]
fn searched_subgroups_pass_independent_recheck() {
    for f in [&[2][..], &[3], &[4], &[2, 2]] {
        let g = ThetaGroup::new(make_group(f).unwrap())
            .unwrap()
            .concrete(512)
            .unwrap();
        let subs = lattice::abelian_subgroups_over_center(&g, 512).unwrap();
        assert!(!subs.is_empty());
        for s in &subs {
            assert!(lattice::is_subgroup(&g, s.members()));
            assert_eq!(naive_closure(&g, s.members()), s.members());
            assert_eq!(g.order() % s.order(), 0);
            assert!(lattice::is_abelian(&g, s));
        }
        let best = lattice::max_abelian_subgroup(&g, 512).unwrap();
        assert!(lattice::is_subgroup(&g, best.members()));
    }
}

/// Largest isotropic subgroup by scanning every subset of the point set.
fn isotropic_by_subsets(p: &PairingSpace) -> u64 {
    let pts = p.points(16).unwrap();
    let n = pts.len();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let members: Vec<_> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pts[i].clone())
            .collect();
        if (members.len() as u64) <= best {
            continue;
        }
        if let Ok(true) = p.is_isotropic(&members) {
            best = members.len() as u64;
        }
    }
    best
}

#[test]
fn max_isotropic_matches_subset_scan() {
    for f in [&[][..], &[2], &[3], &[4], &[2, 2]] {
        let p = PairingSpace::new(make_group(f).unwrap());
        let scan = isotropic_by_subsets(&p);
        assert_eq!(p.max_isotropic_order_brute(64).unwrap(), scan, "{f:?}");
        assert_eq!(scan, p.max_isotropic_order_structural());
    }
}
