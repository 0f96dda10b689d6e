//! Subgroup engine for small concrete groups given by a multiplication table.
//!
//! The centerpiece is [`max_abelian_subgroup`], an exhaustive search for an
//! abelian subgroup of largest order. Every maximal abelian subgroup contains
//! the center, so the search starts from `Z(G)` and repeatedly adjoins an
//! element of the current centralizer, deduplicating visited subgroups by
//! their member set. Each maximal abelian subgroup `B` is reached along some
//! chain `Z(G) < ⟨Z(G), b_1⟩ < …` of subgroups of `B`, so nothing is missed.

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

/// Default limit on `|G|` for the exhaustive abelian-subgroup search.
pub const DEFAULT_ORACLE_CAP: u64 = 512;

/// Hard ceiling on tabulated groups; the table has `order²` entries.
pub const TABLE_CAP: u64 = 4096;

/// A finite group on the indices `0..order` with a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteGroup {
    order: u32,
    identity: u32,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl ConcreteGroup {
    /// Tabulates `mul` over `0..order`.
    ///
    /// Fails if the order exceeds `cap` (or [`TABLE_CAP`]), if `mul` leaves the
    /// index range, if `identity` is not a two-sided identity, or if some
    /// element has no inverse.
    pub fn from_fn<F>(order: u64, identity: u32, cap: u64, mul: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> u32,
    {
        let cap = cap.min(TABLE_CAP);
        if order > cap {
            return Err(Error::CapExceeded {
                what: "concrete group",
                size: order,
                cap,
            });
        }
        if order == 0 || u64::from(identity) >= order {
            return Err(Error::InvalidIndex {
                index: identity.into(),
                order,
            });
        }
        let n = order as u32;
        let mut table = Vec::with_capacity((order * order) as usize);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::AxiomViolation(format!(
                        "closure: {a} * {b} = {c} is out of range"
                    )));
                }
                table.push(c);
            }
        }
        let mut group = ConcreteGroup {
            order: n,
            identity,
            table,
            inverse: Vec::new(),
        };
        for a in 0..n {
            if group.mul(identity, a) != a || group.mul(a, identity) != a {
                return Err(Error::AxiomViolation(format!(
                    "identity: {identity} does not fix {a}"
                )));
            }
        }
        let mut inverse = Vec::with_capacity(n as usize);
        for a in 0..n {
            let row = &group.table[(a * n) as usize..((a + 1) * n) as usize];
            match row.iter().position(|&c| c == identity) {
                Some(b) => inverse.push(b as u32),
                None => {
                    return Err(Error::AxiomViolation(format!("inverse: {a} has none")));
                }
            }
        }
        group.inverse = inverse;
        Ok(group)
    }

    /// `Z_n` with addition mod `n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive {
                what: "cyclic group order",
                value: 0,
            });
        }
        let m = n as u32;
        Self::from_fn(n, 0, TABLE_CAP, |a, b| (a + b) % m)
    }

    pub fn order(&self) -> u64 {
        self.order.into()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.order + b) as usize]
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    #[inline]
    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Least `t ≥ 1` with `gᵗ = e`.
    pub fn element_order(&self, g: u32) -> u64 {
        let mut t = 1u64;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            t += 1;
        }
        t
    }

    fn check_index(&self, g: u32) -> Result<()> {
        if g >= self.order {
            return Err(Error::InvalidIndex {
                index: g.into(),
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Checks associativity on `samples` random triples and the
    /// inverse table on every element.
    pub fn spot_check(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = rng.gen_range(0..self.order);
            let b = rng.gen_range(0..self.order);
            let c = rng.gen_range(0..self.order);
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::AxiomViolation(format!(
                    "associativity at ({a}, {b}, {c})"
                )));
            }
        }
        for a in 0..self.order {
            let b = self.inverse(a);
            if self.mul(a, b) != self.identity || self.mul(b, a) != self.identity {
                return Err(Error::AxiomViolation(format!("inverse of {a}")));
            }
        }
        Ok(())
    }
}

/// A subgroup, stored as its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    fn from_bits(bits: &Bits, group_order: u64) -> Self {
        let members = bits.iter().collect::<Vec<_>>();
        assert!(
            group_order.is_multiple_of(members.len() as u64),
            "Lagrange violated: subgroup of order {} in group of order {group_order}",
            members.len()
        );
        Subgroup { members }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: u32) -> Self {
        Bits(vec![0; (n as usize).div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: u32) -> bool {
        let w = &mut self.0[(i / 64) as usize];
        let mask = 1u64 << (i % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    fn count(&self) -> u64 {
        self.0.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }
}

/// Smallest subgroup containing `generators`, by breadth-first right
/// multiplication from the identity.
pub fn closure(g: &ConcreteGroup, generators: &[u32]) -> Result<Subgroup> {
    for &x in generators {
        g.check_index(x)?;
    }
    Ok(Subgroup::from_bits(&closure_bits(g, generators), g.order()))
}

fn closure_bits(g: &ConcreteGroup, generators: &[u32]) -> Bits {
    let mut bits = Bits::new(g.order);
    bits.set(g.identity);
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = g.mul(x, s);
            if bits.set(y) {
                queue.push_back(y);
            }
        }
    }
    bits
}

/// Independent re-check that `members` is a subgroup: contains the identity
/// and is closed under products and inverses.
pub fn is_subgroup(g: &ConcreteGroup, members: &[u32]) -> bool {
    let set: HashSet<u32> = members.iter().copied().collect();
    set.contains(&g.identity())
        && members.iter().all(|&a| {
            set.contains(&g.inverse(a)) && members.iter().all(|&b| set.contains(&g.mul(a, b)))
        })
}

pub fn is_abelian(g: &ConcreteGroup, s: &Subgroup) -> bool {
    let m = s.members();
    m.iter()
        .enumerate()
        .all(|(i, &a)| m[i + 1..].iter().all(|&b| g.commute(a, b)))
}

pub fn center(g: &ConcreteGroup) -> Subgroup {
    let mut bits = Bits::new(g.order);
    for a in 0..g.order {
        if (0..g.order).all(|b| g.commute(a, b)) {
            bits.set(a);
        }
    }
    Subgroup::from_bits(&bits, g.order())
}

/// Elements commuting with every element of `gens`.
fn centralizer_bits(g: &ConcreteGroup, gens: &[u32]) -> Bits {
    let mut bits = Bits::new(g.order);
    for x in 0..g.order {
        if gens.iter().all(|&s| g.commute(x, s)) {
            bits.set(x);
        }
    }
    bits
}

/// `⟨A, x⟩` for a subgroup `A` and an element `x` commuting with all of `A`:
/// the union of the cosets `A·xⁱ` until a power of `x` falls back into `A`.
fn adjoin_commuting(g: &ConcreteGroup, a: &Bits, x: u32) -> Bits {
    let mut out = a.clone();
    let base: Vec<u32> = a.iter().collect();
    let mut power = x;
    while !a.get(power) {
        for &y in &base {
            out.set(g.mul(y, power));
        }
        power = g.mul(power, x);
    }
    out
}

fn check_oracle_cap(g: &ConcreteGroup, cap: u64) -> Result<()> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "group for exhaustive search",
            size: g.order(),
            cap,
        });
    }
    Ok(())
}

struct AbelianSearch<'a> {
    group: &'a ConcreteGroup,
    seen: HashSet<Bits>,
    prune: bool,
    best: Option<Bits>,
    best_order: u64,
    record: Vec<Bits>,
}

impl AbelianSearch<'_> {
    fn visit(&mut self, members: Bits, gens: &mut Vec<u32>) {
        let size = members.count();
        if size > self.best_order {
            self.best_order = size;
            self.best = Some(members.clone());
        }
        let centralizer = centralizer_bits(self.group, gens);
        if self.prune && centralizer.count() <= self.best_order {
            return;
        }
        if !self.prune {
            self.record.push(members.clone());
        }
        for x in centralizer.iter() {
            if members.get(x) {
                continue;
            }
            let next = adjoin_commuting(self.group, &members, x);
            if self.seen.insert(next.clone()) {
                gens.push(x);
                self.visit(next, gens);
                gens.pop();
            }
        }
    }
}

fn run_search(g: &ConcreteGroup, prune: bool) -> AbelianSearch<'_> {
    let z = center(g);
    let mut root = Bits::new(g.order);
    for &x in z.members() {
        root.set(x);
    }
    let mut search = AbelianSearch {
        group: g,
        seen: HashSet::from([root.clone()]),
        prune,
        best: None,
        best_order: 0,
        record: Vec::new(),
    };
    let mut gens = z.members().to_vec();
    search.visit(root, &mut gens);
    search
}

/// An abelian subgroup of `g` of the largest possible order.
pub fn max_abelian_subgroup(g: &ConcreteGroup, cap: u64) -> Result<Subgroup> {
    check_oracle_cap(g, cap)?;
    let search = run_search(g, true);
    let best = search.best.expect("the center is always visited");
    Ok(Subgroup::from_bits(&best, g.order()))
}

/// Maximum order of an abelian subgroup, by exhaustive search.
pub fn max_abelian_order(g: &ConcreteGroup, cap: u64) -> Result<u64> {
    max_abelian_subgroup(g, cap).map(|s| s.order())
}

/// `|G| / max_abelian_order(G)`.
pub fn min_abelian_index(g: &ConcreteGroup, cap: u64) -> Result<u64> {
    Ok(g.order() / max_abelian_order(g, cap)?)
}

/// Every abelian subgroup of `g` that contains the center, in discovery order.
pub fn abelian_subgroups_over_center(g: &ConcreteGroup, cap: u64) -> Result<Vec<Subgroup>> {
    check_oracle_cap(g, cap)?;
    let search = run_search(g, false);
    Ok(search
        .record
        .iter()
        .map(|b| Subgroup::from_bits(b, g.order()))
        .collect())
}

/// All subgroups of an abelian group, by iterated cyclic extension from the
/// trivial subgroup. Sorted by order, then by members.
pub fn subgroups_of_abelian(g: &ConcreteGroup, cap: u64) -> Result<Vec<Subgroup>> {
    check_oracle_cap(g, cap)?;
    if !g.is_commutative() {
        return Err(Error::AxiomViolation(
            "commutativity required for cyclic-extension enumeration".into(),
        ));
    }
    let mut trivial = Bits::new(g.order);
    trivial.set(g.identity);
    let mut seen = HashSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([trivial]);
    let mut found = Vec::new();
    while let Some(s) = queue.pop_front() {
        for x in 0..g.order {
            if s.get(x) {
                continue;
            }
            let t = adjoin_commuting(g, &s, x);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
        found.push(Subgroup::from_bits(&s, g.order()));
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// Multiset of element orders, as `order ↦ count`.
pub fn order_sequence(g: &ConcreteGroup, cap: u64) -> Result<BTreeMap<u64, u64>> {
    check_oracle_cap(g, cap)?;
    let mut census = BTreeMap::new();
    for x in 0..g.order {
        *census.entry(g.element_order(x)).or_insert(0) += 1;
    }
    Ok(census)
}
