//! The commutator pairing on `K ⊕ K̂` and the structural abelian-index bound.
//!
//! For `g = (a, k, l)` and `h = (a', k', l')` in `Heis(K)` the commutator is
//! central with exponent `e((k,l),(k',l')) = ⟨l',k⟩ − ⟨l,k'⟩`. So the image of an
//! abelian subgroup `A` in `K ⊕ K̂` is isotropic for `e`, and since `e` is
//! nondegenerate an isotropic subgroup has order at most `|K|`. With the
//! central factor of order `|K|` this gives `|A| ≤ |K|²` and index at least
//! `|K|`. The preimage of `K ⊕ {1}` is abelian of order `|K|²`, so the bound
//! is attained.

use std::collections::HashSet;

use crate::abelian::{AbElement, Character, FiniteAbelianGroup, RootExp};
use crate::error::{Error, Result};
use crate::heis::{ThetaElement, ThetaGroup};
use crate::lattice::{self, ConcreteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingPoint {
    pub k: AbElement,
    pub l: Character,
}

impl PairingPoint {
    pub fn new(k: Vec<u64>, l: Vec<u64>) -> Self {
        PairingPoint {
            k: AbElement(k),
            l: Character(l),
        }
    }
}

impl From<&ThetaElement> for PairingPoint {
    fn from(g: &ThetaElement) -> Self {
        PairingPoint {
            k: g.k.clone(),
            l: g.l.clone(),
        }
    }
}

/// `K ⊕ K̂` with the commutator pairing valued in exponents mod `|K|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSpace {
    base: FiniteAbelianGroup,
}

impl PairingSpace {
    pub fn new(base: FiniteAbelianGroup) -> Self {
        PairingSpace { base }
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn root_order(&self) -> u64 {
        self.base.order()
    }

    /// Number of points, `|K|²`.
    pub fn order(&self) -> Result<u64> {
        self.base
            .order()
            .checked_mul(self.base.order())
            .ok_or(Error::Overflow)
    }

    fn check(&self, p: &PairingPoint) -> Result<()> {
        self.base.check_element(&p.k)?;
        self.base.check_character(&p.l)
    }

    pub fn add(&self, p: &PairingPoint, q: &PairingPoint) -> Result<PairingPoint> {
        Ok(PairingPoint {
            k: self.base.add(&p.k, &q.k)?,
            l: self.base.mul_characters(&p.l, &q.l)?,
        })
    }

    pub fn zero(&self) -> PairingPoint {
        PairingPoint {
            k: self.base.zero(),
            l: self.base.trivial_character(),
        }
    }

    /// `e(p, q) = ⟨l_q, k_p⟩ − ⟨l_p, k_q⟩ mod |K|`.
    pub fn comm_pairing(&self, p: &PairingPoint, q: &PairingPoint) -> Result<RootExp> {
        self.check(p)?;
        self.check(q)?;
        let m = self.root_order();
        let forward = self.base.evaluate_coords(&q.l.0, &p.k.0, m).0;
        let backward = self.base.evaluate_coords(&p.l.0, &q.k.0, m).0;
        Ok(RootExp((forward + m - backward) % m))
    }

    /// Whether `e` vanishes identically on `points`, which must form a subgroup.
    pub fn is_isotropic(&self, points: &[PairingPoint]) -> Result<bool> {
        for p in points {
            self.check(p)?;
        }
        let set: HashSet<&PairingPoint> = points.iter().collect();
        if set.is_empty() {
            return Err(Error::NotClosed);
        }
        for p in &set {
            for q in &set {
                if !set.contains(&self.add(p, q)?) {
                    return Err(Error::NotClosed);
                }
            }
        }
        for p in &set {
            for q in &set {
                if self.comm_pairing(p, q)?.0 != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Point with dense index `i = index(k) · |K| + index(l)`.
    pub fn point_at(&self, i: u64) -> PairingPoint {
        let n = self.base.order();
        PairingPoint {
            k: AbElement(self.base.coords_at(i / n)),
            l: Character(self.base.coords_at(i % n)),
        }
    }

    pub fn points(&self, cap: u64) -> Result<Vec<PairingPoint>> {
        let size = self.order()?;
        if size > cap {
            return Err(Error::CapExceeded {
                what: "pairing space",
                size,
                cap,
            });
        }
        Ok((0..size).map(|i| self.point_at(i)).collect())
    }

    /// `K ⊕ K̂` as an additive concrete group, indexed like [`PairingSpace::point_at`].
    pub fn concrete(&self, cap: u64) -> Result<ConcreteGroup> {
        let size = self.order()?;
        let n = self.base.order();
        let idx = |p: &PairingPoint| {
            self.base.index_of_coords(&p.k.0) * n + self.base.index_of_coords(&p.l.0)
        };
        ConcreteGroup::from_fn(size, 0, cap, |x, y| {
            let (p, q) = (self.point_at(x.into()), self.point_at(y.into()));
            let s = PairingPoint {
                k: AbElement(self.base.add_coords(&p.k.0, &q.k.0)),
                l: Character(self.base.add_coords(&p.l.0, &q.l.0)),
            };
            idx(&s) as u32
        })
    }

    /// Largest isotropic subgroup order, by enumerating every subgroup of
    /// `K ⊕ K̂`.
    pub fn max_isotropic_order_brute(&self, cap: u64) -> Result<u64> {
        let space = self.concrete(cap)?;
        let subgroups = lattice::subgroups_of_abelian(&space, cap)?;
        let mut best = 0;
        for s in subgroups.iter().rev() {
            if s.order() <= best {
                continue;
            }
            let pts: Vec<PairingPoint> = s
                .members()
                .iter()
                .map(|&i| self.point_at(i.into()))
                .collect();
            if self.is_isotropic(&pts)? {
                best = s.order();
            }
        }
        Ok(best)
    }

    /// Largest isotropic subgroup order from the structure: `|K|`.
    pub fn max_isotropic_order_structural(&self) -> u64 {
        self.base.order()
    }
}

/// Minimal index of an abelian subgroup of `Heis(K)`, which is `|K|`.
pub fn structural_min_abelian_index(base: &FiniteAbelianGroup) -> u64 {
    base.order()
}

/// Maximal order of an abelian subgroup of `Heis(K)`, which is `|K|²`.
pub fn structural_max_abelian_order(base: &FiniteAbelianGroup) -> Result<u64> {
    base.order()
        .checked_mul(base.order())
        .ok_or(Error::Overflow)
}

/// Generators of the abelian subgroup `{(a, k, 1)}` of order `|K|²`: the
/// central generator and `(0, e_i, 1)` for each cyclic factor.
pub fn lagrangian_lift_generators(theta: &ThetaGroup) -> Vec<ThetaElement> {
    let base = theta.base();
    let mut gens = Vec::with_capacity(base.rank() + 1);
    if theta.root_order() > 1 {
        gens.push(ThetaElement {
            a: RootExp(1),
            ..theta.identity()
        });
    }
    for i in 0..base.rank() {
        let mut k = base.zero();
        k.0[i] = 1;
        gens.push(ThetaElement {
            k,
            ..theta.identity()
        });
    }
    gens
}
