//! Finite abelian groups in invariant-factor form, their character groups and
//! the evaluation pairing.
//!
//! Everything is integer arithmetic. A character `l` of `K = Z_{d_1} ⊕ … ⊕ Z_{d_r}`
//! is stored with the same coordinate shape as an element of `K`; coordinate
//! vector `(c_1, …, c_r)` denotes the character
//!
//! ```text
//! k = (x_1, …, x_r)  ↦  exp(2πi · Σ c_i x_i / d_i)
//! ```
//!
//! Values on the unit circle are kept as exponents of a fixed primitive root
//! `ζ = exp(2πi/m)` for an ambient order `m` that every `d_i` divides.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit on the number of elements an abelian group may have before
/// [`FiniteAbelianGroup::enumerate_elements`] refuses to list them.
pub const DEFAULT_ENUMERATION_CAP: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// An element of a finite abelian group, as residues per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbElement(pub Vec<u64>);

/// A character of a finite abelian group, coordinatized like [`AbElement`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<u64>);

/// Exponent of a root of unity `ζ^e`; the order `m` of `ζ` comes from context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootExp(pub u64);

impl AbElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl From<AbElement> for Character {
    fn from(x: AbElement) -> Self {
        Character(x.0)
    }
}

impl From<Character> for AbElement {
    fn from(c: Character) -> Self {
        AbElement(c.0)
    }
}

/// Canonical invariant-factor form of `⊕ Z_{f}` over the given cyclic factors.
///
/// Factors equal to 1 vanish. Each factor is split into prime powers, the
/// prime powers are regrouped by prime, and the `i`-th largest invariant factor
/// is the product of the `i`-th largest power of every prime.
pub fn make_group(cyclic_factors: &[i64]) -> Result<FiniteAbelianGroup> {
    let mut positive = Vec::with_capacity(cyclic_factors.len());
    for &f in cyclic_factors {
        if f <= 0 {
            return Err(Error::NonPositiveFactor(f));
        }
        positive.push(f as u64);
    }
    FiniteAbelianGroup::from_cyclic(&positive)
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut q = 1u64;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    /// The cyclic group `Z_n` (trivial for `n = 1`).
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_cyclic(&[n])
    }

    /// Canonicalizes a list of positive cyclic orders; see [`make_group`].
    pub fn from_cyclic(cyclic: &[u64]) -> Result<Self> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &f in cyclic {
            if f == 0 {
                return Err(Error::NonPositiveFactor(0));
            }
            for (p, q) in prime_powers(f) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut descending = vec![1u64; rank];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in descending.iter_mut().zip(powers.iter()) {
                *slot = slot.checked_mul(*q).ok_or(Error::Overflow)?;
            }
        }
        descending.reverse();
        let order = descending
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::Overflow)?;
        Ok(FiniteAbelianGroup {
            factors: descending,
            order,
        })
    }

    /// Invariant factors `d_1 | d_2 | … | d_r`, each at least 2.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// `K ⊕ L`, canonicalized.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> Result<FiniteAbelianGroup> {
        let all: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        Self::from_cyclic(&all)
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.factors.len() {
            return Err(Error::ShapeMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        for (&x, &d) in coords.iter().zip(&self.factors) {
            if x >= d {
                return Err(Error::CoordinateOutOfRange {
                    value: x,
                    modulus: d,
                });
            }
        }
        Ok(())
    }

    pub fn check_element(&self, x: &AbElement) -> Result<()> {
        self.check_coords(&x.0)
    }

    pub fn check_character(&self, l: &Character) -> Result<()> {
        self.check_coords(&l.0)
    }

    /// Reduces arbitrary integer coordinates into an element.
    pub fn element(&self, coords: &[i64]) -> Result<AbElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::ShapeMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        Ok(AbElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.factors.len()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.factors.len()])
    }

    pub fn add(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(AbElement(self.add_coords(&x.0, &y.0)))
    }

    pub fn neg(&self, x: &AbElement) -> Result<AbElement> {
        self.check_element(x)?;
        Ok(AbElement(self.neg_coords(&x.0)))
    }

    /// Pointwise product of characters, i.e. coordinate addition.
    pub fn mul_characters(&self, l: &Character, r: &Character) -> Result<Character> {
        self.check_character(l)?;
        self.check_character(r)?;
        Ok(Character(self.add_coords(&l.0, &r.0)))
    }

    pub fn inv_character(&self, l: &Character) -> Result<Character> {
        self.check_character(l)?;
        Ok(Character(self.neg_coords(&l.0)))
    }

    /// `t · x`.
    pub fn scale(&self, x: &AbElement, t: u64) -> Result<AbElement> {
        self.check_element(x)?;
        Ok(AbElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&c, &d)| mul_mod(c, t % d, d))
                .collect(),
        ))
    }

    pub(crate) fn add_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub(crate) fn neg_coords(&self, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect()
    }

    /// Exponent of `l(k)` relative to `ζ = exp(2πi/m)`: `Σ c_i x_i (m / d_i) mod m`.
    pub fn evaluate(&self, l: &Character, k: &AbElement, m: u64) -> Result<RootExp> {
        self.check_character(l)?;
        self.check_element(k)?;
        self.check_root_order(m)?;
        Ok(self.evaluate_coords(&l.0, &k.0, m))
    }

    pub(crate) fn check_root_order(&self, m: u64) -> Result<()> {
        for &d in &self.factors {
            if m == 0 || !m.is_multiple_of(d) {
                return Err(Error::FactorDoesNotDivide { factor: d, m });
            }
        }
        Ok(())
    }

    pub(crate) fn evaluate_coords(&self, l: &[u64], k: &[u64], m: u64) -> RootExp {
        let mut acc = 0u64;
        for ((&c, &x), &d) in l.iter().zip(k).zip(&self.factors) {
            let term = mul_mod(mul_mod(c, x, d), m / d, m);
            acc = (acc + term) % m;
        }
        RootExp(acc)
    }

    /// Dense index of an element: mixed radix, first coordinate most significant.
    pub fn index_of(&self, x: &AbElement) -> Result<u64> {
        self.check_element(x)?;
        Ok(self.index_of_coords(&x.0))
    }

    pub(crate) fn index_of_coords(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&c, &d)| acc * d + c)
    }

    pub fn element_at(&self, index: u64) -> Result<AbElement> {
        if index >= self.order {
            return Err(Error::InvalidIndex {
                index,
                order: self.order,
            });
        }
        Ok(AbElement(self.coords_at(index)))
    }

    pub(crate) fn coords_at(&self, mut index: u64) -> Vec<u64> {
        let mut coords = vec![0u64; self.factors.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % d;
            index /= d;
        }
        coords
    }

    /// All elements in lexicographic coordinate order; index 0 is zero.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<AbElement>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: "abelian group",
                size: self.order,
                cap,
            });
        }
        Ok((0..self.order)
            .map(|i| AbElement(self.coords_at(i)))
            .collect())
    }

    /// Exhaustively checks that the evaluation pairing `K̂ × K → μ_m` is
    /// nondegenerate on both sides.
    pub fn is_pairing_nondegenerate(&self, cap: u64) -> Result<bool> {
        let elems = self.enumerate_elements(cap)?;
        let m = self.order;
        let separates = |fix_left: bool| {
            elems.iter().skip(1).all(|u| {
                elems.iter().any(|v| {
                    let r = if fix_left {
                        self.evaluate_coords(&v.0, &u.0, m)
                    } else {
                        self.evaluate_coords(&u.0, &v.0, m)
                    };
                    r.0 != 0
                })
            })
        };
        Ok(separates(true) && separates(false))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(factors: Vec<u64>) -> Result<Self> {
        Self::from_cyclic(&factors)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.factors
    }
}

/// Renders in the `Z<d>xZ<d>` grammar; the trivial group is `Z1`.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

/// Parses `Z<d>` atoms joined by `x`, case-insensitively, e.g. `Z4xZ2`.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason| Error::GroupSpec {
            spec: spec.to_string(),
            reason,
        };
        if spec.is_empty() {
            return Err(bad("empty"));
        }
        if spec.chars().any(char::is_whitespace) {
            return Err(bad("whitespace is not allowed"));
        }
        let lower = spec.to_ascii_lowercase();
        let mut factors = Vec::new();
        for atom in lower.split('x') {
            let digits = atom
                .strip_prefix('z')
                .ok_or_else(|| bad("atom must start with Z"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("atom must be Z followed by a decimal order"));
            }
            let d: i64 = digits.parse().map_err(|_| bad("order too large"))?;
            factors.push(d);
        }
        make_group(&factors)
    }
}
