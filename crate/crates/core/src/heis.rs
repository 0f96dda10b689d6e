//! The finite theta group `μ_m × (K ⊕ K̂)` with `m = |K|` and law
//!
//! ```text
//! (a, k, l) · (a', k', l') = (a + a' + ⟨l', k⟩, k + k', l + l')
//! ```
//!
//! written additively: `a` is an exponent of `ζ = exp(2πi/m)` and `⟨l, k⟩` is
//! [`FiniteAbelianGroup::evaluate`] at ambient order `m`.

use std::fmt;

use crate::abelian::{AbElement, Character, FiniteAbelianGroup, RootExp};
use crate::error::{Error, Result};
use crate::lattice::{self, ConcreteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaGroup {
    base: FiniteAbelianGroup,
    m: u64,
    order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaElement {
    pub a: RootExp,
    pub k: AbElement,
    pub l: Character,
}

impl ThetaElement {
    pub fn new(a: u64, k: Vec<u64>, l: Vec<u64>) -> Self {
        ThetaElement {
            a: RootExp(a),
            k: AbElement(k),
            l: Character(l),
        }
    }

    /// True when both the `k` and `l` parts vanish, i.e. the element is central.
    pub fn is_central_part(&self) -> bool {
        self.k.0.iter().chain(&self.l.0).all(|&c| c == 0)
    }
}

/// `(a; k1,..,kr; l1,..,lr)`
impl fmt::Display for ThetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "({}; {}; {})",
            self.a.0,
            join(&self.k.0),
            join(&self.l.0)
        )
    }
}

impl ThetaGroup {
    /// `Heis(K)`. No elements are materialized; see [`ThetaGroup::concrete`].
    pub fn new(base: FiniteAbelianGroup) -> Result<Self> {
        let m = base.order();
        let order = m
            .checked_mul(m)
            .and_then(|x| x.checked_mul(m))
            .ok_or(Error::Overflow)?;
        Ok(ThetaGroup { base, m, order })
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    /// Order of the central root-of-unity factor, equal to `|K|`.
    pub fn root_order(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> ThetaElement {
        ThetaElement {
            a: RootExp(0),
            k: self.base.zero(),
            l: self.base.trivial_character(),
        }
    }

    pub fn check(&self, g: &ThetaElement) -> Result<()> {
        if g.a.0 >= self.m {
            return Err(Error::ForeignElement(g.to_string()));
        }
        self.base
            .check_element(&g.k)
            .and_then(|_| self.base.check_character(&g.l))
            .map_err(|_| Error::ForeignElement(g.to_string()))
    }

    fn pair(&self, l: &Character, k: &AbElement) -> u64 {
        self.base.evaluate_coords(&l.0, &k.0, self.m).0
    }

    pub fn mul(&self, g: &ThetaElement, h: &ThetaElement) -> Result<ThetaElement> {
        self.check(g)?;
        self.check(h)?;
        let a = (g.a.0 + h.a.0 + self.pair(&h.l, &g.k)) % self.m;
        Ok(ThetaElement {
            a: RootExp(a),
            k: AbElement(self.base.add_coords(&g.k.0, &h.k.0)),
            l: Character(self.base.add_coords(&g.l.0, &h.l.0)),
        })
    }

    /// `(a, k, l)⁻¹ = (−a + ⟨l, k⟩, −k, −l)`.
    pub fn inv(&self, g: &ThetaElement) -> Result<ThetaElement> {
        self.check(g)?;
        let a = (self.m - g.a.0 + self.pair(&g.l, &g.k)) % self.m;
        Ok(ThetaElement {
            a: RootExp(a),
            k: AbElement(self.base.neg_coords(&g.k.0)),
            l: Character(self.base.neg_coords(&g.l.0)),
        })
    }

    /// `g h g⁻¹ h⁻¹` computed from the group law.
    pub fn commutator_from_law(&self, g: &ThetaElement, h: &ThetaElement) -> Result<ThetaElement> {
        let gh = self.mul(g, h)?;
        let gh_ginv = self.mul(&gh, &self.inv(g)?)?;
        self.mul(&gh_ginv, &self.inv(h)?)
    }

    /// `(⟨l', k⟩ − ⟨l, k'⟩, 0, 0)` for `g = (a, k, l)`, `h = (a', k', l')`.
    pub fn commutator_closed_form(
        &self,
        g: &ThetaElement,
        h: &ThetaElement,
    ) -> Result<ThetaElement> {
        self.check(g)?;
        self.check(h)?;
        let a = (self.pair(&h.l, &g.k) + self.m - self.pair(&g.l, &h.k)) % self.m;
        Ok(ThetaElement {
            a: RootExp(a),
            ..self.identity()
        })
    }

    /// The commutator `g h g⁻¹ h⁻¹`, computed both ways; a disagreement is
    /// reported as an axiom violation.
    pub fn commutator(&self, g: &ThetaElement, h: &ThetaElement) -> Result<ThetaElement> {
        let direct = self.commutator_from_law(g, h)?;
        let closed = self.commutator_closed_form(g, h)?;
        if direct != closed {
            return Err(Error::AxiomViolation(format!(
                "commutator of {g} and {h}: law gives {direct}, closed form gives {closed}"
            )));
        }
        Ok(direct)
    }

    pub fn element_order(&self, g: &ThetaElement) -> Result<u64> {
        self.check(g)?;
        let e = self.identity();
        let mut x = g.clone();
        let mut t = 1;
        while x != e {
            x = self.mul(&x, g)?;
            t += 1;
        }
        Ok(t)
    }

    /// Mixed-radix index: `a`, then the `k` coordinates, then the `l` coordinates.
    pub fn element_index(&self, g: &ThetaElement) -> Result<u64> {
        self.check(g)?;
        let n = self.m;
        Ok((g.a.0 * n + self.base.index_of_coords(&g.k.0)) * n + self.base.index_of_coords(&g.l.0))
    }

    pub fn element_at(&self, index: u64) -> Result<ThetaElement> {
        if index >= self.order {
            return Err(Error::InvalidIndex {
                index,
                order: self.order,
            });
        }
        let n = self.m;
        Ok(ThetaElement {
            a: RootExp(index / (n * n)),
            k: AbElement(self.base.coords_at(index / n % n)),
            l: Character(self.base.coords_at(index % n)),
        })
    }

    /// Parses the `(a; k1,..,kr; l1,..,lr)` rendering and checks membership.
    pub fn parse_element(&self, text: &str) -> Result<ThetaElement> {
        let bad = |reason| Error::ElementSyntax {
            text: text.to_string(),
            reason,
        };
        let inner = text
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let parts: Vec<&str> = inner.split("; ").collect();
        let [a, k, l] = parts[..] else {
            return Err(bad("expected three '; '-separated parts"));
        };
        let number = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected a decimal residue"));
            }
            s.parse().map_err(|_| bad("residue too large"))
        };
        let list = |s: &str| -> Result<Vec<u64>> {
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split(',').map(number).collect()
        };
        let g = ThetaElement::new(number(a)?, list(k)?, list(l)?);
        self.check(&g)?;
        Ok(g)
    }

    /// Tabulates the group for the subgroup engine; element `i` is
    /// [`ThetaGroup::element_at`]`(i)`.
    pub fn concrete(&self, cap: u64) -> Result<ConcreteGroup> {
        self.tabulate(cap, true)
    }

    /// The same table with the `⟨l', k⟩` term dropped, which makes the group
    /// abelian. Only used to exercise failure paths.
    #[doc(hidden)]
    pub fn concrete_without_cocycle(&self, cap: u64) -> Result<ConcreteGroup> {
        self.tabulate(cap, false)
    }

    fn tabulate(&self, cap: u64, cocycle: bool) -> Result<ConcreteGroup> {
        let cap = cap.min(lattice::TABLE_CAP);
        if self.order > cap {
            return Err(Error::CapExceeded {
                what: "theta group",
                size: self.order,
                cap,
            });
        }
        let n = self.m as usize;
        let coords: Vec<Vec<u64>> = (0..self.m).map(|i| self.base.coords_at(i)).collect();
        let mut add = vec![0u32; n * n];
        let mut pair = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = self
                    .base
                    .index_of_coords(&self.base.add_coords(&coords[i], &coords[j]))
                    as u32;
                if cocycle {
                    pair[i * n + j] =
                        self.base.evaluate_coords(&coords[i], &coords[j], self.m).0 as u32;
                }
            }
        }
        let n32 = n as u32;
        ConcreteGroup::from_fn(self.order, 0, cap, |x, y| {
            let (xa, xk, xl) = (
                x / (n32 * n32),
                (x / n32 % n32) as usize,
                (x % n32) as usize,
            );
            let (ya, yk, yl) = (
                y / (n32 * n32),
                (y / n32 % n32) as usize,
                (y % n32) as usize,
            );
            let a = (xa + ya + pair[yl * n + xk]) % n32;
            let k = add[xk * n + yk];
            let l = add[xl * n + yl];
            (a * n32 + k) * n32 + l
        })
    }

    /// The center as a subgroup of the tabulated group.
    pub fn center(&self, cap: u64) -> Result<Subgroup> {
        Ok(lattice::center(&self.concrete(cap)?))
    }
}
