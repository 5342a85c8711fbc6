//! Sieves on a finite poset and global elements of the sub-object classifier.
//!
//! In a poset a sieve on `V` is a down-closed subset of `↓V`. The sieves on a
//! fixed `V` form a Heyting algebra with intersection, union and
//!
//! ```text
//! σ ⇒ τ = { V' ⊆ V : ∀ V'' ⊆ V', V'' ∈ σ ⇒ V'' ∈ τ }
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::order::Order;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    base: usize,
    members: BTreeSet<usize>,
}

fn mixed(a: usize, b: usize) -> Error {
    Error::MixedBases { left: a.to_string(), right: b.to_string() }
}

impl Sieve {
    /// Validates that `members ⊆ ↓base` and is down-closed.
    pub fn new(order: &Order, base: usize, members: BTreeSet<usize>) -> Result<Self> {
        if base >= order.len() {
            return Err(Error::InvalidInput(format!("sieve base {base} out of range")));
        }
        for &m in &members {
            if m >= order.len() || !order.leq(m, base) {
                return Err(Error::InvalidInput(format!("{m} is not below the sieve base {base}")));
            }
            if let Some(u) = (0..order.len()).find(|&u| order.leq(u, m) && !members.contains(&u)) {
                return Err(Error::InvalidInput(format!(
                    "sieve on {base} is not down-closed: contains {m} but not {u}"
                )));
            }
        }
        Ok(Self { base, members })
    }

    /// `↓base`.
    pub fn maximal(order: &Order, base: usize) -> Self {
        Self { base, members: order.down_set(base).into_iter().collect() }
    }

    pub fn empty(base: usize) -> Self {
        Self { base, members: BTreeSet::new() }
    }

    /// The principal sieve `↓v` on `base`, for `v ≤ base`.
    pub fn principal(order: &Order, base: usize, v: usize) -> Result<Self> {
        Self::new(order, base, order.down_set(v).into_iter().collect())
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A down-closed sieve is maximal exactly when it contains its base.
    pub fn is_maximal(&self) -> bool {
        self.members.contains(&self.base)
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_base(&self, other: &Sieve) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(mixed(self.base, other.base))
        }
    }

    pub fn meet(&self, other: &Sieve) -> Result<Sieve> {
        self.check_base(other)?;
        Ok(Sieve { base: self.base, members: self.members.intersection(&other.members).copied().collect() })
    }

    pub fn join(&self, other: &Sieve) -> Result<Sieve> {
        self.check_base(other)?;
        Ok(Sieve { base: self.base, members: self.members.union(&other.members).copied().collect() })
    }

    pub fn implies(&self, order: &Order, other: &Sieve) -> Result<Sieve> {
        self.check_base(other)?;
        let members = order
            .down_set(self.base)
            .into_iter()
            .filter(|&v| order.down_set(v).iter().all(|u| !self.contains(*u) || other.contains(*u)))
            .collect();
        Ok(Sieve { base: self.base, members })
    }

    pub fn negation(&self, order: &Order) -> Sieve {
        self.implies(order, &Sieve::empty(self.base)).expect("same base")
    }

    /// Pullback along `sub ⊆ base`: `σ ∩ ↓sub`.
    pub fn pullback(&self, order: &Order, sub: usize) -> Result<Sieve> {
        if !order.leq(sub, self.base) {
            return Err(Error::InvalidInput(format!("{sub} is not below the sieve base {}", self.base)));
        }
        let members = self.members.iter().copied().filter(|&m| order.leq(m, sub)).collect();
        Ok(Sieve { base: sub, members })
    }

    /// All sieves on `base`, in a deterministic order.
    pub fn enumerate(order: &Order, base: usize) -> Vec<Sieve> {
        let down = order.down_set(base);
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << down.len()) {
            let members: BTreeSet<usize> =
                down.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
            let closed = members
                .iter()
                .all(|&m| down.iter().all(|&u| !order.leq(u, m) || members.contains(&u)));
            if closed {
                out.push(Sieve { base, members });
            }
        }
        out
    }
}

/// A global element of `Ω`: a sieve on every element, compatible under pullback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaElement {
    sieves: Vec<Sieve>,
}

impl OmegaElement {
    /// Validates bases and the pullback identity `σ_{V'} = σ_V ∩ ↓V'` for all `V' ⊆ V`.
    pub fn new(order: &Order, sieves: Vec<Sieve>) -> Result<Self> {
        if sieves.len() != order.len() {
            return Err(Error::InvalidInput("one sieve per poset element is required".into()));
        }
        for (v, s) in sieves.iter().enumerate() {
            if s.base != v {
                return Err(Error::InvalidInput(format!("sieve at {v} has base {}", s.base)));
            }
        }
        let omega = Self { sieves };
        omega.check_compatibility(order)?;
        Ok(omega)
    }

    pub fn check_compatibility(&self, order: &Order) -> Result<()> {
        for v in 0..order.len() {
            for sub in order.down_set(v) {
                if self.sieves[v].pullback(order, sub)? != self.sieves[sub] {
                    return Err(Error::InternalConsistency(format!(
                        "sieves at {v} and {sub} are not related by pullback"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn sieves(&self) -> &[Sieve] {
        &self.sieves
    }

    pub fn at(&self, v: usize) -> &Sieve {
        &self.sieves[v]
    }

    pub fn top(order: &Order) -> Self {
        Self { sieves: (0..order.len()).map(|v| Sieve::maximal(order, v)).collect() }
    }

    pub fn bottom(order: &Order) -> Self {
        Self { sieves: (0..order.len()).map(Sieve::empty).collect() }
    }
}
