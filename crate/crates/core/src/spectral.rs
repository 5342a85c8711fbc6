//! The spectral presheaf over a context poset.
//!
//! At finite dimension the Gel'fand spectrum of a context is in bijection with
//! its atoms: the functional `λ_a` sends `B = Σ β_b b` to `β_a`. Every subset
//! of a finite discrete spectrum is clopen, so "clopen sub-object" below just
//! means a restriction-compatible family of atom subsets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::context::{AtomSet, Context};
use crate::error::{Error, Result};
use crate::hermitian::{max_norm, CMatrix, HermitianOperator, Projection};
use crate::poset::ContextPoset;

/// A point of the Gel'fand spectrum of a context in a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralElement {
    pub context: usize,
    pub atom: usize,
}

/// The spectrum of context `v` of the poset, one element per atom.
pub fn spectrum(poset: &ContextPoset, v: usize) -> Vec<SpectralElement> {
    (0..poset.context(v).len()).map(|atom| SpectralElement { context: v, atom }).collect()
}

/// Coefficients `tr(aB)/rank(a)` of `b` on the atoms of `ctx`, or `None` if `b`
/// is not an atom-sum combination within `tol`.
fn coefficients(ctx: &Context, b: &CMatrix, tol: f64) -> Option<Vec<f64>> {
    let coeffs: Vec<f64> = ctx
        .atoms()
        .iter()
        .map(|a| (a.matrix() * b).trace().re / a.rank().max(1) as f64)
        .collect();
    let n = ctx.dim();
    let mut rebuilt = CMatrix::zeros(n, n);
    for (a, c) in ctx.atoms().iter().zip(&coeffs) {
        rebuilt += a.matrix().scale(*c);
    }
    (max_norm(&(rebuilt - b)) <= tol).then_some(coeffs)
}

/// `λ_atom(b)` for `b` in the algebra of `ctx`.
pub fn evaluate(ctx: &Context, atom: usize, b: &HermitianOperator, eps: f64) -> Result<f64> {
    if b.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: b.dim() });
    }
    if atom >= ctx.len() {
        return Err(Error::InvalidInput(format!("atom index {atom} out of range")));
    }
    let coeffs = coefficients(ctx, b.matrix(), eps * b.max_norm().max(1.0))
        .ok_or_else(|| Error::NotInAlgebra { context: ctx.key().to_string() })?;
    Ok(coeffs[atom])
}

/// Whether `b` lies in the algebra of `ctx`.
pub fn in_algebra(ctx: &Context, b: &CMatrix, eps: f64) -> bool {
    coefficients(ctx, b, eps * max_norm(b).max(1.0)).is_some()
}

/// Restricts `element` along the inclusion `target ⊆ element.context`.
pub fn restrict_element(poset: &ContextPoset, element: SpectralElement, target: usize) -> Result<SpectralElement> {
    let map = poset.restriction(target, element.context).ok_or_else(|| Error::Order {
        sub: poset.key(target).to_string(),
        sup: poset.key(element.context).to_string(),
    })?;
    Ok(SpectralElement { context: target, atom: map[element.atom] })
}

/// `S_P = {λ ∈ Σ_V | λ(P) = 1}` for a projection `P` of `ctx`.
pub fn subset_from_projection(ctx: &Context, p: &Projection, eps: f64) -> Result<AtomSet> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: p.dim() });
    }
    let not_in = || Error::NotInAlgebra { context: ctx.key().to_string() };
    let coeffs = coefficients(ctx, p.matrix(), eps.max(1e-12) * 10.0).ok_or_else(not_in)?;
    let mut set = AtomSet::EMPTY;
    for (i, c) in coeffs.iter().enumerate() {
        if (c - 1.0).abs() <= 1e-6 {
            set.insert(i);
        } else if c.abs() > 1e-6 {
            return Err(not_in());
        }
    }
    Ok(set)
}

/// The projection `Σ_{a ∈ set} a` of `ctx`.
pub fn projection_from_subset(ctx: &Context, set: AtomSet) -> Projection {
    ctx.projection(set)
}

/// A restriction violation: `atom` of `sup` is selected but its image in `sub` is not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sup: String,
    pub sub: String,
    pub atom: usize,
}

/// A sub-object of the spectral presheaf: one atom subset per context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClopenSubobject {
    components: Vec<AtomSet>,
}

impl ClopenSubobject {
    /// Wraps per-context subsets indexed like the poset. Not validated.
    pub fn from_components(components: Vec<AtomSet>) -> Self {
        Self { components }
    }

    pub fn top(poset: &ContextPoset) -> Self {
        Self { components: poset.contexts().iter().map(Context::all_atoms).collect() }
    }

    pub fn bottom(poset: &ContextPoset) -> Self {
        Self { components: vec![AtomSet::EMPTY; poset.len()] }
    }

    pub fn components(&self) -> &[AtomSet] {
        &self.components
    }

    pub fn at(&self, v: usize) -> AtomSet {
        self.components[v]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `S ⪯ T` componentwise.
    pub fn is_below(&self, other: &ClopenSubobject) -> bool {
        self.components.iter().zip(&other.components).all(|(a, b)| a.is_subset(*b))
    }

    /// Checks restriction compatibility at every comparable pair.
    pub fn validate(&self, poset: &ContextPoset) -> std::result::Result<(), Vec<Violation>> {
        if self.components.len() != poset.len() {
            return Err(vec![Violation {
                sup: String::new(),
                sub: String::new(),
                atom: self.components.len(),
            }]);
        }
        let mut violations = Vec::new();
        for (sub, sup) in poset.inclusions() {
            if sub == sup {
                continue;
            }
            let map = poset.restriction(sub, sup).expect("inclusion has a restriction map");
            for a in self.components[sup].iter() {
                if a >= map.len() || !self.components[sub].contains(map[a]) {
                    violations.push(Violation {
                        sup: poset.key(sup).to_string(),
                        sub: poset.key(sub).to_string(),
                        atom: a,
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn to_json_map(&self, poset: &ContextPoset) -> BTreeMap<String, Vec<usize>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, s)| (poset.key(i).to_string(), s.iter().collect()))
            .collect()
    }

    /// Reads `{"context_key": [atom indices]}`; contexts missing from the map get the empty set.
    pub fn from_json_map(poset: &ContextPoset, map: &BTreeMap<String, Vec<usize>>) -> Result<Self> {
        let mut components = vec![AtomSet::EMPTY; poset.len()];
        for (key, atoms) in map {
            let v = poset
                .index_of(key)
                .ok_or_else(|| Error::InvalidInput(format!("unknown context key {key}")))?;
            for &a in atoms {
                if a >= poset.context(v).len() {
                    return Err(Error::InvalidInput(format!("atom {a} out of range for context {key}")));
                }
                components[v].insert(a);
            }
        }
        Ok(Self { components })
    }
}

/// JSON wire form of a sub-object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubobjectJson(pub BTreeMap<String, Vec<usize>>);
