//! Heyting algebra of clopen sub-objects, truth objects and sieve-valued truth.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::context::AtomSet;
use crate::dasein::daseinise_subobject;
use crate::error::{Error, Result};
use crate::hermitian::{Projection, C64};
use crate::poset::ContextPoset;
use crate::sieve::{OmegaElement, Sieve};
use crate::spectral::ClopenSubobject;

impl ClopenSubobject {
    fn zip_with(&self, other: &ClopenSubobject, f: impl Fn(AtomSet, AtomSet) -> AtomSet) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::PosetMismatch);
        }
        Ok(Self::from_components(
            self.components().iter().zip(other.components()).map(|(a, b)| f(*a, *b)).collect(),
        ))
    }

    pub fn meet(&self, other: &ClopenSubobject) -> Result<Self> {
        self.zip_with(other, AtomSet::intersection)
    }

    pub fn join(&self, other: &ClopenSubobject) -> Result<Self> {
        self.zip_with(other, AtomSet::union)
    }

    /// Relative pseudo-complement: `λ ∈ (S ⇒ T)_V` iff for every `V' ⊆ V`,
    /// `λ|_{V'} ∈ S_{V'}` implies `λ|_{V'} ∈ T_{V'}`.
    pub fn implies(&self, poset: &ContextPoset, other: &ClopenSubobject) -> Result<Self> {
        if self.len() != other.len() || self.len() != poset.len() {
            return Err(Error::PosetMismatch);
        }
        let components = (0..poset.len())
            .map(|v| {
                let down = poset.down_set(v);
                let picked = (0..poset.context(v).len()).filter(|&atom| {
                    down.iter().all(|&sub| {
                        let image = poset.restriction(sub, v).expect("inclusion")[atom];
                        !self.at(sub).contains(image) || other.at(sub).contains(image)
                    })
                });
                AtomSet::from_indices(picked)
            })
            .collect();
        Ok(Self::from_components(components))
    }

    pub fn negation(&self, poset: &ContextPoset) -> Result<Self> {
        self.implies(poset, &ClopenSubobject::bottom(poset))
    }
}

/// The truth object of a pure state, stored by its generators
/// `G_V = S_{δ°(P_ψ)_V}`: a sub-object `S` is locally true at `V` iff `S_V ⊇ G_V`.
#[derive(Debug, Clone)]
pub struct TruthObject {
    psi: Vec<C64>,
    projection: Projection,
    generators: Vec<AtomSet>,
}

pub fn truth_object(psi: &[C64], poset: &ContextPoset) -> Result<TruthObject> {
    if psi.len() != poset.dim() {
        return Err(Error::DimensionMismatch { expected: poset.dim(), found: psi.len() });
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > poset.eps().max(1e-12) * 10.0 {
        return Err(Error::InvalidInput(format!("state vector must have unit norm, got {norm}")));
    }
    let projection = Projection::onto(psi)?;
    let generators = daseinise_subobject(&projection, poset)?.components().to_vec();
    Ok(TruthObject { psi: psi.to_vec(), projection, generators })
}

impl TruthObject {
    pub fn state(&self) -> &[C64] {
        &self.psi
    }

    pub fn generators(&self) -> &[AtomSet] {
        &self.generators
    }

    pub fn generator(&self, v: usize) -> AtomSet {
        self.generators[v]
    }

    /// The four equivalent membership tests for `S_V ∈ T^ψ_V`:
    /// `⟨ψ|P_S|ψ⟩ = 1`, `P_S ⪰ P_ψ`, `P_S ⪰ δ°(P_ψ)_V` and `S_V ⊇ G_V`.
    pub fn characterizations(&self, poset: &ContextPoset, v: usize, s: AtomSet) -> [bool; 4] {
        let eps = poset.eps();
        let ctx = poset.context(v);
        let p_s = ctx.projection(s);
        let expectation = 1.0 - p_s.expectation(&self.psi) <= eps.max(1e-12) * 10.0;
        let above_state = self.projection.is_below(&p_s, eps.max(1e-12) * 10.0);
        let dasein = ctx.projection(self.generators[v]);
        let above_dasein = dasein.is_below(&p_s, eps.max(1e-12) * 10.0);
        let generator = self.generators[v].is_subset(s);
        [expectation, above_state, above_dasein, generator]
    }

    /// Membership, failing if the four characterizations disagree.
    pub fn contains(&self, poset: &ContextPoset, v: usize, s: AtomSet) -> Result<bool> {
        let c = self.characterizations(poset, v, s);
        if c.iter().all(|&x| x == c[0]) {
            Ok(c[0])
        } else {
            Err(Error::InternalConsistency(format!(
                "truth-object characterizations disagree at {}: {c:?}",
                poset.key(v)
            )))
        }
    }
}

/// `ν(S; T^ψ)_V = {V' ⊆ V : S_{V'} ⊇ G_{V'}}`, checked to be a global element of `Ω`.
pub fn truth_value(s: &ClopenSubobject, t: &TruthObject, poset: &ContextPoset) -> Result<OmegaElement> {
    if s.len() != poset.len() || t.generators.len() != poset.len() {
        return Err(Error::PosetMismatch);
    }
    let order = poset.order();
    let sieves = (0..poset.len())
        .map(|v| {
            let members = poset
                .down_set(v)
                .into_iter()
                .filter(|&sub| t.generators[sub].is_subset(s.at(sub)))
                .collect();
            Sieve::new(order, v, members)
                .map_err(|e| Error::InternalConsistency(format!("truth value at {} is not a sieve: {e}", poset.key(v))))
        })
        .collect::<Result<Vec<_>>>()?;
    OmegaElement::new(order, sieves)
        .map_err(|e| Error::InternalConsistency(format!("truth value is not a global element of Ω: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    TotallyTrue,
    TotallyFalse,
    Partial,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::TotallyTrue => "totally-true",
            Classification::TotallyFalse => "totally-false",
            Classification::Partial => "partial",
        }
    }
}

pub fn classify(omega: &OmegaElement) -> Classification {
    if omega.sieves().iter().all(Sieve::is_maximal) {
        Classification::TotallyTrue
    } else if omega.sieves().iter().all(Sieve::is_empty) {
        Classification::TotallyFalse
    } else {
        Classification::Partial
    }
}

/// Classification plus the sieve at every context, keyed by canonical keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthReport {
    pub classification: Classification,
    pub sieves: BTreeMap<String, Vec<String>>,
}

pub fn classify_truth(omega: &OmegaElement, poset: &ContextPoset) -> TruthReport {
    let sieves = omega
        .sieves()
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let mut members: Vec<String> = s.members().iter().map(|&m| poset.key(m).to_string()).collect();
            members.sort();
            (poset.key(v).to_string(), members)
        })
        .collect();
    TruthReport { classification: classify(omega), sieves }
}
