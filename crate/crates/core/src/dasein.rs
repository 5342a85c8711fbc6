//! Daseinisation: approximating projections and self-adjoint operators by
//! elements of a given context.
//!
//! For a projection `P` and context `V`, outer daseinisation is the smallest
//! projection of `V` above `P`, inner daseinisation the largest below it. Both
//! are computed in closed form from the atoms of `V`:
//!
//! * outer: the sum of atoms `a` with `aP ≠ 0`,
//! * inner: the sum of atoms `a` with `aP = a`.
//!
//! Operators are daseinised through their spectral family, never by
//! daseinising eigenprojections one at a time (that does not give a
//! resolution of the identity).

use serde::{Deserialize, Serialize};

use crate::context::{AtomSet, Context};
use crate::error::{Error, Result};
use crate::hermitian::{spectral_family, spectral_projection, BorelSet, HermitianOperator, Projection, SpectralFamily};
use crate::poset::ContextPoset;
use crate::spectral::ClopenSubobject;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Outer,
    Inner,
}

impl Mode {
    pub fn dual(self) -> Mode {
        match self {
            Mode::Outer => Mode::Inner,
            Mode::Inner => Mode::Outer,
        }
    }
}

/// Atoms of `ctx` making up the daseinisation of `p`.
pub fn daseinised_atoms(p: &Projection, ctx: &Context, mode: Mode, eps: f64) -> Result<AtomSet> {
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: p.dim() });
    }
    let picked = ctx.atoms().iter().enumerate().filter(|(_, a)| match mode {
        Mode::Outer => !a.is_orthogonal_to(p, eps),
        Mode::Inner => a.is_below(p, eps),
    });
    Ok(AtomSet::from_indices(picked.map(|(i, _)| i)))
}

pub fn daseinise_projection(p: &Projection, ctx: &Context, mode: Mode, eps: f64) -> Result<Projection> {
    Ok(ctx.projection(daseinised_atoms(p, ctx, mode, eps)?))
}

/// The clopen sub-object `V ↦ S_{δ°(P)_V}`.
pub fn daseinise_subobject(p: &Projection, poset: &ContextPoset) -> Result<ClopenSubobject> {
    let components = poset
        .contexts()
        .iter()
        .map(|ctx| daseinised_atoms(p, ctx, Mode::Outer, poset.eps()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClopenSubobject::from_components(components))
}

/// A global element of the outer presheaf: a projection per context,
/// compatible with outer daseinisation along every inclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterPresheafElement {
    components: Vec<Projection>,
    atoms: Vec<AtomSet>,
}

impl OuterPresheafElement {
    pub fn components(&self) -> &[Projection] {
        &self.components
    }

    pub fn at(&self, v: usize) -> &Projection {
        &self.components[v]
    }

    /// The component at `v` as an atom subset of that context.
    pub fn atoms_at(&self, v: usize) -> AtomSet {
        self.atoms[v]
    }
}

pub fn outer_global_element(p: &Projection, poset: &ContextPoset) -> Result<OuterPresheafElement> {
    let eps = poset.eps();
    let atoms = daseinise_subobject(p, poset)?.components().to_vec();
    let components: Vec<Projection> =
        atoms.iter().enumerate().map(|(v, s)| poset.context(v).projection(*s)).collect();
    for (sub, sup) in poset.inclusions() {
        let again = daseinised_atoms(&components[sup], poset.context(sub), Mode::Outer, eps)?;
        if again != atoms[sub] {
            return Err(Error::InternalConsistency(format!(
                "outer presheaf element incompatible along {} ⊆ {}",
                poset.key(sub),
                poset.key(sup)
            )));
        }
    }
    Ok(OuterPresheafElement { components, atoms })
}

/// Per-threshold atom subsets of the daseinised spectral family of `a` in `ctx`.
///
/// Outer operator daseinisation replaces each `E_j` by its inner
/// daseinisation; inner operator daseinisation replaces `E_j` by its outer
/// daseinisation (for a step family, `⋀_{μ>λ} δ°(E_μ)` equals `δ°(E_j)` on
/// `[λ_j, λ_{j+1})`).
fn daseinised_steps(a: &HermitianOperator, ctx: &Context, mode: Mode, eps: f64) -> Result<(Vec<f64>, Vec<AtomSet>)> {
    if a.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: a.dim() });
    }
    let family = spectral_family(a, eps);
    let steps = family
        .projections()
        .iter()
        .map(|e| daseinised_atoms(e, ctx, mode.dual(), eps))
        .collect::<Result<Vec<_>>>()?;
    Ok((family.thresholds().to_vec(), steps))
}

/// The daseinised spectral family of `a` in `ctx`, thresholds kept at the eigenvalues of `a`.
pub fn daseinised_family(a: &HermitianOperator, ctx: &Context, mode: Mode, eps: f64) -> Result<SpectralFamily> {
    let (thresholds, steps) = daseinised_steps(a, ctx, mode, eps)?;
    let projections = steps.into_iter().map(|s| ctx.projection(s)).collect();
    SpectralFamily::new(thresholds, projections, eps.max(1e-12) * 10.0)
        .map_err(|e| Error::InternalConsistency(format!("daseinised family: {e}")))
}

/// Gel'fand transform of the daseinised operator: its value on each atom of
/// `ctx`, namely the first threshold whose daseinised projection contains the atom.
pub fn gelfand_values(a: &HermitianOperator, ctx: &Context, mode: Mode, eps: f64) -> Result<Vec<f64>> {
    let (thresholds, steps) = daseinised_steps(a, ctx, mode, eps)?;
    (0..ctx.len())
        .map(|atom| {
            steps
                .iter()
                .position(|s| s.contains(atom))
                .map(|j| thresholds[j])
                .ok_or_else(|| Error::InternalConsistency("daseinised family does not reach the identity".into()))
        })
        .collect()
}

/// `δ°(A)_V` or `δ^i(A)_V`, an operator in the algebra of `ctx`.
pub fn daseinise_operator(a: &HermitianOperator, ctx: &Context, mode: Mode, eps: f64) -> Result<HermitianOperator> {
    let values = gelfand_values(a, ctx, mode, eps)?;
    let n = ctx.dim();
    let mut m = crate::hermitian::CMatrix::zeros(n, n);
    for (atom, v) in ctx.atoms().iter().zip(values) {
        m += atom.matrix().scale(v);
    }
    Ok(HermitianOperator::from_matrix_unchecked(m))
}

/// The sub-object representing the proposition "A ∈ Δ".
pub fn represent_proposition(a: &HermitianOperator, delta: &BorelSet, poset: &ContextPoset) -> Result<ClopenSubobject> {
    if a.dim() != poset.dim() {
        return Err(Error::DimensionMismatch { expected: poset.dim(), found: a.dim() });
    }
    let p = spectral_projection(a, delta, poset.eps());
    daseinise_subobject(&p, poset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::C64;
    use crate::poset::PosetOptions;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn vz() -> Context {
        Context::from_basis(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]], 1e-9).unwrap()
    }

    fn vx() -> Context {
        Context::from_basis(&[vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)]], 1e-9).unwrap()
    }

    fn pz() -> Projection {
        Projection::onto(&[c(1.0), c(0.0)]).unwrap()
    }

    fn zx_poset() -> ContextPoset {
        ContextPoset::build(vec![vz(), vx()], PosetOptions::default(), 1e-9).unwrap()
    }

    #[test]
    fn projection_in_context_is_fixed() {
        for mode in [Mode::Outer, Mode::Inner] {
            assert!(daseinise_projection(&pz(), &vz(), mode, 1e-9).unwrap().approx_eq(&pz(), 1e-12));
        }
    }

    #[test]
    fn projection_in_conjugate_context() {
        let outer = daseinise_projection(&pz(), &vx(), Mode::Outer, 1e-9).unwrap();
        let inner = daseinise_projection(&pz(), &vx(), Mode::Inner, 1e-9).unwrap();
        assert!(outer.approx_eq(&Projection::identity(2), 1e-12));
        assert!(inner.is_zero(1e-12));
    }

    #[test]
    fn lattice_bounds() {
        for ctx in [vz(), vx()] {
            assert!(daseinise_projection(&Projection::zero(2), &ctx, Mode::Outer, 1e-9).unwrap().is_zero(1e-12));
            assert!(daseinise_projection(&Projection::identity(2), &ctx, Mode::Inner, 1e-9)
                .unwrap()
                .approx_eq(&Projection::identity(2), 1e-12));
        }
    }

    #[test]
    fn subobject_over_zx() {
        let p = zx_poset();
        let s = daseinise_subobject(&pz(), &p).unwrap();
        let iz = p.index_of(vz().key().as_str()).unwrap();
        let ix = p.index_of(vx().key().as_str()).unwrap();
        assert_eq!(s.at(iz), AtomSet::singleton(0));
        assert_eq!(s.at(ix), AtomSet::full(2));
        assert!(s.validate(&p).is_ok());
        assert_eq!(daseinise_subobject(&Projection::identity(2), &p).unwrap(), ClopenSubobject::top(&p));

        let g = outer_global_element(&pz(), &p).unwrap();
        assert!(g.at(iz).approx_eq(&pz(), 1e-12));
        assert!(g.at(ix).approx_eq(&Projection::identity(2), 1e-12));
    }

    #[test]
    fn sigma_z_fixed_point() {
        let sz = HermitianOperator::diagonal(&[1.0, -1.0]);
        for mode in [Mode::Outer, Mode::Inner] {
            assert!(daseinise_operator(&sz, &vz(), mode, 1e-9).unwrap().approx_eq(&sz, 1e-12));
        }
    }

    #[test]
    fn sigma_x_in_vz() {
        let sx = HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let outer = daseinise_operator(&sx, &vz(), Mode::Outer, 1e-9).unwrap();
        let inner = daseinise_operator(&sx, &vz(), Mode::Inner, 1e-9).unwrap();
        assert!(outer.approx_eq(&HermitianOperator::identity(2), 1e-9));
        assert!(inner.approx_eq(&HermitianOperator::identity(2).scaled(-1.0), 1e-9));
    }

    #[test]
    fn proposition_over_zx() {
        let p = zx_poset();
        let sz = HermitianOperator::diagonal(&[1.0, -1.0]);
        let s = represent_proposition(&sz, &BorelSet::point(1.0), &p).unwrap();
        assert_eq!(s, daseinise_subobject(&pz(), &p).unwrap());
        assert_eq!(represent_proposition(&sz, &BorelSet::everything(), &p).unwrap(), ClopenSubobject::top(&p));
        let far = BorelSet::parse("[5,6]").unwrap();
        assert_eq!(represent_proposition(&sz, &far, &p).unwrap(), ClopenSubobject::bottom(&p));
    }
}
