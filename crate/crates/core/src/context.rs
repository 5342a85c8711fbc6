//! Unital abelian subalgebras ("contexts") of `B(C^n)`, represented by their
//! atoms: a partition of the identity into mutually orthogonal projections.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hermitian::{eigendecompose, HermitianOperator, Projection, C64};

/// Maximum number of atoms per context (atom subsets are stored as bitmasks).
pub const MAX_ATOMS: usize = 64;

/// A set of atom indices of one context, i.e. a projection of that context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        AtomSet(1u64 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        AtomSet(indices.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: AtomSet) -> Self {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> Self {
        AtomSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

/// Deterministic identifier of a context, derived from its rounded atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextKey(String);

impl ContextKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ContextKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn rounded_entries(p: &Projection) -> Vec<i64> {
    p.matrix()
        .transpose()
        .iter()
        .flat_map(|z| [-(z.re * 1e6).round() as i64, -(z.im * 1e6).round() as i64])
        .collect()
}

/// A context, canonically ordered: atoms sorted by rank, then by their
/// entries rounded to six decimals (row-major, real part before imaginary),
/// larger entries first. For a standard basis this keeps `e1, e2, …` in order.
#[derive(Debug, Clone)]
pub struct Context {
    dim: usize,
    atoms: Vec<Projection>,
    key: ContextKey,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Context {}

impl Context {
    /// Validates that `atoms` are non-zero, pairwise orthogonal and sum to the identity.
    pub fn new(atoms: Vec<Projection>, eps: f64) -> Result<Self> {
        let Some(first) = atoms.first() else {
            return Err(Error::InvalidInput("a context needs at least one atom".into()));
        };
        let dim = first.dim();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidInput(format!("contexts are limited to {MAX_ATOMS} atoms")));
        }
        for a in &atoms {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
            }
            if a.is_zero(eps) {
                return Err(Error::InvalidInput("context atoms must be non-zero".into()));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if !atoms[i].is_orthogonal_to(&atoms[j], eps) {
                    return Err(Error::InvalidInput(format!("atoms {i} and {j} are not orthogonal")));
                }
            }
        }
        if !Projection::sum(dim, &atoms).approx_eq(&Projection::identity(dim), eps.max(1e-12) * 10.0) {
            return Err(Error::InvalidInput("atoms do not sum to the identity".into()));
        }
        Ok(Self::from_atoms_unchecked(atoms))
    }

    pub(crate) fn from_atoms_unchecked(atoms: Vec<Projection>) -> Self {
        let dim = atoms[0].dim();
        let mut keyed: Vec<(usize, Vec<i64>, Projection)> =
            atoms.into_iter().map(|p| (p.rank(), rounded_entries(&p), p)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

        let mut hasher = Sha256::new();
        hasher.update((dim as u64).to_le_bytes());
        for (rank, entries, _) in &keyed {
            hasher.update((*rank as u64).to_le_bytes());
            for e in entries {
                hasher.update(e.to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
        let key = ContextKey(format!("{}a-{hex}", keyed.len()));
        Self {
            dim,
            atoms: keyed.into_iter().map(|(_, _, p)| p).collect(),
            key,
        }
    }

    /// The trivial context `C·1`.
    pub fn trivial(dim: usize) -> Self {
        Self::from_atoms_unchecked(vec![Projection::identity(dim)])
    }

    /// The maximal context of rank-one projections onto an orthogonal basis.
    pub fn from_basis(vectors: &[Vec<C64>], eps: f64) -> Result<Self> {
        let atoms = vectors.iter().map(|v| Projection::onto(v)).collect::<Result<Vec<_>>>()?;
        if let Some(v) = vectors.first() {
            if vectors.len() != v.len() {
                return Err(Error::InvalidInput(format!(
                    "a basis of C^{} needs {} vectors, got {}",
                    v.len(),
                    v.len(),
                    vectors.len()
                )));
            }
        }
        Self::new(atoms, eps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Projection] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn key(&self) -> &ContextKey {
        &self.key
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.len() == 1
    }

    pub fn all_atoms(&self) -> AtomSet {
        AtomSet::full(self.atoms.len())
    }

    /// The projection `Σ_{a ∈ set} a`.
    pub fn projection(&self, set: AtomSet) -> Projection {
        Projection::sum(self.dim, set.iter().filter(|&i| i < self.atoms.len()).map(|i| &self.atoms[i]))
    }

    /// Whether `self ⊆ other` as algebras: every atom of `other` lies under
    /// exactly one atom of `self`.
    pub fn is_subcontext_of(&self, other: &Context, eps: f64) -> bool {
        self.dim == other.dim
            && other
                .atoms
                .iter()
                .all(|a| self.atoms.iter().filter(|b| a.is_below(b, eps)).count() == 1)
    }

    /// For `self ⊆ sup`, the atom of `self` above each atom of `sup`.
    pub(crate) fn restriction_map(&self, sup: &Context, eps: f64) -> Option<Vec<usize>> {
        sup.atoms
            .iter()
            .map(|a| {
                let mut found = self.atoms.iter().enumerate().filter(|(_, b)| a.is_below(b, eps));
                match (found.next(), found.next()) {
                    (Some((i, _)), None) => Some(i),
                    _ => None,
                }
            })
            .collect()
    }
}

/// The smallest unital abelian algebra containing the given commuting operators.
pub fn generate_context(dim: usize, ops: &[HermitianOperator], eps: f64) -> Result<Context> {
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: op.dim() });
        }
    }
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            let deviation = ops[i].commutator_norm(&ops[j]);
            if deviation > eps * (ops[i].max_norm() * ops[j].max_norm()).max(1.0) {
                return Err(Error::NonCommuting { first: i, second: j, deviation });
            }
        }
    }
    let mut atoms = vec![Projection::identity(dim)];
    for op in ops {
        let dec = eigendecompose(op, eps);
        let mut next = Vec::new();
        for a in &atoms {
            for p in dec.projections() {
                let piece = a.commuting_product(p);
                // Products of commuting projections have integer trace.
                if piece.matrix().trace().re > 0.5 {
                    next.push(piece);
                }
            }
        }
        atoms = next;
    }
    Ok(Context::from_atoms_unchecked(atoms))
}

/// The largest context contained in both arguments: atoms are the sums over
/// connected components of the non-orthogonality graph between their atoms.
pub fn intersect(v1: &Context, v2: &Context, eps: f64) -> Result<Context> {
    if v1.dim != v2.dim {
        return Err(Error::DimensionMismatch { expected: v1.dim, found: v2.dim });
    }
    let n1 = v1.len();
    let n2 = v2.len();
    let mut parent: Vec<usize> = (0..n1 + n2).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n1 {
        for j in 0..n2 {
            if !v1.atoms[i].is_orthogonal_to(&v2.atoms[j], eps) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, n1 + j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n1 {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(i),
            None => groups.push((root, vec![i])),
        }
    }
    let atoms = groups
        .into_iter()
        .map(|(_, members)| Projection::sum(v1.dim, members.iter().map(|&i| &v1.atoms[i])))
        .collect();
    Ok(Context::from_atoms_unchecked(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn vz() -> Context {
        Context::from_basis(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]], 1e-9).unwrap()
    }

    fn vx() -> Context {
        Context::from_basis(&[vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)]], 1e-9).unwrap()
    }

    fn e(i: usize, n: usize) -> Vec<C64> {
        (0..n).map(|k| c(if k == i { 1.0 } else { 0.0 })).collect()
    }

    #[test]
    fn generate_from_projection() {
        let v = generate_context(2, &[HermitianOperator::diagonal(&[1.0, 0.0])], 1e-9).unwrap();
        assert_eq!(v, vz());
    }

    #[test]
    fn generate_empty_is_trivial() {
        let v = generate_context(2, &[], 1e-9).unwrap();
        assert!(v.is_trivial());
        assert_eq!(v, Context::trivial(2));
    }

    #[test]
    fn generate_sigma_x() {
        let sx = HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(generate_context(2, &[sx], 1e-9).unwrap(), vx());
    }

    #[test]
    fn generate_rejects_non_commuting() {
        let sx = HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let sz = HermitianOperator::diagonal(&[1.0, -1.0]);
        let err = generate_context(2, &[sz, sx], 1e-9).unwrap_err();
        assert!(matches!(err, Error::NonCommuting { first: 0, second: 1, .. }));
    }

    #[test]
    fn generate_common_refinement() {
        let a = HermitianOperator::diagonal(&[1.0, 1.0, 0.0]);
        let b = HermitianOperator::diagonal(&[0.0, 1.0, 1.0]);
        let v = generate_context(3, &[a, b], 1e-9).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn intersect_cases() {
        assert_eq!(intersect(&vz(), &vz(), 1e-9).unwrap(), vz());
        assert!(intersect(&vz(), &vx(), 1e-9).unwrap().is_trivial());

        let full = Context::from_basis(&[e(0, 3), e(1, 3), e(2, 3)], 1e-9).unwrap();
        let coarse = Context::new(
            vec![
                Projection::onto(&e(0, 3)).unwrap(),
                Projection::from_matrix_unchecked(HermitianOperator::diagonal(&[0.0, 1.0, 1.0]).matrix().clone()),
            ],
            1e-9,
        )
        .unwrap();
        assert_eq!(intersect(&full, &coarse, 1e-9).unwrap(), coarse);
        assert!(coarse.is_subcontext_of(&full, 1e-9));
        assert!(!full.is_subcontext_of(&coarse, 1e-9));
    }

    #[test]
    fn key_is_independent_of_atom_order() {
        let a = Context::from_basis(&[e(0, 2), e(1, 2)], 1e-9).unwrap();
        let b = Context::from_basis(&[e(1, 2), e(0, 2)], 1e-9).unwrap();
        assert_eq!(a.key(), b.key());
        assert!(a.key().as_str().starts_with("2a-"));
    }

    #[test]
    fn invalid_contexts() {
        let bad = Context::new(vec![Projection::onto(&e(0, 2)).unwrap()], 1e-9);
        assert!(bad.is_err());
        let non_orth = Context::from_basis(&[vec![c(1.0), c(0.0)], vec![c(1.0), c(1.0)]], 1e-9);
        assert!(non_orth.is_err());
        let short = Context::from_basis(&[e(0, 3), e(1, 3)], 1e-9);
        assert!(short.is_err());
    }

    #[test]
    fn atom_set_ops() {
        let s = AtomSet::from_indices([0, 2]);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.len(), 2);
        assert!(s.is_subset(AtomSet::full(3)));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
    }
}
