use super::{eigendecompose, CMatrix, HermitianOperator, Projection};
use crate::error::{Error, Result};

/// A right-continuous increasing step family of projections.
///
/// `E(λ) = E_j` for the largest threshold `λ_j ≤ λ` and `E(λ) = 0` below the
/// first threshold. The last projection is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFamily {
    thresholds: Vec<f64>,
    projections: Vec<Projection>,
}

impl SpectralFamily {
    pub fn new(thresholds: Vec<f64>, projections: Vec<Projection>, eps: f64) -> Result<Self> {
        if thresholds.is_empty() || thresholds.len() != projections.len() {
            return Err(Error::InvalidInput(
                "spectral family needs equally many thresholds and projections, at least one".into(),
            ));
        }
        if thresholds.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("thresholds must be strictly increasing".into()));
        }
        let dim = projections[0].dim();
        if projections.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidInput("projections of mixed dimension".into()));
        }
        for (j, w) in projections.windows(2).enumerate() {
            if !w[0].is_below(&w[1], eps) {
                return Err(Error::InvalidInput(format!(
                    "spectral family is not monotone at thresholds {} and {}",
                    thresholds[j],
                    thresholds[j + 1]
                )));
            }
        }
        if !projections.last().unwrap().approx_eq(&Projection::identity(dim), eps) {
            return Err(Error::InvalidInput("top projection of a spectral family must be the identity".into()));
        }
        Ok(Self { thresholds, projections })
    }

    pub(crate) fn new_unchecked(thresholds: Vec<f64>, projections: Vec<Projection>) -> Self {
        Self { thresholds, projections }
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn projections(&self) -> &[Projection] {
        &self.projections
    }

    pub fn dim(&self) -> usize {
        self.projections[0].dim()
    }

    /// `E(λ)`.
    pub fn at(&self, lambda: f64) -> Projection {
        match self.thresholds.iter().rposition(|&t| t <= lambda) {
            Some(j) => self.projections[j].clone(),
            None => Projection::zero(self.dim()),
        }
    }
}

/// The spectral family of `a`: thresholds are its eigenvalues and `E_j` the
/// sum of the first `j` eigenprojections.
pub fn spectral_family(a: &HermitianOperator, eps: f64) -> SpectralFamily {
    let dec = eigendecompose(a, eps);
    let n = a.dim();
    let mut acc = CMatrix::zeros(n, n);
    let mut projections = Vec::with_capacity(dec.len());
    for p in dec.projections() {
        acc += p.matrix();
        projections.push(Projection::from_matrix_unchecked(acc.clone()));
    }
    SpectralFamily::new_unchecked(dec.eigenvalues().to_vec(), projections)
}

/// `Σ λ_j (E_j − E_{j−1})`, the inverse of [`spectral_family`]. Zero-width
/// jumps contribute nothing.
pub fn operator_from_family(family: &SpectralFamily) -> HermitianOperator {
    let n = family.dim();
    let mut m = CMatrix::zeros(n, n);
    let mut prev = CMatrix::zeros(n, n);
    for (l, e) in family.thresholds.iter().zip(&family.projections) {
        m += (e.matrix() - &prev).scale(*l);
        prev = e.matrix().clone();
    }
    HermitianOperator::from_matrix_unchecked(m)
}
