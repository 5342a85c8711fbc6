//! Dense complex Hermitian linear algebra at small dimension.
//!
//! Operators and projections are stored as full `dim × dim` complex matrices.
//! Two projections are considered equal when their entrywise difference is at
//! most `eps` in absolute value.

mod borel;
mod family;
mod jacobi;

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub use borel::{BorelSet, Interval};
pub use family::{operator_from_family, spectral_family, SpectralFamily};
pub use jacobi::{eigendecompose, eigendecompose_matrix, spectral_projection, SpectralDecomposition};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Default numerical tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Largest absolute entry of a matrix.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// A self-adjoint operator on `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Validates `matrix` as Hermitian within `eps · max(1, ‖m‖_max)` and stores
    /// its exact Hermitian part.
    pub fn new(matrix: CMatrix, eps: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidInput(format!(
                "operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidInput("operator dimension must be positive".into()));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("operator entries must be finite".into()));
        }
        let deviation = max_norm(&(&matrix - matrix.adjoint()));
        if deviation > eps * max_norm(&matrix).max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            matrix: hermitian_part(&matrix),
        })
    }

    /// Builds an operator from real rows. Panics if the rows are not square or symmetric.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j], 0.0));
        Self::new(m, DEFAULT_EPS).expect("real rows must form a symmetric matrix")
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { matrix: m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        Self {
            matrix: hermitian_part(&matrix),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn max_norm(&self) -> f64 {
        max_norm(&self.matrix)
    }

    pub fn square(&self) -> Self {
        Self::from_matrix_unchecked(&self.matrix * &self.matrix)
    }

    /// `A + shift · 1`.
    pub fn shifted(&self, shift: f64) -> Self {
        let n = self.dim();
        Self {
            matrix: &self.matrix + CMatrix::identity(n, n).scale(shift),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            matrix: self.matrix.scale(factor),
        }
    }

    /// Largest entry of the commutator `AB − BA`.
    pub fn commutator_norm(&self, other: &HermitianOperator) -> f64 {
        max_norm(&(&self.matrix * &other.matrix - &other.matrix * &self.matrix))
    }

    pub fn approx_eq(&self, other: &HermitianOperator, eps: f64) -> bool {
        self.dim() == other.dim() && max_norm(&(&self.matrix - &other.matrix)) <= eps
    }

    pub fn min_eigenvalue(&self, eps: f64) -> f64 {
        let dec = eigendecompose(self, eps);
        dec.eigenvalues()[0]
    }

    /// Shifts the operator by its smallest eigenvalue when that is negative, so
    /// that the result is positive semidefinite. Never applied implicitly.
    pub fn shift_to_positive(&self, eps: f64) -> Self {
        let min = self.min_eigenvalue(eps);
        if min < 0.0 {
            self.shifted(-min)
        } else {
            self.clone()
        }
    }
}

/// An orthogonal projection `P = P² = P†`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    matrix: CMatrix,
}

impl Projection {
    pub fn new(matrix: CMatrix, eps: f64) -> Result<Self> {
        let op = HermitianOperator::new(matrix, eps)?;
        let m = op.matrix;
        let idem = max_norm(&(&m * &m - &m));
        if idem > eps.max(1e-12) * 10.0 {
            return Err(Error::InvalidInput(format!(
                "matrix is not idempotent (max deviation {idem:e})"
            )));
        }
        Ok(Self { matrix: m })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        Self {
            matrix: hermitian_part(&matrix),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    /// Rank-one projection onto the ray spanned by `vector` (normalised internally).
    pub fn onto(vector: &[C64]) -> Result<Self> {
        let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vector.is_empty() || norm < 1e-12 || !norm.is_finite() {
            return Err(Error::InvalidInput("cannot project onto a zero vector".into()));
        }
        let n = vector.len();
        let v: Vec<C64> = vector.iter().map(|z| z / norm).collect();
        Ok(Self {
            matrix: CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()),
        })
    }

    /// Sum of mutually orthogonal projections. Orthogonality is the caller's responsibility.
    pub fn sum<'a>(dim: usize, parts: impl IntoIterator<Item = &'a Projection>) -> Self {
        let mut m = CMatrix::zeros(dim, dim);
        for p in parts {
            m += &p.matrix;
        }
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.trace().re.round().max(0.0) as usize
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        max_norm(&self.matrix) <= eps
    }

    /// `P ⪯ Q`, tested as `PQ = P`.
    pub fn is_below(&self, other: &Projection, eps: f64) -> bool {
        max_norm(&(&self.matrix * &other.matrix - &self.matrix)) <= eps
    }

    /// `PQ = 0`.
    pub fn is_orthogonal_to(&self, other: &Projection, eps: f64) -> bool {
        max_norm(&(&self.matrix * &other.matrix)) <= eps
    }

    pub fn approx_eq(&self, other: &Projection, eps: f64) -> bool {
        self.dim() == other.dim() && max_norm(&(&self.matrix - &other.matrix)) <= eps
    }

    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self {
            matrix: CMatrix::identity(n, n) - &self.matrix,
        }
    }

    /// Product of two commuting projections, i.e. their meet.
    pub(crate) fn commuting_product(&self, other: &Projection) -> Self {
        Self::from_matrix_unchecked(&self.matrix * &other.matrix)
    }

    /// Expectation value `⟨ψ|P|ψ⟩` for a unit vector `ψ`.
    pub fn expectation(&self, psi: &[C64]) -> f64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += psi[i].conj() * self.matrix[(i, j)] * psi[j];
            }
        }
        acc.re
    }

    pub fn as_operator(&self) -> HermitianOperator {
        HermitianOperator {
            matrix: self.matrix.clone(),
        }
    }
}

/// Normalises a complex vector, failing on zero or non-finite input.
pub fn normalize(vector: &[C64]) -> Result<Vec<C64>> {
    let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if vector.is_empty() || !norm.is_finite() || norm < 1e-12 {
        return Err(Error::InvalidInput("vector must be non-zero and finite".into()));
    }
    Ok(vector.iter().map(|z| z / norm).collect())
}
