use super::{max_norm, BorelSet, C64, CMatrix, HermitianOperator, Projection};
use crate::error::Result;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (strictly increasing after clustering) with their eigenprojections.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projections: Vec<Projection>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projections(&self) -> &[Projection] {
        &self.projections
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projections[0].dim()
    }

    /// `Σ λ_i P_i`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for (l, p) in self.eigenvalues.iter().zip(&self.projections) {
            m += p.matrix().scale(*l);
        }
        m
    }

    /// Sum of the eigenprojections whose eigenvalue lies in `delta`.
    ///
    /// Membership is decided with `tol` slack in the direction of each
    /// endpoint's closedness: closed endpoints are widened, open ones narrowed.
    pub fn projection_for(&self, delta: &BorelSet, tol: f64) -> Projection {
        let n = self.dim();
        Projection::sum(
            n,
            self.eigenvalues
                .iter()
                .zip(&self.projections)
                .filter(|(l, _)| delta.contains_approx(**l, tol))
                .map(|(_, p)| p),
        )
    }
}

/// Clustering tolerance for eigenvalues of `a`.
pub(crate) fn cluster_tolerance(a: &HermitianOperator, eps: f64) -> f64 {
    eps * a.max_norm().max(1.0)
}

/// Cyclic complex Jacobi. Returns unsorted eigenvalues and the unitary whose
/// columns are the matching eigenvectors.
fn jacobi(a: &CMatrix, eps: f64) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = CMatrix::identity(n, n);
    let scale = max_norm(&a).max(1.0);
    let threshold = (eps * scale) * (eps * scale);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off += a[(p, q)].norm_sqr();
                }
            }
        }
        if off < threshold {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let b = beta.norm();
                if b == 0.0 {
                    continue;
                }
                // Remove the phase so the (p, q) block becomes real symmetric.
                let phase = beta / b;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let theta = (gamma - alpha) / (2.0 * b);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let g11 = C64::new(c, 0.0);
                let g12 = C64::new(s, 0.0);
                let g21 = phase.conj() * (-s);
                let g22 = phase.conj() * c;

                // A ← A G
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g11 + akq * g21;
                    a[(k, q)] = akp * g12 + akq * g22;
                }
                // A ← G† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g11.conj() * apk + g21.conj() * aqk;
                    a[(q, k)] = g12.conj() * apk + g22.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                // V ← V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g11 + vkq * g21;
                    v[(k, q)] = vkp * g12 + vkq * g22;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Spectral decomposition of `a`. Numerical eigenvalues closer than
/// `eps · max(1, ‖a‖_max)` are merged into a single eigenprojection.
pub fn eigendecompose(a: &HermitianOperator, eps: f64) -> SpectralDecomposition {
    let n = a.dim();
    let (values, vectors) = jacobi(a.matrix(), eps);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let tol = cluster_tolerance(a, eps);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if values[i] - values[*c.last().unwrap()] < tol => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean = cluster.iter().map(|&i| values[i]).sum::<f64>() / cluster.len() as f64;
        let mut m = CMatrix::zeros(n, n);
        for &i in &cluster {
            let col = vectors.column(i);
            m += col * col.adjoint();
        }
        eigenvalues.push(mean);
        projections.push(Projection::from_matrix_unchecked(m));
    }
    SpectralDecomposition {
        eigenvalues,
        projections,
    }
}

/// Validating entry point for raw matrices.
pub fn eigendecompose_matrix(m: CMatrix, eps: f64) -> Result<SpectralDecomposition> {
    let a = HermitianOperator::new(m, eps)?;
    Ok(eigendecompose(&a, eps))
}

/// The spectral projection `E[A ∈ Δ]`.
pub fn spectral_projection(a: &HermitianOperator, delta: &BorelSet, eps: f64) -> Projection {
    eigendecompose(a, eps).projection_for(delta, cluster_tolerance(a, eps))
}
