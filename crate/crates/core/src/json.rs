//! JSON input formats: matrices, ray families, operator pools, state vectors
//! and abstract posets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::context::{generate_context, Context};
use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HermitianOperator, Projection, C64};
use crate::order::Order;

/// `{"dim": n, "re": [[...]], "im": [[...]]}`; `im` may be omitted for real matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

fn check_rows(dim: usize, rows: &[Vec<f64>], what: &str) -> Result<()> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidInput(format!("{what} part must be a {dim}x{dim} array")));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("{what} part has non-finite entries")));
    }
    Ok(())
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.dim == 0 || self.dim > 64 {
            return Err(Error::InvalidInput(format!("unsupported dimension {}", self.dim)));
        }
        check_rows(self.dim, &self.re, "re")?;
        if let Some(im) = &self.im {
            check_rows(self.dim, im, "im")?;
        }
        Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            C64::new(self.re[i][j], self.im.as_ref().map_or(0.0, |im| im[i][j]))
        }))
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let im: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        let real = im.iter().flatten().all(|&x| x == 0.0);
        Self { dim: n, re, im: (!real).then_some(im) }
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    serde_json::from_str::<MatrixJson>(text)?.to_matrix()
}

pub fn parse_operator(text: &str, eps: f64) -> Result<HermitianOperator> {
    HermitianOperator::new(parse_matrix(text)?, eps)
}

pub fn parse_projection(text: &str, eps: f64) -> Result<Projection> {
    Projection::new(parse_matrix(text)?, eps)
}

/// A vector component: either a real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Component {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Component> for C64 {
    fn from(c: Component) -> C64 {
        match c {
            Component::Real(x) => C64::new(x, 0.0),
            Component::Complex([re, im]) => C64::new(re, im),
        }
    }
}

fn to_vector(components: &[Component]) -> Result<Vec<C64>> {
    let v: Vec<C64> = components.iter().map(|&c| c.into()).collect();
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("vector has non-finite entries".into()));
    }
    Ok(v)
}

/// `{"dim": n, "contexts": [[vector, ...], ...]}`, each inner list an orthogonal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayFamilyJson {
    pub dim: usize,
    pub contexts: Vec<Vec<Vec<Component>>>,
}

impl RayFamilyJson {
    pub fn to_contexts(&self, eps: f64) -> Result<Vec<Context>> {
        if self.dim == 0 || self.dim > 64 {
            return Err(Error::InvalidInput(format!("unsupported dimension {}", self.dim)));
        }
        self.contexts
            .iter()
            .enumerate()
            .map(|(k, basis)| {
                if basis.len() != self.dim {
                    return Err(Error::InvalidInput(format!(
                        "context {k} has {} vectors, expected {}",
                        basis.len(),
                        self.dim
                    )));
                }
                let vectors = basis
                    .iter()
                    .map(|v| {
                        if v.len() != self.dim {
                            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
                        }
                        to_vector(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Context::from_basis(&vectors, eps)
                    .map_err(|e| Error::InvalidInput(format!("context {k} is not an orthogonal basis: {e}")))
            })
            .collect()
    }
}

pub fn parse_ray_family(text: &str, eps: f64) -> Result<Vec<Context>> {
    serde_json::from_str::<RayFamilyJson>(text)?.to_contexts(eps)
}

/// `{"dim": n, "pools": [[matrix, ...], ...]}`: each pool of commuting
/// operators generates one context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorPoolJson {
    pub dim: usize,
    pub pools: Vec<Vec<MatrixJson>>,
}

impl OperatorPoolJson {
    pub fn to_contexts(&self, eps: f64) -> Result<Vec<Context>> {
        self.pools
            .iter()
            .map(|pool| {
                let ops = pool
                    .iter()
                    .map(|m| {
                        if m.dim != self.dim {
                            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim });
                        }
                        HermitianOperator::new(m.to_matrix()?, eps)
                    })
                    .collect::<Result<Vec<_>>>()?;
                generate_context(self.dim, &ops, eps)
            })
            .collect()
    }
}

pub fn parse_operator_pools(text: &str, eps: f64) -> Result<Vec<Context>> {
    serde_json::from_str::<OperatorPoolJson>(text)?.to_contexts(eps)
}

/// A state vector written as a JSON list of reals or `[re, im]` pairs.
pub fn parse_state(text: &str) -> Result<Vec<C64>> {
    let components: Vec<Component> = serde_json::from_str(text)?;
    if components.is_empty() {
        return Err(Error::InvalidInput("state vector is empty".into()));
    }
    to_vector(&components)
}

/// `{"elements": [names], "leq": [[lower, upper], ...]}`; the order is the
/// reflexive-transitive closure of the listed pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn to_order(&self) -> Result<(Order, BTreeMap<String, usize>)> {
        let mut names = BTreeMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if names.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate poset element {e:?}")));
            }
        }
        let index = |n: &String| names.get(n).copied().ok_or_else(|| Error::InvalidInput(format!("unknown poset element {n:?}")));
        let pairs = self.leq.iter().map(|[a, b]| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>>>()?;
        Ok((Order::from_pairs(self.elements.len(), &pairs)?, names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let m = parse_matrix(r#"{"dim":2,"re":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(m[(0, 1)], C64::new(1.0, 0.0));
        let y = parse_operator(r#"{"dim":2,"re":[[0,0],[0,0]],"im":[[0,-1],[1,0]]}"#, 1e-9).unwrap();
        assert_eq!(y.matrix()[(1, 0)], C64::new(0.0, 1.0));
        assert!(parse_operator(r#"{"dim":2,"re":[[0,1],[0,0]]}"#, 1e-9).is_err());
        assert!(parse_matrix(r#"{"dim":2,"re":[[0,1]]}"#).is_err());
        assert!(parse_matrix(r#"{"dim":0,"re":[]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
        let round = MatrixJson::from_matrix(y.matrix());
        assert_eq!(round.to_matrix().unwrap(), *y.matrix());
    }

    #[test]
    fn ray_families() {
        let zx = r#"{"dim":2,"contexts":[[[[1,0],[0,0]],[[0,0],[1,0]]],[[1,1],[1,-1]]]}"#;
        let ctxs = parse_ray_family(zx, 1e-9).unwrap();
        assert_eq!(ctxs.len(), 2);
        let bad = r#"{"dim":2,"contexts":[[[1,1],[1,0]]]}"#;
        assert!(parse_ray_family(bad, 1e-9).is_err());
        let short = r#"{"dim":2,"contexts":[[[1,0]]]}"#;
        assert!(parse_ray_family(short, 1e-9).is_err());
    }

    #[test]
    fn pools() {
        let text = r#"{"dim":3,"pools":[[{"dim":3,"re":[[1,0,0],[0,0,0],[0,0,0]]}]]}"#;
        let ctxs = parse_operator_pools(text, 1e-9).unwrap();
        assert_eq!(ctxs[0].len(), 2);
    }

    #[test]
    fn states() {
        assert_eq!(parse_state("[1,0]").unwrap(), vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(parse_state("[[0,1],0]").unwrap()[0], C64::new(0.0, 1.0));
        assert!(parse_state("[]").is_err());
    }

    #[test]
    fn posets() {
        let p: PosetJson = serde_json::from_str(r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#).unwrap();
        let (o, names) = p.to_order().unwrap();
        assert!(o.leq(names["a"], names["c"]));
        let cyclic: PosetJson = serde_json::from_str(r#"{"elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#).unwrap();
        assert!(cyclic.to_order().is_err());
    }
}
