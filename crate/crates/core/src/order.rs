//! Finite partial orders on `0..n`.
//!
//! Sieves, monotone functions and the Grothendieck completion only depend on
//! the order relation, so they are written against [`Order`] rather than
//! against a full context poset.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Order {
    leq: Vec<Vec<bool>>,
}

impl Order {
    /// Validates a full relation matrix (`leq[a][b]` meaning `a ≤ b`).
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("order matrix must be square".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidInput(format!("order is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidInput(format!("order is not antisymmetric at ({a}, {b})")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidInput(format!("order is not transitive at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { leq })
    }

    /// The reflexive-transitive closure of the given pairs `(a, b)`, `a ≤ b`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(leq)
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        Self {
            leq: (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        Self {
            leq: (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// `↓v`, in increasing index order.
    pub fn down_set(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.leq[u][v]).collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&a| !(0..n).any(|b| b != a && self.leq[a][b]))
            .collect()
    }

    /// Every labelled partial order on `n` elements. Intended for exhaustive
    /// checks at small `n` (219 orders at `n = 4`).
    pub fn enumerate_all(n: usize) -> Vec<Order> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut leq = vec![vec![false; n]; n];
            for (a, row) in leq.iter_mut().enumerate() {
                row[a] = true;
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    leq[a][b] = true;
                }
            }
            if let Ok(o) = Order::from_matrix(leq) {
                out.push(o);
            }
        }
        out
    }
}
