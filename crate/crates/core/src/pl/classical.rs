use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::BorelSet;

/// A finite classical state space with one real-valued quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalModel {
    pub quantity: BTreeMap<String, f64>,
}

impl ClassicalModel {
    pub fn new(quantity: impl IntoIterator<Item = (String, f64)>) -> Self {
        Self { quantity: quantity.into_iter().collect() }
    }

    pub fn states(&self) -> impl Iterator<Item = &str> {
        self.quantity.keys().map(String::as_str)
    }
}

/// `{s : A(s) ∈ Δ}`.
pub fn classical_representation(model: &ClassicalModel, delta: &BorelSet) -> BTreeSet<String> {
    model.quantity.iter().filter(|(_, &x)| delta.contains(x)).map(|(s, _)| s.clone()).collect()
}

/// 1 iff `A(s) ∈ Δ`.
pub fn classical_truth(model: &ClassicalModel, delta: &BorelSet, state: &str) -> Result<bool> {
    let x = model.quantity.get(state).ok_or_else(|| Error::UnknownState(state.to_string()))?;
    Ok(delta.contains(*x))
}
