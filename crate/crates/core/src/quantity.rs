//! Quantity-value presheaves: monotone functions on down-sets, their
//! Grothendieck completion, and the arrows `Σ → ℝ^⪰` / `Σ → ℝ^⪯` given by
//! daseinised operators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dasein::{gelfand_values, Mode};
use crate::error::{Error, Result};
use crate::hermitian::{eigendecompose, HermitianOperator};
use crate::order::Order;
use crate::poset::ContextPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `V'' ⊆ V' ⇒ f(V'') ≥ f(V')`
    Reversing,
    /// `V'' ⊆ V' ⇒ f(V'') ≤ f(V')`
    Preserving,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Reversing => Direction::Preserving,
            Direction::Preserving => Direction::Reversing,
        }
    }
}

fn check_domain(order: &Order, base: usize, values: &BTreeMap<usize, f64>) -> Result<()> {
    if base >= order.len() {
        return Err(Error::InvalidInput(format!("base {base} out of range")));
    }
    let down = order.down_set(base);
    if values.len() != down.len() || !down.iter().all(|v| values.contains_key(v)) {
        return Err(Error::InvalidInput(format!("function on ↓{base} must be defined exactly on the down-set")));
    }
    Ok(())
}

/// A real function on `↓V` that is monotone in the given direction.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFunction {
    base: usize,
    values: BTreeMap<usize, f64>,
    direction: Direction,
}

impl MonotoneFunction {
    pub fn new(order: &Order, base: usize, values: BTreeMap<usize, f64>, direction: Direction, eps: f64) -> Result<Self> {
        check_domain(order, base, &values)?;
        let f = Self { base, values, direction };
        f.check(order, eps)?;
        Ok(f)
    }

    /// Re-checks monotonicity over every comparable pair in `↓V`.
    pub fn check(&self, order: &Order, eps: f64) -> Result<()> {
        for (&lo, &x) in &self.values {
            for (&hi, &y) in &self.values {
                if lo == hi || !order.leq(lo, hi) {
                    continue;
                }
                let ok = match self.direction {
                    Direction::Reversing => x >= y - eps,
                    Direction::Preserving => x <= y + eps,
                };
                if !ok {
                    return Err(Error::InvalidInput(format!(
                        "function on ↓{} is not order-{}: f({lo}) = {x}, f({hi}) = {y}",
                        self.base,
                        match self.direction {
                            Direction::Reversing => "reversing",
                            Direction::Preserving => "preserving",
                        }
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn values(&self) -> &BTreeMap<usize, f64> {
        &self.values
    }

    pub fn value(&self, v: usize) -> Option<f64> {
        self.values.get(&v).copied()
    }

    /// The presheaf restriction to `↓sub`.
    pub fn restrict(&self, order: &Order, sub: usize) -> Result<Self> {
        if !order.leq(sub, self.base) {
            return Err(Error::InvalidInput(format!("{sub} is not below {}", self.base)));
        }
        let values = self.values.iter().filter(|(&v, _)| order.leq(v, sub)).map(|(&v, &x)| (v, x)).collect();
        Ok(Self { base: sub, values, direction: self.direction })
    }

    /// `f ↦ −f`, the isomorphism between reversing and preserving functions.
    pub fn negated(&self) -> Self {
        Self {
            base: self.base,
            values: self.values.iter().map(|(&v, &x)| (v, -x)).collect(),
            direction: self.direction.flipped(),
        }
    }

    /// Pointwise sum of two functions of the same direction.
    pub fn add(&self, other: &MonotoneFunction) -> Result<Self> {
        if self.base != other.base {
            return Err(mixed(self.base, other.base));
        }
        if self.direction != other.direction {
            return Err(Error::InvalidInput("cannot add functions of opposite monotonicity".into()));
        }
        let values = self.values.iter().map(|(&v, &x)| (v, x + other.values[&v])).collect();
        Ok(Self { base: self.base, values, direction: self.direction })
    }

    pub fn approx_eq(&self, other: &MonotoneFunction, eps: f64) -> bool {
        self.base == other.base
            && self.direction == other.direction
            && self.values.iter().all(|(v, x)| other.values.get(v).is_some_and(|y| (x - y).abs() <= eps))
    }
}

fn mixed(a: usize, b: usize) -> Error {
    Error::MixedBases { left: a.to_string(), right: b.to_string() }
}

/// A pair `(μ, ν)` of an order-preserving and an order-reversing function on `↓V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedFunction {
    preserving: MonotoneFunction,
    reversing: MonotoneFunction,
}

impl PairedFunction {
    pub fn new(preserving: MonotoneFunction, reversing: MonotoneFunction) -> Result<Self> {
        if preserving.base != reversing.base {
            return Err(mixed(preserving.base, reversing.base));
        }
        if preserving.direction != Direction::Preserving || reversing.direction != Direction::Reversing {
            return Err(Error::InvalidInput("pair must be (order-preserving, order-reversing)".into()));
        }
        Ok(Self { preserving, reversing })
    }

    pub fn preserving(&self) -> &MonotoneFunction {
        &self.preserving
    }

    pub fn reversing(&self) -> &MonotoneFunction {
        &self.reversing
    }

    pub fn base(&self) -> usize {
        self.reversing.base
    }

    /// `(μ₁, ν₁) ≡ (μ₂, ν₂)` iff `μ₁ + ν₁ = μ₂ + ν₂` pointwise.
    pub fn equivalent(&self, other: &PairedFunction, eps: f64) -> bool {
        self.base() == other.base()
            && self.reversing.values.keys().all(|v| {
                let a = self.preserving.values[v] + self.reversing.values[v];
                let b = other.preserving.values[v] + other.reversing.values[v];
                (a - b).abs() <= eps
            })
    }
}

/// An element of `k(ℝ^⪰)` at `V`, stored as the pointwise difference of a
/// formal pair. Real addition is cancellative, so two pairs are equivalent
/// exactly when their differences agree.
#[derive(Debug, Clone, PartialEq)]
pub struct KElement {
    base: usize,
    values: BTreeMap<usize, f64>,
}

impl KElement {
    /// The class `[s, t]` of two order-reversing functions.
    pub fn from_pair(s: &MonotoneFunction, t: &MonotoneFunction) -> Result<Self> {
        if s.base != t.base {
            return Err(mixed(s.base, t.base));
        }
        if s.direction != Direction::Reversing || t.direction != Direction::Reversing {
            return Err(Error::InvalidInput("Grothendieck pairs consist of order-reversing functions".into()));
        }
        let values = s.values.iter().map(|(&v, &x)| (v, x - t.values[&v])).collect();
        Ok(Self { base: s.base, values })
    }

    /// The class `[s, 0]`.
    pub fn embed(s: &MonotoneFunction) -> Result<Self> {
        if s.direction != Direction::Reversing {
            return Err(Error::InvalidInput("only order-reversing functions embed into the completion".into()));
        }
        Ok(Self { base: s.base, values: s.values.clone() })
    }

    /// `[s, s]` for any `s`, represented by zero.
    pub fn identity(order: &Order, base: usize) -> Self {
        Self { base, values: order.down_set(base).into_iter().map(|v| (v, 0.0)).collect() }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// The canonical representative `s − t`.
    pub fn values(&self) -> &BTreeMap<usize, f64> {
        &self.values
    }

    pub fn add(&self, other: &KElement) -> Result<Self> {
        if self.base != other.base {
            return Err(mixed(self.base, other.base));
        }
        let values = self.values.iter().map(|(&v, &x)| (v, x + other.values[&v])).collect();
        Ok(Self { base: self.base, values })
    }

    pub fn neg(&self) -> Self {
        Self { base: self.base, values: self.values.iter().map(|(&v, &x)| (v, -x)).collect() }
    }

    pub fn sub(&self, other: &KElement) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn approx_eq(&self, other: &KElement, eps: f64) -> bool {
        self.base == other.base
            && self.values.len() == other.values.len()
            && self.values.iter().all(|(v, x)| other.values.get(v).is_some_and(|y| (x - y).abs() <= eps))
    }
}

/// `[μ, ν] ↦ [ν, −μ]`, whose canonical difference is `ν + μ`.
pub fn iso_pair_to_k(pair: &PairedFunction) -> KElement {
    KElement::from_pair(&pair.reversing, &pair.preserving.negated()).expect("validated pair")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowMode {
    Outer,
    Inner,
    Paired,
}

/// Components of a physical-quantity arrow: one monotone function per
/// context `V` and atom `λ` of `V`.
#[derive(Debug, Clone)]
pub struct QuantityArrow {
    mode: ArrowMode,
    operator: HermitianOperator,
    outer: Vec<Vec<MonotoneFunction>>,
    inner: Vec<Vec<MonotoneFunction>>,
}

fn arrow_table(a: &HermitianOperator, poset: &ContextPoset, mode: Mode) -> Result<Vec<Vec<MonotoneFunction>>> {
    let eps = poset.eps();
    let gelfand = poset
        .contexts()
        .iter()
        .map(|ctx| gelfand_values(a, ctx, mode, eps))
        .collect::<Result<Vec<_>>>()?;
    let direction = match mode {
        Mode::Outer => Direction::Reversing,
        Mode::Inner => Direction::Preserving,
    };
    (0..poset.len())
        .map(|v| {
            (0..poset.context(v).len())
                .map(|atom| {
                    let values = poset
                        .down_set(v)
                        .into_iter()
                        .map(|sub| (sub, gelfand[sub][poset.restriction(sub, v).expect("inclusion")[atom]]))
                        .collect();
                    MonotoneFunction::new(poset.order(), v, values, direction, eps.max(1e-12) * 10.0).map_err(|e| {
                        Error::InternalConsistency(format!("arrow component at {}: {e}", poset.key(v)))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn quantity_arrow(a: &HermitianOperator, poset: &ContextPoset, mode: ArrowMode) -> Result<QuantityArrow> {
    if a.dim() != poset.dim() {
        return Err(Error::DimensionMismatch { expected: poset.dim(), found: a.dim() });
    }
    let outer = if mode == ArrowMode::Inner { Vec::new() } else { arrow_table(a, poset, Mode::Outer)? };
    let inner = if mode == ArrowMode::Outer { Vec::new() } else { arrow_table(a, poset, Mode::Inner)? };
    let arrow = QuantityArrow { mode, operator: a.clone(), outer, inner };
    arrow.check_naturality(poset)?;
    arrow.check_spectrum(poset)?;
    Ok(arrow)
}

impl QuantityArrow {
    pub fn mode(&self) -> ArrowMode {
        self.mode
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    fn table(&self, mode: Mode) -> Option<&Vec<Vec<MonotoneFunction>>> {
        let t = match mode {
            Mode::Outer => &self.outer,
            Mode::Inner => &self.inner,
        };
        (!t.is_empty()).then_some(t)
    }

    /// The function assigned to atom `atom` of context `v`, if this arrow carries `mode`.
    pub fn function(&self, v: usize, atom: usize, mode: Mode) -> Option<&MonotoneFunction> {
        self.table(mode).map(|t| &t[v][atom])
    }

    pub fn paired(&self, v: usize, atom: usize) -> Option<PairedFunction> {
        let mu = self.function(v, atom, Mode::Inner)?.clone();
        let nu = self.function(v, atom, Mode::Outer)?.clone();
        Some(PairedFunction::new(mu, nu).expect("inner is preserving, outer reversing"))
    }

    /// Restricting the function of `λ` to `↓V'` equals the function of `λ|_{V'}`.
    pub fn check_naturality(&self, poset: &ContextPoset) -> Result<()> {
        for mode in [Mode::Outer, Mode::Inner] {
            let Some(table) = self.table(mode) else { continue };
            for (sub, sup) in poset.inclusions() {
                let map = poset.restriction(sub, sup).expect("inclusion");
                for (atom, f) in table[sup].iter().enumerate() {
                    let restricted = f.restrict(poset.order(), sub)?;
                    if restricted != table[sub][map[atom]] {
                        return Err(Error::InternalConsistency(format!(
                            "naturality fails along {} ⊆ {} at atom {atom}",
                            poset.key(sub),
                            poset.key(sup)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every value lies in `[min sp(A), max sp(A)]`.
    pub fn check_spectrum(&self, poset: &ContextPoset) -> Result<()> {
        let spectrum = eigendecompose(&self.operator, poset.eps());
        let (lo, hi) = spectrum
            .eigenvalues()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
        let tol = poset.eps().max(1e-12) * 10.0 * self.operator.max_norm().max(1.0);
        for mode in [Mode::Outer, Mode::Inner] {
            let Some(table) = self.table(mode) else { continue };
            for f in table.iter().flatten() {
                if let Some((&v, &x)) = f.values.iter().find(|(_, &x)| x < lo - tol || x > hi + tol) {
                    return Err(Error::InternalConsistency(format!(
                        "arrow value {x} at {} outside the spectrum [{lo}, {hi}]",
                        poset.key(v)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `{"operator", "mode", "components": {key: {atom: {key: value}}}}`; paired
    /// values are `[inner, outer]`.
    pub fn to_json(&self, poset: &ContextPoset) -> Value {
        let mut components = serde_json::Map::new();
        for v in 0..poset.len() {
            let mut atoms = serde_json::Map::new();
            for atom in 0..poset.context(v).len() {
                let mut by_key = BTreeMap::new();
                for sub in poset.down_set(v) {
                    let value = match self.mode {
                        ArrowMode::Outer => json!(self.outer[v][atom].values[&sub]),
                        ArrowMode::Inner => json!(self.inner[v][atom].values[&sub]),
                        ArrowMode::Paired => {
                            json!([self.inner[v][atom].values[&sub], self.outer[v][atom].values[&sub]])
                        }
                    };
                    by_key.insert(poset.key(sub).to_string(), value);
                }
                atoms.insert(atom.to_string(), json!(by_key));
            }
            components.insert(poset.key(v).to_string(), Value::Object(atoms));
        }
        json!({
            "operator": crate::json::MatrixJson::from_matrix(self.operator.matrix()),
            "mode": self.mode,
            "components": components,
        })
    }
}

/// `δ̆°(A²) − δ̆°(A)²` in `k(ℝ^⪰)`, per context and atom, with the square taken
/// pointwise on values. Requires `A ⪰ 0` so that the square stays order-reversing.
pub fn dispersion(a: &HermitianOperator, poset: &ContextPoset) -> Result<Vec<Vec<KElement>>> {
    let eps = poset.eps();
    let min = a.min_eigenvalue(eps);
    if min < -eps.max(1e-12) * 10.0 * a.max_norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "dispersion needs a positive semidefinite operator (minimum eigenvalue {min}); \
             squaring values of a sign-changing operator does not preserve order reversal"
        )));
    }
    let of_a = quantity_arrow(a, poset, ArrowMode::Outer)?;
    let of_square = quantity_arrow(&a.square(), poset, ArrowMode::Outer)?;
    let tol = eps.max(1e-12) * 10.0 * a.max_norm().powi(2).max(1.0);
    (0..poset.len())
        .map(|v| {
            (0..poset.context(v).len())
                .map(|atom| {
                    let f = &of_a.outer[v][atom];
                    let squared = MonotoneFunction::new(
                        poset.order(),
                        v,
                        f.values.iter().map(|(&k, &x)| (k, x * x)).collect(),
                        Direction::Reversing,
                        tol,
                    )
                    .map_err(|e| Error::InternalConsistency(format!("squared arrow: {e}")))?;
                    KElement::embed(&of_square.outer[v][atom])?.sub(&KElement::embed(&squared)?)
                })
                .collect()
        })
        .collect()
}
