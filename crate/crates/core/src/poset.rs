use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::context::{intersect, AtomSet, Context, ContextKey};
use crate::error::{Error, Result};
use crate::order::Order;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetOptions {
    pub close_under_intersection: bool,
    pub include_trivial: bool,
}

impl Default for PosetOptions {
    fn default() -> Self {
        Self {
            close_under_intersection: true,
            include_trivial: false,
        }
    }
}

/// A finite category of contexts ordered by inclusion.
///
/// Contexts are stored sorted by atom count and then by canonical key, so
/// subcontexts always precede their supercontexts.
#[derive(Debug, Clone)]
pub struct ContextPoset {
    dim: usize,
    eps: f64,
    contexts: Vec<Context>,
    order: Order,
    // (sub, sup) -> for each atom of sup, the atom of sub above it
    restrictions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ContextPoset {
    pub fn build(contexts: Vec<Context>, options: PosetOptions, eps: f64) -> Result<Self> {
        let Some(first) = contexts.first() else {
            return Err(Error::InvalidInput("cannot build a poset from no contexts".into()));
        };
        let dim = first.dim();
        if let Some(bad) = contexts.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }

        let mut by_key: BTreeMap<ContextKey, Context> = BTreeMap::new();
        for c in contexts {
            if options.include_trivial || !c.is_trivial() {
                by_key.entry(c.key().clone()).or_insert(c);
            }
        }

        if options.close_under_intersection {
            loop {
                let current: Vec<Context> = by_key.values().cloned().collect();
                let mut added = false;
                for i in 0..current.len() {
                    for j in (i + 1)..current.len() {
                        let m = intersect(&current[i], &current[j], eps)?;
                        if (options.include_trivial || !m.is_trivial()) && !by_key.contains_key(m.key()) {
                            by_key.insert(m.key().clone(), m);
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
        }
        if options.include_trivial {
            let t = Context::trivial(dim);
            by_key.entry(t.key().clone()).or_insert(t);
        }

        let mut contexts: Vec<Context> = by_key.into_values().collect();
        contexts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.key().cmp(b.key())));
        Self::from_sorted(dim, contexts, eps)
    }

    fn from_sorted(dim: usize, contexts: Vec<Context>, eps: f64) -> Result<Self> {
        let n = contexts.len();
        let mut leq = vec![vec![false; n]; n];
        let mut restrictions = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    leq[i][j] = true;
                    restrictions.insert((i, j), (0..contexts[i].len()).collect());
                } else if contexts[i].is_subcontext_of(&contexts[j], eps) {
                    let map = contexts[i].restriction_map(&contexts[j], eps).ok_or_else(|| {
                        Error::InternalConsistency(format!(
                            "inclusion {} ⊆ {} has no restriction map",
                            contexts[i].key(),
                            contexts[j].key()
                        ))
                    })?;
                    leq[i][j] = true;
                    restrictions.insert((i, j), map);
                }
            }
        }
        let order = Order::from_matrix(leq).map_err(|e| {
            Error::InternalConsistency(format!("context inclusion is not a partial order: {e}"))
        })?;
        Ok(Self {
            dim,
            eps,
            contexts,
            order,
            restrictions,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, i: usize) -> &Context {
        &self.contexts[i]
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn key(&self, i: usize) -> &ContextKey {
        self.contexts[i].key()
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.key().as_str() == key)
    }

    /// `sub ⊆ sup`.
    pub fn includes(&self, sub: usize, sup: usize) -> bool {
        self.order.leq(sub, sup)
    }

    pub fn down_set(&self, v: usize) -> Vec<usize> {
        self.order.down_set(v)
    }

    /// For `sub ⊆ sup`, maps each atom index of `sup` to the atom of `sub` above it.
    pub fn restriction(&self, sub: usize, sup: usize) -> Option<&[usize]> {
        self.restrictions.get(&(sub, sup)).map(Vec::as_slice)
    }

    /// All comparable pairs `(sub, sup)`, including the reflexive ones.
    pub fn inclusions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.restrictions.keys().copied()
    }

    /// Image of an atom subset of `sup` in `sub`.
    pub fn restrict_set(&self, set: AtomSet, sub: usize, sup: usize) -> Option<AtomSet> {
        let map = self.restriction(sub, sup)?;
        Some(AtomSet::from_indices(set.iter().map(|a| map[a])))
    }

    /// Whether every pairwise intersection is present (or trivial and excluded).
    pub fn is_closed_under_intersection(&self) -> bool {
        let keys: BTreeSet<&ContextKey> = self.contexts.iter().map(Context::key).collect();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                match intersect(&self.contexts[i], &self.contexts[j], self.eps) {
                    Ok(m) if m.is_trivial() || keys.contains(m.key()) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Hasse diagram in DOT. Nodes are labelled by atom count; edges point
    /// from a context to the contexts covering it.
    pub fn to_dot(&self) -> String {
        self.dot_with(|_| None)
    }

    /// As [`to_dot`](Self::to_dot), additionally listing and highlighting a
    /// selected atom subset per context.
    pub fn to_dot_with_selection(&self, selection: &[AtomSet]) -> String {
        self.dot_with(|i| selection.get(i).copied())
    }

    fn dot_with(&self, selected: impl Fn(usize) -> Option<AtomSet>) -> String {
        let mut out = String::from("digraph contexts {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, c) in self.contexts.iter().enumerate() {
            match selected(i) {
                None => {
                    let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", c.key(), c.len());
                }
                Some(s) => {
                    let atoms: Vec<String> = s.iter().map(|a| a.to_string()).collect();
                    let style = if s.is_empty() { "" } else { ", style=filled, fillcolor=lightblue" };
                    let _ = writeln!(
                        out,
                        "  \"{}\" [label=\"{} | {{{}}}\"{}];",
                        c.key(),
                        c.len(),
                        atoms.join(","),
                        style
                    );
                }
            }
        }
        for (a, b) in self.order.covers() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.key(a), self.key(b));
        }
        out.push_str("}\n");
        out
    }
}
