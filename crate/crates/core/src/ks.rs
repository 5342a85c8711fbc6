//! Search for global sections of the spectral presheaf.
//!
//! A global section picks one atom per context such that every restriction
//! agrees. Over a suitable family of contexts none exists; an exhausted search
//! with no sections certifies that for the given poset.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::context::AtomSet;
use crate::poset::ContextPoset;

pub const DEFAULT_LIMIT: usize = 16;

/// One atom index per context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalSection(pub Vec<usize>);

impl GlobalSection {
    pub fn is_compatible(&self, poset: &ContextPoset) -> bool {
        self.0.len() == poset.len()
            && poset.inclusions().all(|(sub, sup)| poset.restriction(sub, sup).expect("inclusion")[self.0[sup]] == self.0[sub])
    }

    pub fn to_json_map(&self, poset: &ContextPoset) -> BTreeMap<String, usize> {
        self.0.iter().enumerate().map(|(v, &a)| (poset.key(v).to_string(), a)).collect()
    }
}

/// Reported only when no global section exists: the first pair of contexts
/// the search found in conflict, where fixing an atom at `context` left no
/// admissible atom at `conflict`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub context: String,
    pub conflict: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub sections: Vec<GlobalSection>,
    /// True when the whole search space was covered.
    pub exhausted: bool,
    pub nodes: u64,
    pub obstruction: Option<Obstruction>,
    pub warning: Option<String>,
}

impl SearchReport {
    pub fn to_json(&self, poset: &ContextPoset) -> serde_json::Value {
        let mut v = serde_json::json!({
            "sections": self.sections.iter().map(|s| s.to_json_map(poset)).collect::<Vec<_>>(),
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "obstruction": self.obstruction,
        });
        if let Some(w) = &self.warning {
            v["warning"] = serde_json::Value::String(w.clone());
        }
        v
    }
}

struct Search<'a> {
    poset: &'a ContextPoset,
    order: Vec<usize>,
    subs: Vec<Vec<usize>>,
    sups: Vec<Vec<usize>>,
    limit: usize,
    sections: Vec<GlobalSection>,
    stopped: bool,
    nodes: u64,
    obstruction: Option<Obstruction>,
}

impl Search<'_> {
    /// Narrows domains after fixing `atom` at `v`; returns the emptied context on conflict.
    fn propagate(&self, domains: &mut [AtomSet], v: usize, atom: usize) -> Option<usize> {
        domains[v] = AtomSet::singleton(atom);
        for &sub in &self.subs[v] {
            let image = self.poset.restriction(sub, v).expect("inclusion")[atom];
            domains[sub] = domains[sub].intersection(AtomSet::singleton(image));
            if domains[sub].is_empty() {
                return Some(sub);
            }
        }
        for &sup in &self.sups[v] {
            let map = self.poset.restriction(v, sup).expect("inclusion");
            let above = AtomSet::from_indices((0..map.len()).filter(|&b| map[b] == atom));
            domains[sup] = domains[sup].intersection(above);
            if domains[sup].is_empty() {
                return Some(sup);
            }
        }
        None
    }

    fn run(&mut self, depth: usize, domains: &[AtomSet], chosen: &mut Vec<usize>) {
        if self.stopped {
            return;
        }
        if depth == self.order.len() {
            if self.sections.len() == self.limit {
                self.stopped = true;
                return;
            }
            self.sections.push(GlobalSection(chosen.clone()));
            return;
        }
        let v = self.order[depth];
        for atom in domains[v].iter() {
            self.nodes += 1;
            let mut next = domains.to_vec();
            if let Some(empty) = self.propagate(&mut next, v, atom) {
                if self.obstruction.is_none() {
                    self.obstruction = Some(Obstruction {
                        context: self.poset.key(v).to_string(),
                        conflict: self.poset.key(empty).to_string(),
                    });
                }
                continue;
            }
            chosen[v] = atom;
            self.run(depth + 1, &next, chosen);
            if self.stopped {
                return;
            }
        }
    }
}

/// Backtracking search for up to `limit` global sections. Contexts are
/// visited by decreasing atom count and every choice is propagated to all
/// comparable contexts before descending.
pub fn find_global_sections(poset: &ContextPoset, limit: usize) -> SearchReport {
    let n = poset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(poset.context(v).len()), v));
    let subs = (0..n).map(|v| poset.down_set(v).into_iter().filter(|&u| u != v).collect()).collect();
    let sups = (0..n).map(|v| (0..n).filter(|&u| u != v && poset.includes(v, u)).collect()).collect();
    let mut search = Search {
        poset,
        order,
        subs,
        sups,
        limit,
        sections: Vec::new(),
        stopped: false,
        nodes: 0,
        obstruction: None,
    };
    let domains: Vec<AtomSet> = poset.contexts().iter().map(|c| c.all_atoms()).collect();
    let mut chosen = vec![0; n];
    if n > 0 {
        search.run(0, &domains, &mut chosen);
    }
    let warning = (!poset.is_closed_under_intersection()).then(|| {
        "poset is not closed under intersection; the absence of an obstruction may be an artifact".to_string()
    });
    let mut sections = search.sections;
    sections.sort();
    let obstruction = if sections.is_empty() { search.obstruction } else { None };
    SearchReport {
        sections,
        exhausted: !search.stopped,
        nodes: search.nodes,
        obstruction,
        warning,
    }
}
