//! The propositional language PL: syntax, classical two-valued semantics,
//! Heyting-valued semantics in sieve algebras, and the classical
//! representation of propositions over a finite state space.
//!
//! Surface syntax maps to the usual symbols as `pN ↔ π_N`, `~ ↔ ∼`,
//! `& ↔ ∧`, `| ↔ ∨`, `-> ↔ ⊃`.

mod classical;
mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use classical::{classical_representation, classical_truth, ClassicalModel};
pub use parser::{parse, ParseError, ParseErrorKind, MAX_NESTING};

use crate::error::{Error, Result};
use crate::order::Order;
use crate::sieve::Sieve;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sentence {
    Atom(u32),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
}

impl Sentence {
    pub fn not(a: Sentence) -> Self {
        Sentence::Not(Box::new(a))
    }

    pub fn and(a: Sentence, b: Sentence) -> Self {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Sentence, b: Sentence) -> Self {
        Sentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Sentence, b: Sentence) -> Self {
        Sentence::Implies(Box::new(a), Box::new(b))
    }

    /// Sentence letters occurring in `self`.
    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Sentence::Atom(i) => {
                out.insert(*i);
            }
            Sentence::Not(a) => a.collect_atoms(out),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Sentence::Atom(_) => 0,
            Sentence::Not(a) => 1 + a.depth(),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Fully parenthesised form with `π ∼ ∧ ∨ ⊃`, e.g. `((π₁∨π₂)⊃(π₂∧∼π₂))`.
    pub fn symbolic(&self) -> String {
        match self {
            Sentence::Atom(i) => {
                let digits: String = i.to_string().chars().map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap()).collect();
                format!("π{digits}")
            }
            Sentence::Not(a) => format!("∼{}", a.symbolic()),
            Sentence::And(a, b) => format!("({}∧{})", a.symbolic(), b.symbolic()),
            Sentence::Or(a, b) => format!("({}∨{})", a.symbolic(), b.symbolic()),
            Sentence::Implies(a, b) => format!("({}⊃{})", a.symbolic(), b.symbolic()),
        }
    }

    /// Two-valued evaluation under an assignment of the sentence letters.
    pub fn eval_classical(&self, valuation: &BTreeMap<u32, bool>) -> Result<bool> {
        Ok(match self {
            Sentence::Atom(i) => *valuation.get(i).ok_or(Error::UnboundAtom(*i))?,
            Sentence::Not(a) => !a.eval_classical(valuation)?,
            Sentence::And(a, b) => a.eval_classical(valuation)? & b.eval_classical(valuation)?,
            Sentence::Or(a, b) => a.eval_classical(valuation)? | b.eval_classical(valuation)?,
            Sentence::Implies(a, b) => !a.eval_classical(valuation)? | b.eval_classical(valuation)?,
        })
    }

    /// True under every assignment of its letters.
    pub fn is_tautology(&self) -> bool {
        let atoms: Vec<u32> = self.atoms().into_iter().collect();
        assert!(atoms.len() < 32, "too many sentence letters for a truth table");
        (0u64..1 << atoms.len()).all(|mask| {
            let v = atoms.iter().enumerate().map(|(k, &a)| (a, mask >> k & 1 == 1)).collect();
            self.eval_classical(&v).expect("all letters bound")
        })
    }

    /// Evaluation in the Heyting algebra of sieves on one base element of `order`.
    pub fn eval_heyting(&self, valuation: &BTreeMap<u32, Sieve>, order: &Order) -> Result<Sieve> {
        let mut bases = valuation.values().map(Sieve::base);
        if let Some(first) = bases.next() {
            if let Some(other) = bases.find(|&b| b != first) {
                return Err(Error::MixedBases { left: first.to_string(), right: other.to_string() });
            }
        }
        self.heyting(valuation, order)
    }

    fn heyting(&self, valuation: &BTreeMap<u32, Sieve>, order: &Order) -> Result<Sieve> {
        match self {
            Sentence::Atom(i) => valuation.get(i).cloned().ok_or(Error::UnboundAtom(*i)),
            Sentence::Not(a) => Ok(a.heyting(valuation, order)?.negation(order)),
            Sentence::And(a, b) => a.heyting(valuation, order)?.meet(&b.heyting(valuation, order)?),
            Sentence::Or(a, b) => a.heyting(valuation, order)?.join(&b.heyting(valuation, order)?),
            Sentence::Implies(a, b) => a.heyting(valuation, order)?.implies(order, &b.heyting(valuation, order)?),
        }
    }
}

/// Fully parenthesised ASCII form; `parse(&s.to_string()) == s`.
impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Atom(i) => write!(f, "p{i}"),
            Sentence::Not(a) => write!(f, "~{a}"),
            Sentence::And(a, b) => write!(f, "({a} & {b})"),
            Sentence::Or(a, b) => write!(f, "({a} | {b})"),
            Sentence::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

impl std::str::FromStr for Sentence {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse(s)
    }
}

/// Instance of axiom form `n` (1 to 12) of classical propositional logic with
/// the given sentences for `a`, `b`, `c`. Forms 1 to 11 are the intuitionistic
/// axioms; form 12 is the excluded middle `a ∨ ∼a`.
pub fn axiom_form(n: usize, a: &Sentence, b: &Sentence, c: &Sentence) -> Option<Sentence> {
    use Sentence as S;
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    let imp = S::implies;
    Some(match n {
        1 => imp(a.clone(), S::and(a.clone(), a)),
        2 => imp(S::and(a.clone(), b.clone()), S::and(b, a)),
        3 => imp(imp(a.clone(), b.clone()), imp(S::and(a, c.clone()), S::and(b, c))),
        4 => imp(S::and(imp(a.clone(), b.clone()), imp(b, c.clone())), imp(a, c)),
        5 => imp(b.clone(), imp(a, b)),
        6 => imp(S::and(a.clone(), imp(a, b.clone())), b),
        7 => imp(a.clone(), S::or(a, b)),
        8 => imp(S::or(a.clone(), b.clone()), S::or(b, a)),
        9 => imp(S::and(imp(a.clone(), c.clone()), imp(b.clone(), c.clone())), imp(S::or(a, b), c)),
        10 => imp(S::not(a.clone()), imp(a, b)),
        11 => imp(S::and(imp(a.clone(), b.clone()), imp(a.clone(), S::not(b))), S::not(a)),
        12 => S::or(a.clone(), S::not(a)),
        _ => return None,
    })
}
