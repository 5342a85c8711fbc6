mod common;

use std::collections::BTreeSet;

use common::*;
use qtopos::dasein::daseinise_subobject;
use qtopos::json::parse_ray_family;
use qtopos::truth::{classify, classify_truth, truth_object, truth_value, Classification};
use qtopos::{AtomSet, ClopenSubobject, Error, OmegaElement, Order, Projection, Sieve};
use rand::Rng;

fn members(s: &Sieve) -> BTreeSet<usize> {
    s.members().clone()
}

/// Sieve implication from its definition: `v ∈ (a ⇒ b)` iff every `u ≤ v` in `a` is in `b`.
fn brute_implies(order: &Order, base: usize, a: &Sieve, b: &Sieve) -> BTreeSet<usize> {
    order
        .down_set(base)
        .into_iter()
        .filter(|&v| order.down_set(v).into_iter().all(|u| !a.contains(u) || b.contains(u)))
        .collect()
}

#[test]
fn sieve_operations_match_definitions() {
    for size in 1..=3 {
        for order in Order::enumerate_all(size) {
            for base in 0..size {
                let all = Sieve::enumerate(&order, base);
                // every down-closed subset of ↓base appears exactly once
                let down = order.down_set(base);
                let closed = (0u32..1 << down.len())
                    .filter(|mask| {
                        down.iter().enumerate().all(|(i, &v)| {
                            mask >> i & 1 == 0
                                || down.iter().enumerate().all(|(j, &u)| !order.leq(u, v) || mask >> j & 1 == 1)
                        })
                    })
                    .count();
                assert_eq!(all.len(), closed);
                for a in &all {
                    for b in &all {
                        let meet: BTreeSet<usize> = members(a).intersection(&members(b)).copied().collect();
                        let join: BTreeSet<usize> = members(a).union(&members(b)).copied().collect();
                        assert_eq!(members(&a.meet(b).unwrap()), meet);
                        assert_eq!(members(&a.join(b).unwrap()), join);
                        assert_eq!(members(&a.implies(&order, b).unwrap()), brute_implies(&order, base, a, b));
                        assert_eq!(a.negation(&order), a.implies(&order, &Sieve::empty(base)).unwrap());
                    }
                    for sub in order.down_set(base) {
                        let pulled = a.pullback(&order, sub).unwrap();
                        let expected: BTreeSet<usize> = members(a).into_iter().filter(|&v| order.leq(v, sub)).collect();
                        assert_eq!(members(&pulled), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn non_sieves_and_mixed_bases_are_rejected() {
    let two = Order::chain(2);
    assert!(Sieve::new(&two, 1, [1].into()).is_err());
    assert!(Sieve::new(&two, 0, [1].into()).is_err());
    let a = Sieve::maximal(&two, 0);
    let b = Sieve::maximal(&two, 1);
    assert!(matches!(a.meet(&b), Err(Error::MixedBases { .. })));
    let bad = vec![Sieve::maximal(&two, 0), Sieve::empty(1)];
    assert!(OmegaElement::new(&two, bad).is_err());
}

#[test]
fn subobject_operations_match_pointwise_definitions() {
    let mut rng = rng(40);
    for _ in 0..100 {
        let n = rng.gen_range(3..=4);
        let p = overlapping_poset(&mut rng, n);
        let s = daseinise_subobject(&random_projection(&mut rng, n, 1), &p).unwrap();
        let t = daseinise_subobject(&random_projection(&mut rng, n, 2), &p).unwrap();
        let meet = s.meet(&t).unwrap();
        let join = s.join(&t).unwrap();
        let imp = s.implies(&p, &t).unwrap();
        for v in 0..p.len() {
            assert_eq!(meet.at(v), s.at(v).intersection(t.at(v)));
            assert_eq!(join.at(v), s.at(v).union(t.at(v)));
            // Kripke clause, checked atom by atom against restriction images.
            for atom in 0..p.context(v).len() {
                let expected = p.down_set(v).into_iter().all(|u| {
                    let image = p.restriction(u, v).unwrap()[atom];
                    !s.at(u).contains(image) || t.at(u).contains(image)
                });
                assert_eq!(imp.at(v).contains(atom), expected);
            }
        }
        assert!(imp.validate(&p).is_ok());
        // S ⇒ S is top, and top ⇒ T is T.
        assert_eq!(s.implies(&p, &s).unwrap(), ClopenSubobject::top(&p));
        assert_eq!(ClopenSubobject::top(&p).implies(&p, &t).unwrap(), t);
    }
}

#[test]
fn subobjects_over_other_posets_are_rejected() {
    let mut rng = rng(41);
    let a = overlapping_poset(&mut rng, 3);
    let s = ClopenSubobject::top(&a);
    let short = ClopenSubobject::from_components(vec![AtomSet::EMPTY]);
    assert!(matches!(s.meet(&short), Err(Error::PosetMismatch)));
    assert!(matches!(s.join(&short), Err(Error::PosetMismatch)));
    let b = poset(random_chain(&mut rng, 4, 2));
    assert_ne!(a.len(), b.len());
    assert!(matches!(s.implies(&b, &s), Err(Error::PosetMismatch)));
}

fn zx() -> qtopos::ContextPoset {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zx.json")).unwrap();
    poset(parse_ray_family(&text, EPS).unwrap())
}

#[test]
fn eigenstate_makes_its_projection_totally_true() {
    let p = zx();
    let t = truth_object(&[c(1.0), c(0.0)], &p).unwrap();
    let s = daseinise_subobject(&Projection::onto(&[c(1.0), c(0.0)]).unwrap(), &p).unwrap();
    let omega = truth_value(&s, &t, &p).unwrap();
    assert_eq!(classify(&omega), Classification::TotallyTrue);
    let report = classify_truth(&omega, &p);
    assert_eq!(serde_json::to_value(&report).unwrap()["classification"], "totally-true");
    for v in 0..p.len() {
        assert_eq!(report.sieves[p.key(v).as_str()], vec![p.key(v).to_string()]);
    }

    let bottom = truth_value(&ClopenSubobject::bottom(&p), &t, &p).unwrap();
    assert_eq!(classify(&bottom), Classification::TotallyFalse);
    assert_eq!(Classification::TotallyFalse.as_str(), "totally-false");
}

#[test]
fn truth_values_are_monotone_in_the_subobject() {
    let mut rng = rng(42);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let p = overlapping_poset(&mut rng, n);
        let t = truth_object(&random_unit(&mut rng, n), &p).unwrap();
        let s = daseinise_subobject(&random_projection(&mut rng, n, 1), &p).unwrap();
        let bigger = s.join(&daseinise_subobject(&random_projection(&mut rng, n, 1), &p).unwrap()).unwrap();
        let small = truth_value(&s, &t, &p).unwrap();
        let large = truth_value(&bigger, &t, &p).unwrap();
        for v in 0..p.len() {
            assert!(small.at(v).is_subset(large.at(v)));
            // V belongs to its own sieve iff S_V is in the truth object at V.
            assert_eq!(small.at(v).contains(v), t.contains(&p, v, s.at(v)).unwrap());
        }
    }
}

#[test]
fn truth_objects_need_unit_states() {
    let p = zx();
    assert!(truth_object(&[c(1.0), c(1.0)], &p).is_err());
    assert!(matches!(truth_object(&[c(1.0)], &p), Err(Error::DimensionMismatch { .. })));
    let t = truth_object(&[c(0.6), qtopos::C64::new(0.0, 0.8)], &p).unwrap();
    for v in 0..p.len() {
        assert!(t.contains(&p, v, p.context(v).all_atoms()).unwrap());
        assert!(!t.contains(&p, v, AtomSet::EMPTY).unwrap());
    }
}
