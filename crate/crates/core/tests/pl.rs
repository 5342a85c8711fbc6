use std::collections::BTreeMap;

use proptest::prelude::*;
use qtopos::hermitian::BorelSet;
use qtopos::pl::{classical_representation, classical_truth, parse, ClassicalModel, ParseErrorKind, Sentence};
use qtopos::json::PosetJson;
use qtopos::Sieve;

fn sentence(depth: u32) -> impl Strategy<Value = Sentence> {
    let leaf = (0u32..40).prop_map(Sentence::Atom);
    leaf.prop_recursive(depth, 256, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Sentence::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Sentence::implies(a, b)),
        ]
    })
}

const TOKENS: &[&str] = &["p0", "p1", "p12", "~", "&", "|", "->", "(", ")", "∼", "∧", "∨", "⊃", "π₃", " ", "-", ">", "p"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printers_round_trip(s in sentence(8)) {
        prop_assert!(s.depth() <= 9);
        prop_assert_eq!(parse(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(parse(&s.symbolic()).unwrap(), s.clone());
        prop_assert_eq!(s.to_string().parse::<Sentence>().unwrap(), s);
    }

    #[test]
    fn parser_never_panics_on_text(text in "\\PC{0,60}") {
        let _ = parse(&text);
    }

    #[test]
    fn parser_never_panics_on_token_soup(picks in proptest::collection::vec(0..TOKENS.len(), 0..40)) {
        let text: String = picks.iter().map(|&i| TOKENS[i]).collect();
        if let Err(e) = parse(&text) {
            prop_assert!(e.position <= text.chars().count());
        }
    }
}

#[test]
fn precedence_and_associativity() {
    let p = |i| Sentence::Atom(i);
    assert_eq!(parse("p0 -> p1 -> p2").unwrap(), Sentence::implies(p(0), Sentence::implies(p(1), p(2))));
    assert_eq!(parse("p0 | p1 | p2").unwrap(), Sentence::or(Sentence::or(p(0), p(1)), p(2)));
    assert_eq!(parse("p0 | p1 & p2").unwrap(), Sentence::or(p(0), Sentence::and(p(1), p(2))));
    assert_eq!(parse("~p0 & p1").unwrap(), Sentence::and(Sentence::not(p(0)), p(1)));
    assert_eq!(parse("π₀ ⊃ ∼π₁").unwrap(), Sentence::implies(p(0), Sentence::not(p(1))));
}

#[test]
fn error_positions() {
    let e = parse("p0 & | p1").unwrap_err();
    assert_eq!(e.position, 5);
    assert!(matches!(e.kind, ParseErrorKind::UnexpectedToken(_)));
    assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Empty);
    assert_eq!(parse("(p0").unwrap_err().kind, ParseErrorKind::UnbalancedParen);
}

#[test]
fn heyting_valuation_on_a_diamond() {
    let poset: PosetJson = serde_json::from_str(&std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/diamond-poset.json")).unwrap()).unwrap();
    let (order, names) = poset.to_order().unwrap();
    let top = names["top"];
    let left = Sieve::new(&order, top, [names["bottom"], names["left"]].into()).unwrap();
    let bottom = Sieve::new(&order, top, [names["bottom"]].into()).unwrap();
    let v: BTreeMap<u32, Sieve> = [(0, left.clone()), (1, bottom)].into();

    // every element lies above `bottom`, which is in the sieve, so the
    // pseudo-complement is empty
    let neg = parse("~p0").unwrap().eval_heyting(&v, &order).unwrap();
    assert!(neg.is_empty());
    let lem = parse("p0 | ~p0").unwrap().eval_heyting(&v, &order).unwrap();
    assert_eq!(lem, left);
    assert!(!lem.is_maximal());
    assert!(parse("~~p0 -> p0").unwrap().eval_heyting(&v, &order).unwrap().members().len() < 4);
    assert!(parse("p1 -> p0").unwrap().eval_heyting(&v, &order).unwrap().is_maximal());
    assert!(parse("p2").unwrap().eval_heyting(&v, &order).is_err());
}

#[test]
fn classical_propositions() {
    let model = ClassicalModel::new([("s1".to_string(), 1.0), ("s2".to_string(), 2.0), ("s3".to_string(), 3.5)]);
    let window = BorelSet::parse("[1.5,4)").unwrap();
    let rep = classical_representation(&model, &window);
    assert_eq!(rep.into_iter().collect::<Vec<_>>(), vec!["s2", "s3"]);
    assert!(!classical_truth(&model, &window, "s1").unwrap());
    assert!(classical_truth(&model, &window, "s3").unwrap());
    assert!(classical_truth(&model, &window, "s9").is_err());
    // complement of Δ gives the complementary set of states
    let rest = BorelSet::parse("(-inf,1.5) ∪ [4,inf)").unwrap();
    assert_eq!(classical_representation(&model, &rest).into_iter().collect::<Vec<_>>(), vec!["s1"]);
}
