mod common;

use common::*;
use proptest::prelude::*;
use qtopos::hermitian::{eigendecompose, operator_from_family, spectral_family, spectral_projection, CMatrix, Interval};
use qtopos::{BorelSet, HermitianOperator, Projection};
use rand::Rng;

fn decomposition_invariants(a: &HermitianOperator) {
    let n = a.dim();
    let d = eigendecompose(a, EPS);
    let tol = 1e-8 * a.max_norm().max(1.0);
    let mut sum = CMatrix::zeros(n, n);
    for (i, p) in d.projections().iter().enumerate() {
        assert!(max_abs(&(p.matrix() * p.matrix() - p.matrix())) < 1e-8, "idempotent");
        assert!(max_abs(&(p.matrix().adjoint() - p.matrix())) < 1e-8, "self-adjoint");
        for q in &d.projections()[i + 1..] {
            assert!(max_abs(&(p.matrix() * q.matrix())) < 1e-8, "orthogonal");
        }
        sum += p.matrix();
    }
    assert!(max_abs(&(sum - CMatrix::identity(n, n))) < 1e-8, "complete");
    assert!(max_abs(&(d.reconstruct() - a.matrix())) < tol, "reconstructs");
    assert!(d.eigenvalues().windows(2).all(|w| w[0] < w[1]), "distinct, increasing");

    // Eigenvalues with multiplicity agree with nalgebra's solver.
    let mut ours: Vec<f64> = d
        .eigenvalues()
        .iter()
        .zip(d.projections())
        .flat_map(|(&l, p)| std::iter::repeat_n(l, p.rank()))
        .collect();
    ours.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let theirs = oracle_eigenvalues(a.matrix());
    assert_eq!(ours.len(), theirs.len());
    for (x, y) in ours.iter().zip(&theirs) {
        assert!((x - y).abs() < 1e-7, "{x} vs {y}");
    }
}

#[test]
fn random_decompositions_dims_2_to_6() {
    let mut rng = rng(1);
    for k in 0..300 {
        let n = 2 + k % 5;
        decomposition_invariants(&random_hermitian(&mut rng, n));
    }
}

#[test]
fn degenerate_spectra_merge() {
    let mut rng = rng(2);
    for _ in 0..50 {
        let a = hermitian_with_spectrum(&mut rng, &[1.0, 1.0, -2.0, 1.0]);
        let d = eigendecompose(&a, EPS);
        assert_eq!(d.len(), 2);
        assert_eq!(d.projections()[1].rank(), 3);
    }
}

#[test]
fn disjoint_borel_sets_add() {
    let mut rng = rng(3);
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let a = random_hermitian(&mut rng, n);
        let cut: f64 = rng.gen_range(-2.5..2.5);
        let left = BorelSet::new(vec![Interval { lo: f64::NEG_INFINITY, lo_open: true, hi: cut, hi_open: true }]).unwrap();
        let right = BorelSet::new(vec![Interval { lo: cut, lo_open: false, hi: f64::INFINITY, hi_open: true }]).unwrap();
        let union = left.disjoint_union(&right).unwrap();
        let sum = spectral_projection(&a, &left, EPS).matrix() + spectral_projection(&a, &right, EPS).matrix();
        assert!(max_abs(&(sum - spectral_projection(&a, &union, EPS).matrix())) < 1e-9);
        assert!(spectral_projection(&a, &union, EPS).approx_eq(&Projection::identity(n), 1e-9));
    }
}

#[test]
fn families_are_monotone_and_invert() {
    let mut rng = rng(4);
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let a = random_hermitian(&mut rng, n);
        let f = spectral_family(&a, EPS);
        for (i, p) in f.projections().iter().enumerate() {
            for q in &f.projections()[i..] {
                assert!(proj_leq(p.matrix(), q.matrix(), 1e-9));
            }
        }
        assert!(f.projections().last().unwrap().approx_eq(&Projection::identity(n), 1e-9));
        assert!(operator_from_family(&f).approx_eq(&a, 1e-8 * a.max_norm().max(1.0)));
        let below = f.thresholds()[0] - 1.0;
        assert!(f.at(below).is_zero(1e-12));
    }
}

fn interval_strategy() -> impl Strategy<Value = Interval> {
    (-50i32..50, 0i32..20, any::<bool>(), any::<bool>()).prop_map(|(lo, w, a, b)| {
        let (lo, hi) = (lo as f64 / 4.0, (lo + w + 1) as f64 / 4.0);
        Interval { lo, lo_open: a, hi, hi_open: b }
    })
}

proptest! {
    #[test]
    fn borel_display_round_trips(intervals in proptest::collection::vec(interval_strategy(), 0..4)) {
        if let Ok(set) = BorelSet::new(intervals) {
            let text = set.to_string();
            prop_assert_eq!(BorelSet::parse(&text).unwrap(), set.clone());
            let json = serde_json::to_string(&set).unwrap();
            prop_assert_eq!(BorelSet::from_json(&json).unwrap(), set);
        }
    }

    #[test]
    fn borel_parse_never_panics(text in "\\PC{0,40}") {
        let _ = BorelSet::parse(&text);
    }

    #[test]
    fn hermitian_constructor_rejects_asymmetry(x in 0.01f64..5.0) {
        let m = CMatrix::from_fn(2, 2, |i, j| qtopos::C64::new(if i < j { x } else { 0.0 }, 0.0));
        prop_assert!(HermitianOperator::new(m, EPS).is_err());
    }
}
