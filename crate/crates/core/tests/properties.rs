use adhm_core::linalg::{int, Matrix, Rational, SpanInsert};
use adhm_core::monad::{build_monad, check_complex};
use adhm_core::poly::{groebner, normal_form, satisfies_buchberger_criterion, MonomialOrder, Poly};
use adhm_core::sample::{monomial_ideal, point_ideal_generators, random_invertible, random_points, random_stable_datum, random_staircase};
use adhm_core::variety::{generators_in_ideal, variety_residuals};
use adhm_core::{AdhmDatum, IncrementalSpan, VarietyConstraint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_vec(r, c, v.into_iter().map(int).collect()).unwrap()
        })
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix_strategy(12)) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Rational::from_integer(0.into())));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inserting_twice_is_dependent(m in matrix_strategy(8)) {
        let mut span = IncrementalSpan::new(m.rows());
        for j in 0..m.cols() {
            span.insert(&m.column(j)).unwrap();
        }
        prop_assert_eq!(span.rank(), m.rank());
        for j in 0..m.cols() {
            prop_assert!(!span.insert(&m.column(j)).unwrap().was_new());
        }
        for v in span.basis().to_vec() {
            match span.insert(&v).unwrap() {
                SpanInsert::Dependent(_) => {}
                SpanInsert::New => prop_assert!(false, "basis vector reported new"),
            }
        }
    }

    #[test]
    fn monomial_ideals_round_trip(seed in any::<u64>(), n in 2usize..=3, c in 1usize..=6) {
        let o = MonomialOrder::grevlex();
        let j = monomial_ideal(&random_staircase(n, c, &mut rng(seed)), n, &o).unwrap();
        let x = AdhmDatum::ideal_to_datum(&j).unwrap();
        prop_assert!(x.is_commuting() && x.is_stable().unwrap());
        let back = x.datum_to_ideal(&o).unwrap();
        prop_assert_eq!(back.reduced_gb(), j.reduced_gb());
    }

    #[test]
    fn point_ideals_round_trip_under_every_order(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=5) {
        let mut r = rng(seed);
        let pts = random_points(k, n, &mut r);
        for o in [MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::graded_lex()] {
            let gens = point_ideal_generators(&pts, n, &o, &mut r).unwrap();
            let j = groebner(&gens, &o).unwrap();
            prop_assert!(satisfies_buchberger_criterion(j.reduced_gb().unwrap(), &o));
            prop_assert_eq!(j.colength(), Some(k));
            let x = AdhmDatum::ideal_to_datum(&j).unwrap();
            let back = x.datum_to_ideal(&o).unwrap();
            prop_assert_eq!(back.reduced_gb(), j.reduced_gb());
            for g in &gens {
                prop_assert!(normal_form(g, &j).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gauge_invariance(seed in any::<u64>(), n in 2usize..=3, c in 1usize..=5) {
        let mut r = rng(seed);
        let x = random_stable_datum(n, c, &mut r).unwrap();
        let g = random_invertible(c, &mut r);
        let y = x.act(&g).unwrap();
        let o = MonomialOrder::grevlex();
        let (jx, jy) = (x.datum_to_ideal(&o).unwrap(), y.datum_to_ideal(&o).unwrap());
        prop_assert_eq!(jx.reduced_gb(), jy.reduced_gb());
        let w = AdhmDatum::are_equivalent(&x, &y, &o).unwrap().expect("gauge-equivalent data");
        prop_assert!(w.verify(&x, &y));
    }

    #[test]
    fn stable_data_give_complexes(seed in any::<u64>(), n in 2usize..=4, c in 1usize..=3) {
        let x = random_stable_datum(n, c, &mut rng(seed)).unwrap();
        let m = build_monad(&x).unwrap();
        prop_assert!(check_complex(&m).is_complex());
        prop_assert_eq!(m.shape.euler_characteristic(), 1);
    }

    #[test]
    fn membership_characterizations_agree(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let x = AdhmDatum::from_points(&random_points(k, 2, &mut r), 2).unwrap();
        let f = &Poly::var(2, 0) * &Poly::var(2, 1);
        let y = VarietyConstraint::new(2, vec![f]).unwrap();
        let by_residual = variety_residuals(&x, &y).unwrap().iter().all(Matrix::is_zero);
        let j = x.datum_to_ideal(&MonomialOrder::grevlex()).unwrap();
        prop_assert_eq!(by_residual, generators_in_ideal(&j, &y).unwrap());
    }
}
