use genus_core::localization::{ahbr_value, cpn_fixed_points, equivariant_genus};
use genus_core::rigidity::{ar_check, classify, functional_residual, Verdict};
use genus_core::{CharacteristicSeries, GaussianRational as G, GtCase, Power, Scalar, SeriesSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = G> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| G::ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = G> {
    rational().prop_filter("nonzero", |g| !g.is_zero())
}

fn gaussian() -> impl Strategy<Value = G> {
    (rational(), rational()).prop_map(|(a, b)| G::new(a.re, b.re))
}

fn characteristic(order: usize) -> impl Strategy<Value = CharacteristicSeries<G>> {
    prop::collection::vec(rational(), order).prop_map(|tail| {
        let mut cs = vec![G::one()];
        cs.extend(tail);
        CharacteristicSeries::new(Power::new(cs)).unwrap()
    })
}

/// Pairwise distinct weights, `n + 1` of them, in `[-12, 12]`.
fn weights(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-12i64..=12, n + 1).prop_map(|s| s.into_iter().collect::<Vec<_>>()).prop_shuffle()
}

fn series_spec() -> impl Strategy<Value = SeriesSpec> {
    prop_oneof![
        rational().prop_map(|a| SeriesSpec::Euler { a }),
        Just(SeriesSpec::Todd),
        gaussian().prop_map(|y| SeriesSpec::Ty { y }),
        (gaussian(), gaussian()).prop_map(|(x, y)| SeriesSpec::Txy { x, y }),
        (gaussian(), gaussian()).prop_map(|(a, b)| SeriesSpec::Dab { a, b }),
        (gaussian(), gaussian()).prop_map(|(a, b)| SeriesSpec::Gab { a, b }),
    ]
}

fn factorial(n: usize) -> G {
    (1..=n as i64).fold(G::one(), |acc, k| acc * G::from(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn first_genus_is_twice_first_coefficient(h in characteristic(8)) {
        prop_assert_eq!(h.h_n(1).unwrap(), h.r(1).clone() * G::from(2));
        prop_assert!(h.h_n(0).unwrap().is_one());
    }

    #[test]
    fn d_family_is_txy(a in gaussian(), b in gaussian()) {
        let d = SeriesSpec::Dab { a: a.clone(), b: b.clone() }.construct(12).unwrap();
        let t = SeriesSpec::Txy { x: &a + &b, y: &a - &b }.construct(12).unwrap();
        prop_assert_eq!(d.series(), t.series());
    }

    #[test]
    fn g_family_is_d_at_imaginary_argument(a in gaussian(), b in gaussian()) {
        let g = SeriesSpec::Gab { a: a.clone(), b: b.clone() }.construct(12).unwrap();
        let d = SeriesSpec::Dab { a: G::i() * &a, b }.construct(12).unwrap();
        prop_assert_eq!(g.series(), d.series());
    }

    #[test]
    fn g_family_matches_cotangent(a in nonzero_rational()) {
        // G_{a,0}(t) · sin(at) = a t cos(at), with sin and cos from their Taylor series.
        let order = 12;
        let (mut sin, mut cos) = (vec![G::zero(); order + 2], vec![G::zero(); order + 2]);
        for k in 0..=order + 1 {
            let sign = if (k / 2) % 2 == 0 { G::one() } else { -G::one() };
            let term = sign * a.powi(k as i64) / factorial(k);
            if k % 2 == 1 { sin[k] = term } else { cos[k] = term }
        }
        let h = SeriesSpec::Gab { a: a.clone(), b: G::zero() }.construct(order).unwrap();
        let sin_over_t = Power::new(sin[1..=order + 1].to_vec());
        let lhs = h.series() * &sin_over_t;
        let rhs = Power::new(cos[..=order].to_vec()).scale(&a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_minus_linear_term_is_even(a in gaussian(), b in gaussian()) {
        let d = SeriesSpec::Dab { a, b: b.clone() }.construct(14).unwrap();
        let linear = Power::with_order(vec![G::zero(), b], 14);
        prop_assert_eq!((d.series() - &linear).first_odd_term(), None);
    }

    #[test]
    fn closed_forms_match_expansion(spec in series_spec()) {
        let h = spec.construct(8).unwrap();
        let values = h.h_values(8).unwrap();
        for (n, v) in values.iter().enumerate() {
            prop_assert_eq!(v, &spec.closed_form_cpn(n).unwrap(), "{} h_{}", spec, n);
        }
    }

    #[test]
    fn construction_is_stable_under_order_extension(spec in series_spec(), extra in 1usize..6) {
        let short = spec.construct(8).unwrap();
        let long = spec.construct(8 + extra).unwrap();
        prop_assert_eq!(long.series().truncate(8), short.series().clone());
    }

    #[test]
    fn localization_is_translation_invariant(h in characteristic(10), w in weights(2), shift in -5i64..=5) {
        let a = equivariant_genus(&h, &cpn_fixed_points(&w).unwrap(), 8).unwrap();
        let moved: Vec<i64> = w.iter().map(|x| x + shift).collect();
        let b = equivariant_genus(&h, &cpn_fixed_points(&moved).unwrap(), 8).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn localization_scales_with_weights(h in characteristic(10), w in weights(2), k in prop::sample::select(vec![-3i64, -1, 2, 3])) {
        let a = equivariant_genus(&h, &cpn_fixed_points(&w).unwrap(), 8).unwrap();
        let scaled: Vec<i64> = w.iter().map(|x| x * k).collect();
        let b = equivariant_genus(&h, &cpn_fixed_points(&scaled).unwrap(), 8).unwrap();
        prop_assert_eq!(a.scale_argument(&G::from(k)).unwrap(), b);
    }

    #[test]
    fn localization_constant_term_is_genus(h in characteristic(10), n in 1usize..=3, seed in any::<u64>()) {
        let w: Vec<i64> = (0..=n as i64).map(|k| k * k + (seed % 7) as i64 * k).collect();
        let s = equivariant_genus(&h, &cpn_fixed_points(&w).unwrap(), (10 - n) as i64).unwrap();
        prop_assert!(s.valuation() >= 0);
        prop_assert_eq!(s.coeff(0).unwrap(), h.h_n(n).unwrap());
    }

    #[test]
    fn txy_sum_is_signed_formula(x in rational(), y in rational(), w in weights(3)) {
        let h = SeriesSpec::Txy { x: x.clone(), y: y.clone() }.construct(12).unwrap();
        let fps = cpn_fixed_points(&w).unwrap();
        let s = equivariant_genus(&h, &fps, 8).unwrap();
        prop_assert!(s.is_constant());
        prop_assert_eq!(s.coeff(0).unwrap(), ahbr_value(&x, &y, &fps));
    }

    #[test]
    fn classify_recovers_parameters(a in nonzero_rational(), b in rational()) {
        let h = SeriesSpec::Dab { a: a.clone(), b: b.clone() }.construct(16).unwrap();
        let r = classify(&h).unwrap();
        prop_assert!(r.is_gt);
        prop_assert_eq!(r.case, GtCase::D);
        prop_assert_eq!(&r.d, &(&a * &a));
        prop_assert_eq!(&r.r1, &b);
        let root = r.sqrt_d.unwrap();
        prop_assert!(root == a || root == -a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// GT ⟺ functional equation ⟺ sampled rigidity, on GT and generic series.
    #[test]
    fn equivalence_chain(a in nonzero_rational(), b in rational(), generic in characteristic(14), seed in any::<u64>()) {
        let gt = SeriesSpec::Dab { a, b }.construct(14).unwrap();
        for (h, expect_gt) in [(gt, true), (generic, false)] {
            let report = classify(&h).unwrap();
            let residual = functional_residual(&h, 12).unwrap();
            let ar = ar_check(&h, 2, 12, 10, seed).unwrap();
            prop_assert_eq!(report.is_gt, expect_gt);
            prop_assert_eq!(residual.is_zero(), expect_gt);
            prop_assert_eq!(ar.verdict == Verdict::Pass, expect_gt);
        }
    }
}
