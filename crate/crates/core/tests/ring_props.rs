use metabelian::{parse_poly, BiPoly, Monomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..5, 0u32..5, -20i64..=20), 0..7).prop_map(|terms| {
        BiPoly::from_terms(
            terms
                .into_iter()
                .map(|(x, y, c)| (Monomial::new(x, y), BigInt::from(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_group(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &BiPoly::zero(), a.clone());
        prop_assert!((&a + &-&a).is_zero());
        prop_assert!((&a - &a.clone()).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &BiPoly::one(), a.clone());
        prop_assert!((&a * &BiPoly::zero()).is_zero());
    }

    #[test]
    fn distributive(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in -4i64..=4, y in -4i64..=4) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        prop_assert_eq!((&a + &b).eval(&x, &y), a.eval(&x, &y) + b.eval(&x, &y));
        prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
    }

    #[test]
    fn format_parse_round_trip(a in poly()) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn canonical_form_has_no_zero_terms(a in poly(), b in poly()) {
        let s = &a - &b;
        prop_assert!(s.terms().all(|(_, c)| *c != BigInt::from(0)));
    }

    #[test]
    fn swapping_variables_is_an_involution(a in poly(), b in poly()) {
        prop_assert_eq!(a.swap_variables().swap_variables(), a.clone());
        prop_assert_eq!((&a * &b).swap_variables(), &a.swap_variables() * &b.swap_variables());
    }

    #[test]
    fn degree_of_product(a in poly(), b in poly()) {
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => prop_assert_eq!((&a * &b).degree(), Some(da + db)),
            _ => prop_assert!((&a * &b).is_zero()),
        }
    }
}
