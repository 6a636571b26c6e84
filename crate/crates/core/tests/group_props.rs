use metabelian::families::{predicted_annihilator, predicted_derived_type};
use metabelian::groups::{annihilator_contains, psi, GroupModel, GroupParams, MaxClassParams, NonMaxParams};
use metabelian::{BiPoly, Monomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn max_class() -> impl Strategy<Value = GroupParams> {
    (prop::sample::select(vec![2u64, 3, 5]), 3u32..=9)
        .prop_flat_map(|(p, m)| {
            let kmax = if m <= 4 {
                0
            } else {
                (m as usize - 4).min(p as usize - 2)
            };
            let r = 0..p as i64;
            (
                Just(p),
                Just(m),
                r.clone(),
                r.clone(),
                prop::collection::vec(r, 0..=kmax),
            )
        })
        .prop_map(|(p, m, w, z, mut a)| {
            if let Some(last) = a.last_mut() {
                if *last == 0 {
                    *last = 1;
                }
            }
            GroupParams::Max(MaxClassParams::new(p, m, w, z, a))
        })
}

fn non_max() -> impl Strategy<Value = GroupParams> {
    let u = || -1i64..=1;
    (5u32..=11)
        .prop_flat_map(move |n| {
            let m_lo = (n + 3).div_ceil(2).max(4);
            (Just(n), m_lo..n, u(), u(), u(), u(), u())
        })
        .prop_map(|(n, m, a, b, g, d, r)| {
            let r = if m < 5 { 0 } else { r };
            GroupParams::NonMax(NonMaxParams::new(m, n, a, b, g, d, r))
        })
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..5, 0u32..5, -9i64..=9), 0..5)
        .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(x, y, c)| (Monomial::new(x, y), c))))
}

fn any_group() -> impl Strategy<Value = GroupParams> {
    prop_oneof![max_class(), non_max()]
}

/// Model for accepted parameters; rejected non-maximal presentations are
/// skipped, maximal-class ones must always build.
fn build(params: &GroupParams) -> Option<GroupModel> {
    match (params, GroupModel::build(params)) {
        (_, Ok(g)) => Some(g),
        (GroupParams::NonMax(_), Err(_)) => None,
        (GroupParams::Max(_), Err(e)) => panic!("{params}: {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn module_actions_commute(params in any_group()) {
        let Some(g) = build(&params) else { return Ok(()) };
        let comm = g.mx.mul(&g.my).sub(&g.my.mul(&g.mx));
        for c in comm.columns() {
            prop_assert!(g.is_zero(&c));
        }
        for r in g.relations.canonical_rows() {
            prop_assert!(g.is_zero(&g.mx.mul_vec(&r)));
            prop_assert!(g.is_zero(&g.my.mul_vec(&r)));
        }
    }

    #[test]
    fn derived_subgroup_has_the_right_order(params in any_group()) {
        let Some(g) = build(&params) else { return Ok(()) };
        prop_assert_eq!(g.derived_order(), BigInt::from(params.p()).pow(params.n() - 2));
    }

    #[test]
    fn psi_is_a_module_map(params in any_group(), f in small_poly(), h in small_poly()) {
        let Some(g) = build(&params) else { return Ok(()) };
        let sum: Vec<BigInt> = psi(&g, &f).iter().zip(psi(&g, &h)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(psi(&g, &(&f + &h)), g.reduce(&sum));
        for (var, op) in [(BiPoly::x(), &g.mx), (BiPoly::y(), &g.my)] {
            let v = psi(&g, &f);
            let shifted: Vec<BigInt> = op.mul_vec(&v).into_iter().zip(&v).map(|(a, b)| a - b).collect();
            prop_assert_eq!(psi(&g, &(&var * &f)), g.reduce(&shifted));
        }
    }

    #[test]
    fn annihilator_is_an_ideal(params in any_group(), f in small_poly(), h in small_poly()) {
        let Some(g) = build(&params) else { return Ok(()) };
        let order = BiPoly::constant(g.derived_order());
        prop_assert!(annihilator_contains(&g, &order));
        let fo = &f * &order;
        prop_assert!(annihilator_contains(&g, &(&fo + &(&h * &order))));
        prop_assert!(annihilator_contains(&g, &BiPoly::zero()));
        prop_assert!(!annihilator_contains(&g, &BiPoly::one()));
    }

    #[test]
    fn predictions_hold_where_made(params in any_group()) {
        let Some(g) = build(&params) else { return Ok(()) };
        if let Ok(ty) = predicted_derived_type(&params) {
            prop_assert_eq!(g.derived_type(), &ty);
        }
        if let Ok(ideal) = predicted_annihilator(&params) {
            for gen in ideal.generators() {
                prop_assert!(annihilator_contains(&g, &gen), "{} kills {}", params, gen);
            }
        }
    }
}
