use metabelian::families::{family_generators, nearly_homocyclic, IdealFamily};
use metabelian::quotient::{build_quotient, default_cap, ideal_equal, QuotientModel};
use metabelian::{BiPoly, Monomial};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = i64> {
    -1i64..=1
}

/// `(mu, nu)` with `mu >= nu >= 3`.
fn shape() -> impl Strategy<Value = (u32, u32)> {
    (3u32..=7).prop_flat_map(|mu| (Just(mu), 3u32..=mu))
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -9i64..=9), 0..5)
        .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(x, y, c)| (Monomial::new(x, y), c))))
}

fn s_member() -> impl Strategy<Value = IdealFamily> {
    (shape(), unit(), unit(), unit()).prop_map(|((mu, nu), b, d, r)| IdealFamily::s(mu, nu, b, d, r))
}

fn model(f: &IdealFamily) -> QuotientModel {
    QuotientModel::new(&family_generators(f).unwrap()).unwrap()
}

fn same(a: &IdealFamily, b: &IdealFamily) -> bool {
    let ga = family_generators(a).unwrap();
    let gb = family_generators(b).unwrap();
    ideal_equal(&ga, &gb, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generators_lie_in_their_ideal(f in s_member()) {
        let q = model(&f);
        for g in family_generators(&f).unwrap() {
            prop_assert!(q.contains(&g));
        }
    }

    #[test]
    fn ideal_is_closed_under_the_ring(f in s_member(), a in small_poly(), b in small_poly()) {
        let q = model(&f);
        let gens = family_generators(&f).unwrap();
        let comb = &(&a * &gens[0]) + &(&b * &gens[gens.len() - 1]);
        prop_assert!(q.contains(&comb));
        prop_assert!(q.contains(&(&comb * &BiPoly::x())));
    }

    #[test]
    fn actions_commute_on_the_quotient(f in s_member()) {
        let q = model(&f);
        let comm = q.mul_x().mul(q.mul_y()).sub(&q.mul_y().mul(q.mul_x()));
        for c in comm.columns() {
            prop_assert!(q.relations().contains(&c));
        }
        for r in q.relations().canonical_rows() {
            prop_assert!(q.relations().contains(&q.mul_x().mul_vec(&r)));
            prop_assert!(q.relations().contains(&q.mul_y().mul_vec(&r)));
        }
    }

    #[test]
    fn residues_are_canonical(f in s_member(), a in small_poly(), b in small_poly()) {
        let q = model(&f);
        let ra = q.canonical_residue(&a);
        prop_assert_eq!(q.canonical_residue(&ra), ra.clone());
        prop_assert!(q.contains(&(&a - &ra)));
        prop_assert_eq!(ra == q.canonical_residue(&b), q.contains(&(&a - &b)));
    }

    #[test]
    fn raising_the_degree_cap_changes_nothing(f in s_member()) {
        let gens = family_generators(&f).unwrap();
        let q = build_quotient(&gens, default_cap(&gens)).unwrap();
        let wider = build_quotient(&gens, default_cap(&gens) + 3).unwrap();
        prop_assert_eq!(q.abelian_type(), wider.abelian_type());
    }

    #[test]
    fn basis_generates_the_quotient(f in s_member()) {
        let q = model(&f);
        let basis = q.basis();
        let mut span = q.relations().clone();
        for m in basis.monomials() {
            span.insert(q.reduce(&BiPoly::monomial(m, 1)));
        }
        prop_assert_eq!(span.index(), Some(BigInt::one()));
        let prod: BigInt = basis.orders().iter().product();
        let order = q.order().unwrap();
        prop_assert!(prod >= order);
        prop_assert_eq!(basis.direct, prod == order);
    }

    #[test]
    fn specializations_of_s((mu, nu) in shape(), b in unit(), d in unit(), r in unit()) {
        let gen = |f: &IdealFamily| family_generators(f).unwrap();
        prop_assert_eq!(gen(&IdealFamily::s(mu, nu, b, 0, r)), gen(&IdealFamily::t(mu, nu, b, r)));
        prop_assert_eq!(gen(&IdealFamily::s(mu, nu, 0, d, r)), gen(&IdealFamily::v(mu, nu, d, r)));
        prop_assert_eq!(gen(&IdealFamily::s(mu, nu, 0, 0, r)), gen(&IdealFamily::u(mu, nu, r)));
        prop_assert_eq!(gen(&IdealFamily::s(mu, nu, b, d, 0)), gen(&IdealFamily::r(mu, nu)));
    }

    #[test]
    fn nu_two_variants(mu in 2u32..=8, b in unit(), r in unit()) {
        prop_assert!(same(&IdealFamily::s(mu, 2, b, 0, r), &IdealFamily::z(mu, b, r)));
        prop_assert!(same(&IdealFamily::u(mu, 2, r), &IdealFamily::zprime(mu, r)));
        prop_assert!(same(&IdealFamily::xfam(mu), &IdealFamily::r(mu, 2)));
    }

    #[test]
    fn nearly_homocyclic_order_and_rank(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), mu in 0u32..=30) {
        let ty = nearly_homocyclic(p, mu).unwrap();
        prop_assert_eq!(ty.order(), Some(BigInt::from(p).pow(mu)));
        prop_assert_eq!(ty.rank(), (mu as usize).min(p as usize - 1));
        if let (Some(hi), Some(lo)) = (ty.factors.first(), ty.factors.last()) {
            prop_assert!(hi == lo || *hi == lo * BigInt::from(p));
        }
    }

    #[test]
    fn max_class_quotients_are_nearly_homocyclic(
        p in prop::sample::select(vec![2u64, 3, 5]),
        mu in 1u32..=6,
        a in prop::collection::vec(0i64..5, 0..=6),
    ) {
        let a: Vec<i64> = a.into_iter().take(mu as usize).map(|x| x % p as i64).collect();
        let q = model(&IdealFamily::w(p, mu, a));
        prop_assert_eq!(q.abelian_type(), &nearly_homocyclic(p, mu).unwrap());
        prop_assert!(q.contains(&BiPoly::constant(BigInt::from(p).pow(mu))));
    }

    #[test]
    fn unit_ideal_contains_everything(f in small_poly()) {
        let one = QuotientModel::new(&[BiPoly::one()]).unwrap();
        prop_assert!(one.contains(&f));
        prop_assert_eq!(one.order(), Some(BigInt::one()));
    }
}
