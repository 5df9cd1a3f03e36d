use arboreal::arith::{parse_factored, rat, Poly, RatFun};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| Poly::from_ints(&c))
}

/// Products of linear factors with roots inside and outside the fast-path
/// range, and an irreducible quadratic.
fn factor_product() -> impl Strategy<Value = Poly> {
    prop::collection::vec(prop_oneof![(-12i64..=30).prop_map(Poly::linear_root), Just(Poly::from_ints(&[1, 0, 1]))], 0..4)
        .prop_map(|fs| fs.iter().fold(Poly::one(), |acc, f| &acc * f))
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), factor_product(), -3i64..=3).prop_map(|(n, d, c)| {
        let c = if c == 0 { 1 } else { c };
        RatFun::new(n, d.scale(&rat(c, 1))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalization_is_canonical(a in ratfun(), g in factor_product(), k in 1i64..5) {
        let scaled = RatFun::new(&a.num().scale(&rat(k, 1)) * &g, &a.den().scale(&rat(k, 1)) * &g).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(RatFun::new(a.num().clone(), a.den().clone()).unwrap(), a);
    }

    #[test]
    fn reduced_forms_are_coprime(a in ratfun()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(Poly::gcd(a.num(), a.den()).degree(), Some(0));
    }

    #[test]
    fn field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_forms_parse_back(a in ratfun()) {
        prop_assert_eq!(a.to_string().parse::<RatFun>().unwrap(), a.clone());
        prop_assert_eq!(parse_factored(&a.display_factored()).unwrap(), a);
    }
}
