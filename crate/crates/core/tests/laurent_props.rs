use proptest::prelude::*;
use schober_core::laurent::rat;
use schober_core::{LaurentPoly, Monomial, Rational, TorusPoint};

const NV: usize = 2;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(a, b, s)| if s { rat(a, b) } else { rat(-a, b) })
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), coeff()), 0..5).prop_map(|ts| {
        LaurentPoly::from_terms(
            NV,
            ts.into_iter()
                .map(|((a, b), c)| (Monomial::from_exponents(vec![a, b]), c)),
        )
    })
}

fn point() -> impl Strategy<Value = TorusPoint> {
    (nonzero(), nonzero()).prop_map(|(a, b)| TorusPoint::new(vec![a, b]).unwrap())
}

fn unit() -> impl Strategy<Value = LaurentPoly> {
    ((-3i32..=3, -3i32..=3), nonzero())
        .prop_map(|((a, b), c)| LaurentPoly::monomial(NV, c, Monomial::from_exponents(vec![a, b])))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(NV), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn parse_print_round_trip(a in poly()) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), NV).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), p in point()) {
        prop_assert_eq!((&a + &b).evaluate(&p), a.evaluate(&p) + b.evaluate(&p));
        prop_assert_eq!((&a * &b).evaluate(&p), a.evaluate(&p) * b.evaluate(&p));
    }

    #[test]
    fn units_are_multiplicative(u in unit(), v in unit()) {
        let uv = &u * &v;
        prop_assert!(uv.is_unit());
        prop_assert_eq!(uv.unit_inverse().unwrap(), &u.unit_inverse().unwrap() * &v.unit_inverse().unwrap());
        prop_assert!((&u * &u.unit_inverse().unwrap()).is_one());
        prop_assert!(!(&u * &LaurentPoly::pants_section(NV)).is_unit());
    }

    #[test]
    fn exact_division_inverts_products(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }
}
