use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use crate::torus::{
    braid_check, dehn_twist, intersection, op_c1, op_c1_inverse, op_d1, op_w1, op_w1_inverse, phi, phi_inverse,
    reduced_twist_words_distinct, twist_matrix, CurveClass, MappingClassT, WeightedMulticurve,
};

fn class(cap: i64) -> impl Strategy<Value = CurveClass> {
    (-cap..=cap, -cap..=cap).prop_map(CurveClass::from)
}

fn primitive(cap: i64) -> impl Strategy<Value = CurveClass> {
    class(cap).prop_filter("primitive", |c| c.is_primitive())
}

fn weighted(cap: i64) -> impl Strategy<Value = WeightedMulticurve> {
    (-cap..=cap, prop::option::of((-cap..=cap).prop_filter("nonzero", |w| *w != 0)), primitive(cap))
        .prop_map(|(m0, w, base)| WeightedMulticurve::new(m0, w.map(|w| (BigInt::from(w), base))).unwrap())
}

fn mapping_class() -> impl Strategy<Value = MappingClassT> {
    prop::collection::vec((primitive(5), prop::bool::ANY), 0..5).prop_map(|word| {
        word.iter().fold(MappingClassT::identity(), |m, (g, inv)| {
            let t = twist_matrix(g).unwrap();
            m.mul(&if *inv { t.inverse() } else { t })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn d1_axioms(x in primitive(100), y in primitive(100), z in primitive(100)) {
        let op = |a: &CurveClass, b: &CurveClass| op_d1(a, b).unwrap();
        prop_assert_eq!(op(&x, &x), x.clone());
        prop_assert_eq!(op_c1_inverse(&op(&x, &y), &y), x.clone());
        prop_assert_eq!(op(&op(&x, &y), &z), op(&op(&x, &z), &op(&y, &z)));
    }

    #[test]
    fn c1_axioms(x in class(100), y in class(100), z in class(100)) {
        prop_assert_eq!(op_c1(&x, &x), x.clone());
        prop_assert_eq!(op_c1_inverse(&op_c1(&x, &y), &y), x.clone());
        prop_assert_eq!(op_c1(&op_c1_inverse(&x, &y), &y), x.clone());
        prop_assert_eq!(op_c1(&op_c1(&x, &y), &z), op_c1(&op_c1(&x, &z), &op_c1(&y, &z)));
    }

    #[test]
    fn w1_axioms(x in weighted(100), y in weighted(100), z in weighted(100)) {
        prop_assert_eq!(op_w1(&x, &x), x.clone());
        prop_assert_eq!(op_w1_inverse(&op_w1(&x, &y), &y), x.clone());
        prop_assert_eq!(op_w1(&op_w1(&x, &y), &z), op_w1(&op_w1(&x, &z), &op_w1(&y, &z)));
    }

    #[test]
    fn twists_are_equivariant(m in mapping_class(), a in primitive(20)) {
        let lhs = twist_matrix(&m.apply(&a)).unwrap();
        let rhs = m.mul(&twist_matrix(&a).unwrap()).mul(&m.inverse());
        prop_assert!(lhs.eq_mod_sign(&rhs));
    }

    #[test]
    fn phi_is_an_isomorphism(a in class(1_000_000), b in class(1_000_000)) {
        prop_assert_eq!(phi_inverse(&phi(&a)).unwrap(), a.clone());
        prop_assert_eq!(phi(&op_c1(&b, &a)), op_w1(&phi(&b), &phi(&a)));
    }

    #[test]
    fn twisting_squares_intersection(a in primitive(50), g in class(50), k in -3i64..=3) {
        // i(T_γ^k(α), α) = |k|·g·i(α, γ')² for γ = g·γ'.
        let expected = match g.split() {
            None => BigInt::zero(),
            Some((m, prim)) => {
                let i = intersection(&a, &prim);
                BigInt::from(k.abs()) * m * &i * &i
            }
        };
        prop_assert_eq!(intersection(&dehn_twist(&g, k, &a), &a), expected);
    }

    #[test]
    fn twists_preserve_divisibility(g in class(50), v in class(50), k in -3i64..=3) {
        prop_assert_eq!(dehn_twist(&g, k, &v).gcd(), v.gcd());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn braid_relation_and_free_words(a in primitive(30), b in primitive(30)) {
        let i = intersection(&a, &b);
        if i == BigInt::from(1) {
            prop_assert!(braid_check(&a, &b).unwrap());
        } else if i >= BigInt::from(2) {
            prop_assert!(reduced_twist_words_distinct(&a, &b, 6).unwrap());
        }
    }
}
