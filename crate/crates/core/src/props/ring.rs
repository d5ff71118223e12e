use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fixtures::random_quandle;
use crate::quandle::FiniteQuandle;
use crate::ring::{enumerate_idempotents, is_idempotent, multiply, IdemScanConfig, RingElement, TorusDehn};
use crate::torus::CurveClass;

fn element(n: usize) -> impl Strategy<Value = RingElement<usize>> {
    prop::collection::vec((0..n, -4i64..=4), 0..5)
        .prop_map(|ts| RingElement::from_terms(ts.into_iter().map(|(x, c)| (x, BigInt::from(c)))))
}

fn simple(cap: i64) -> impl Strategy<Value = CurveClass> {
    (-cap..=cap, -cap..=cap).prop_map(CurveClass::from).prop_filter("simple", |c| c.is_zero() || c.is_primitive())
}

fn torus_element() -> impl Strategy<Value = RingElement<CurveClass>> {
    prop::collection::vec((simple(6), -4i64..=4), 0..4)
        .prop_map(|ts| RingElement::from_terms(ts.into_iter().map(|(x, c)| (x, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn finite_ring_is_bilinear(u in element(5), v in element(5), w in element(5)) {
        let q = FiniteQuandle::dihedral(5);
        let m = |a: &RingElement<usize>, b: &RingElement<usize>| multiply(&q, a, b).unwrap();
        prop_assert_eq!(m(&u, &v.add(&w)), m(&u, &v).add(&m(&u, &w)));
        prop_assert_eq!(m(&u.add(&v), &w), m(&u, &w).add(&m(&v, &w)));
        prop_assert_eq!(m(&u, &v).augmentation(), u.augmentation() * v.augmentation());
    }

    #[test]
    fn torus_ring_is_bilinear(u in torus_element(), v in torus_element(), w in torus_element()) {
        let m = |a: &RingElement<CurveClass>, b: &RingElement<CurveClass>| multiply(&TorusDehn, a, b).unwrap();
        prop_assert_eq!(m(&u, &v.add(&w)), m(&u, &v).add(&m(&u, &w)));
        prop_assert_eq!(m(&u, &v).augmentation(), u.augmentation() * v.augmentation());
    }

    #[test]
    fn basis_elements_are_idempotent(x in simple(50)) {
        prop_assert!(is_idempotent(&TorusDehn, &RingElement::basis(x)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn enumeration_matches_brute_force(seed in any::<u64>()) {
        let q = random_quandle(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let cfg = IdemScanConfig { max_length: 2, coeff_bound: 2, ..IdemScanConfig::default() };
        let found = enumerate_idempotents(&q, &cfg).unwrap();
        let mut brute = Vec::new();
        let n = q.size();
        let coeffs: Vec<i64> = (-2..=2).filter(|&c| c != 0).collect();
        for x in 0..n {
            for &a in &coeffs {
                brute.push(RingElement::from_terms([(x, BigInt::from(a))]));
                for y in x + 1..n {
                    for &b in &coeffs {
                        brute.push(RingElement::from_terms([(x, BigInt::from(a)), (y, BigInt::from(b))]));
                    }
                }
            }
        }
        let mut brute: Vec<_> = brute.into_iter().filter(|u| is_idempotent(&q, u).unwrap()).collect();
        brute.sort_by(|a, b| (a.length(), a.terms()).cmp(&(b.length(), b.terms())));
        prop_assert_eq!(found, brute);
    }
}

#[test]
fn dihedral_rings_are_not_associative() {
    // R3 is commutative (x∗y = −x−y) but not associative; R4 is neither.
    let e = |x: usize| RingElement::basis(x);
    let r3 = FiniteQuandle::dihedral(3);
    let m = |a: &RingElement<usize>, b: &RingElement<usize>| multiply(&r3, a, b).unwrap();
    assert_eq!(m(&e(0), &e(1)), m(&e(1), &e(0)));
    assert_ne!(m(&m(&e(0), &e(1)), &e(2)), m(&e(0), &m(&e(1), &e(2))));
    let r4 = FiniteQuandle::dihedral(4);
    assert_ne!(multiply(&r4, &e(0), &e(1)).unwrap(), multiply(&r4, &e(1), &e(0)).unwrap());
}
