use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fixtures::{alternating4, conjugacy_classes, random_quandle};
use crate::group::FiniteGroup;
use crate::perm::DEFAULT_ELEMENT_CAP;
use crate::quandle::{
    components, conj_quandle, coset_decomposition, dual_op, inner_group, verify_quandle, FiniteQuandle,
};

fn quandle_from(seed: u64, max: usize) -> FiniteQuandle {
    random_quandle(&mut ChaCha8Rng::seed_from_u64(seed), max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_and_unions_are_quandles(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (quandle_from(a, 5), quandle_from(b, 5));
        prop_assert!(verify_quandle(&p.product(&q).table()).unwrap().valid);
        prop_assert!(verify_quandle(&p.disjoint_union(&q).table()).unwrap().valid);
    }

    #[test]
    fn dual_inverts_right_translations(seed in any::<u64>()) {
        let q = quandle_from(seed, 16);
        for x in 0..q.size() {
            for y in 0..q.size() {
                prop_assert_eq!(dual_op(&q, q.op(x, y), y), x);
                prop_assert_eq!(q.op(dual_op(&q, x, y), y), x);
            }
        }
    }

    #[test]
    fn inner_automorphisms_preserve_the_operation(seed in any::<u64>()) {
        let q = quandle_from(seed, 8);
        let inn = inner_group(&q, DEFAULT_ELEMENT_CAP).unwrap();
        for g in inn.elements() {
            for x in 0..q.size() {
                for y in 0..q.size() {
                    prop_assert_eq!(g.apply(q.op(x, y)), q.op(g.apply(x), g.apply(y)));
                }
            }
        }
    }

    #[test]
    fn coset_decomposition_round_trips(seed in any::<u64>()) {
        let q = quandle_from(seed, 8);
        let d = coset_decomposition(&q, DEFAULT_ELEMENT_CAP).unwrap();
        let c = &d.coset.quandle;
        let mut image = d.iso.clone();
        image.sort_unstable();
        prop_assert_eq!(image, (0..q.size()).collect::<Vec<_>>());
        for a in 0..c.size() {
            for b in 0..c.size() {
                prop_assert_eq!(d.iso[c.op(a, b)], q.op(d.iso[a], d.iso[b]));
            }
        }
        prop_assert!(verify_quandle(&c.table()).unwrap().valid);
    }
}

#[test]
fn conjugacy_class_quandles_match_their_orbits() {
    let (s3, _) = FiniteGroup::symmetric(3);
    let (s4, _) = FiniteGroup::symmetric(4);
    for g in [s3, s4, alternating4()] {
        for class in conjugacy_classes(&g) {
            let (q, _) = conj_quandle(&g, Some(&class)).unwrap();
            assert!(verify_quandle(&q.table()).unwrap().valid);
            // Connected iff the inner group acts transitively.
            let inn = inner_group(&q, DEFAULT_ELEMENT_CAP).unwrap();
            let orbit: std::collections::BTreeSet<usize> = inn.elements().iter().map(|p| p.apply(0)).collect();
            assert_eq!(components(&q).len() == 1, orbit.len() == q.size());
        }
    }
}
