use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{coboundary, Kind};
use crate::extensions::{
    all_cocycles, build_extension, kappa, lemma_independent_coordinate, pullback, pullback_injective, random_cochain,
    FiniteAbelianGroup, QuandleCocycle2,
};
use crate::fixtures::random_quandle;
use crate::quandle::verify_quandle;

fn random_cocycle(seed: u64) -> QuandleCocycle2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_quandle(&mut rng, 3);
    let a = FiniteAbelianGroup::cyclic(rng.gen_range(2..=3));
    let all = all_cocycles(&q, &a, 1 << 16).unwrap();
    all[rng.gen_range(0..all.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn extensions_are_covering_quandles(seed in any::<u64>()) {
        let e = build_extension(&random_cocycle(seed)).unwrap();
        prop_assert!(verify_quandle(&e.quandle.table()).unwrap().valid);
        prop_assert!(e.is_covering());
        for u in 0..e.quandle.size() {
            for v in 0..e.quandle.size() {
                prop_assert_eq!(e.project(e.quandle.op(u, v)), e.base.op(e.project(u), e.project(v)));
            }
        }
    }

    #[test]
    fn averaging_is_a_contracting_chain_map(seed in any::<u64>(), n in 0usize..3) {
        let e = build_extension(&random_cocycle(seed)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let f = random_cochain(&mut rng, e.quandle.size(), n).unwrap();
        let g = random_cochain(&mut rng, e.quandle.size(), n).unwrap();
        let kf = kappa(&e, &f).unwrap();
        prop_assert_eq!(kappa(&e, &coboundary(&e.quandle, &f).unwrap()).unwrap(), coboundary(&e.base, &kf).unwrap());
        prop_assert!(kf.sup_norm() <= f.sup_norm());
        let sum = crate::cohomology::Cochain::new(
            f.order(),
            n,
            f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect(),
        )
        .unwrap();
        let ks = kappa(&e, &sum).unwrap();
        let kg = kappa(&e, &g).unwrap();
        for i in 0..ks.values().len() {
            prop_assert_eq!(&ks.values()[i], &(&kf.values()[i] + &kg.values()[i]));
        }
        let h = random_cochain(&mut rng, e.base.size(), n).unwrap();
        prop_assert_eq!(kappa(&e, &pullback(&e, &h).unwrap()).unwrap(), h);
    }

    #[test]
    fn pullback_is_injective_on_cohomology(seed in any::<u64>(), n in 1usize..3) {
        let e = build_extension(&random_cocycle(seed)).unwrap();
        for kind in [Kind::Rack, Kind::Sub, Kind::Quotient] {
            prop_assert!(pullback_injective(&e, n, kind).unwrap());
        }
    }

    #[test]
    fn averaging_ignores_unused_coordinates(seed in any::<u64>(), orders in prop::sample::select(vec![vec![2], vec![3], vec![2, 2]]), n in 1usize..5) {
        let a = FiniteAbelianGroup::new(orders).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(lemma_independent_coordinate(&a, n, 4, &mut rng).unwrap(), 0);
    }
}
