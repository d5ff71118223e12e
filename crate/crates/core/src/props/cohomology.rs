use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    coboundary, cohomology, coordinates, decode, delta_matrix_dense, is_degenerate, tuple_count, Cochain, Kind,
};
use crate::extensions::random_cochain;
use crate::fixtures::random_quandle;
use crate::linalg::rank_bareiss;

const KINDS: [Kind; 3] = [Kind::Rack, Kind::Sub, Kind::Quotient];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), n in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quandle(&mut rng, 4);
        let f = random_cochain(&mut rng, q.size(), n).unwrap();
        prop_assert!(coboundary(&q, &coboundary(&q, &f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_coboundary_vanishes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quandle(&mut rng, 6);
        let f = random_cochain(&mut rng, q.size(), 0).unwrap();
        prop_assert!(coboundary(&q, &f).unwrap().is_zero());
    }

    #[test]
    fn rank_nullity_against_bareiss(seed in any::<u64>(), n in 0usize..3, k in 0usize..3) {
        let q = random_quandle(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let kind = KINDS[k];
        let h = cohomology(&q, n, kind).unwrap();
        let rank = rank_bareiss(&delta_matrix_dense(&q, n, kind).unwrap());
        prop_assert_eq!(h.dim_cocycles + rank, h.dim_cochains);
        if n > 0 {
            prop_assert_eq!(h.dim_coboundaries, rank_bareiss(&delta_matrix_dense(&q, n - 1, kind).unwrap()));
        }
        // A cocycle of the complex only has to vanish on its own coordinates.
        let rows = coordinates(q.size(), n + 1, kind).unwrap();
        for z in &h.cocycle_basis {
            let dz = coboundary(&q, z).unwrap();
            prop_assert!(rows.iter().all(|&i| dz.values()[i].is_zero()));
        }
    }

    #[test]
    fn nondegenerate_cochains_form_a_subcomplex(seed in any::<u64>(), n in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quandle(&mut rng, 4);
        let f = random_cochain(&mut rng, q.size(), n).unwrap();
        let values = (0..tuple_count(q.size(), n).unwrap())
            .map(|i| if is_degenerate(&decode(i, q.size(), n)) { BigRational::zero() } else { f.values()[i].clone() })
            .collect();
        let f = Cochain::new(q.size(), n, values).unwrap();
        let df = coboundary(&q, &f).unwrap();
        for i in 0..tuple_count(q.size(), n + 1).unwrap() {
            if is_degenerate(&decode(i, q.size(), n + 1)) {
                prop_assert!(df.values()[i].is_zero());
            }
        }
    }
}

#[test]
fn trivial_quandle_has_zero_differential() {
    let q = crate::quandle::FiniteQuandle::trivial(3);
    for n in 0..4 {
        assert_eq!(cohomology(&q, n, Kind::Rack).unwrap().betti, 3usize.pow(n as u32));
    }
}
