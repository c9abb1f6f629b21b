mod common;

use common::*;
use logcy_core::fibration::{cbf_pushforward, fiber_type, is_locally_trivial, split_fan};
use logcy_core::{
    build_bott_tower, product, recognize_bott_tower, weighted_projective, ToricPair, Verdict,
};
use num_traits::One;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bundles_are_locally_trivial_with_projective_fibers(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = rng(seed);
        let bases = bundle_bases();
        let base = &bases[seed as usize % bases.len()];
        let twists = random_twists(&mut rng, dim, base.num_rays());
        let f = bundle_morphism(base, dim, &twists);
        let split = split_fan(&f).unwrap();
        prop_assert_eq!(is_locally_trivial(&f, &split), Verdict::Yes);
        let fiber = fiber_type(&f, &split).unwrap();
        prop_assert_eq!(fiber.fan.rank(), dim);
        prop_assert!(fiber.weights.unwrap().iter().all(|w| w.is_one()));
    }

    #[test]
    fn pushforward_along_a_bundle_reads_off_base_coefficients(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let bases = bundle_bases();
        let base = &bases[seed as usize % bases.len()];
        let twists = random_twists(&mut rng, 1, base.num_rays());
        let f = bundle_morphism(base, 1, &twists);
        let coeffs: Vec<Q> = (0..f.source().num_rays()).map(|_| unit_rational(&mut rng)).collect();
        let pair = ToricPair::new(f.source().clone(), coeffs.clone()).unwrap();
        let out = cbf_pushforward(&pair, &f).unwrap();
        prop_assert!(out.moduli_trivial);
        // Lifted base rays come first and map isomorphically onto the base rays.
        prop_assert_eq!(out.pair.coeffs(), &coeffs[..base.num_rays()]);
    }

    #[test]
    fn products_of_towers_are_towers(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = build_bott_tower(&random_bott_spec(&mut rng, 3)).unwrap();
        let b = build_bott_tower(&random_bott_spec(&mut rng, 2)).unwrap();
        let fan = product(a.top(), b.top());
        let found = recognize_bott_tower(&fan).expect("a product of towers is a tower");
        prop_assert_eq!(found.stage_dims.iter().sum::<usize>(), fan.rank());
        prop_assert!(found.top().same_fan(&fan));
        for (i, m) in found.morphisms.iter().enumerate() {
            prop_assert!(m.source().same_fan(&found.fans[i + 1]));
            prop_assert!(m.target().same_fan(&found.fans[i]));
        }
    }
}

#[test]
fn singular_fans_are_not_towers() {
    let fan = weighted_projective(&big(&[1, 1, 2])).unwrap();
    assert!(recognize_bott_tower(&fan).is_none());
}
