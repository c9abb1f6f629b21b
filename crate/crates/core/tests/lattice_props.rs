mod common;

use common::*;
use logcy_core::fibration::lattice_splitting;
use logcy_core::{lattice_membership, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(|rows| {
            IntMatrix::from_rows(
                rows.into_iter()
                    .map(|row| row.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_factors_the_input(a in matrix_strategy()) {
        let snf = smith_normal_form(&a);
        prop_assert!(snf.u.is_unimodular());
        prop_assert!(snf.v.is_unimodular());
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        // Rank agrees with rational elimination.
        let cols: Vec<_> = (0..a.cols()).map(|j| logcy_core::IntVector::new(a.column(j)).unwrap()).collect();
        prop_assert_eq!(snf.rank(), logcy_core::lattice::rank_of(&cols));
    }

    #[test]
    fn smith_form_is_deterministic(a in matrix_strategy()) {
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn membership_of_scaled_lattice_points(a in matrix_strategy(), xs in prop::collection::vec(-4i64..=4, 5), k in 1i64..=12) {
        let x: Vec<BigInt> = xs[..a.cols()].iter().map(|&v| v.into()).collect();
        let b: Vec<Q> = a.mul_vec(&x).into_iter().map(|y| Q::new(y, k.into())).collect();
        let m = lattice_membership(&a, &b, &BigInt::from(1000)).unwrap().expect("in the span");
        prop_assert!(BigInt::from(k).is_multiple_of(&m));
        let scaled: Vec<Q> = b.iter().map(|c| c * Q::from_integer(m.clone())).collect();
        prop_assert!(scaled.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn membership_rejects_points_off_the_span(k in 1i64..=5) {
        // Columns span the plane z = 0 only.
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3], &[0, 0]]);
        let b = vec![q(1, k), q(1, 1), q(1, 1)];
        prop_assert_eq!(lattice_membership(&a, &b, &BigInt::from(1000)).unwrap(), None);
        let c = vec![q(1, k), q(1, 1), q(0, 1)];
        let m = lattice_membership(&a, &c, &BigInt::from(1000)).unwrap().unwrap();
        // m/k must be even and m must be a multiple of 3.
        prop_assert_eq!(m, BigInt::from(2 * k).lcm(&BigInt::from(3)));
    }

    #[test]
    fn splitting_of_projections(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let base = bundle_bases()[seed as usize % 3].clone();
        let twists = random_twists(&mut rng, 1 + (seed as usize % 2), base.num_rays());
        let f = bundle_morphism(&base, twists.len(), &twists);
        let split = lattice_splitting(f.matrix()).unwrap();
        let r = f.matrix().rows();
        prop_assert_eq!(f.matrix().mul(&split.section), IntMatrix::identity(r));
        for k in &split.kernel {
            prop_assert!(f.matrix().apply(k).unwrap().is_zero());
        }
        prop_assert_eq!(split.kernel.len(), f.matrix().cols() - r);
    }
}
