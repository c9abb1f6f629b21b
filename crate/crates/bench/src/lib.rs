//! Deterministic inputs for the benchmarks.

use logcy_core::rational::ratio;
use logcy_core::{
    build_bott_tower, proj_bundle, projective_space, BottStage, BottTowerSpec, Fan, FanMorphism,
    IntMatrix, PlanePair,
};
use num_bigint::BigInt;

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

/// A dense `rows x cols` integer matrix with entries in `[-9, 9]` from a
/// linear congruential sequence.
pub fn dense_matrix(rows: usize, cols: usize) -> IntMatrix {
    let mut state: i64 = 12345;
    let rows: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = (state * 1_103_515_245 + 12_345) % 2_147_483_648;
                    BigInt::from(state % 19 - 9)
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows).expect("rectangular")
}

/// Four concurrent lines and two general lines, all with coefficient 1/2.
pub fn six_lines() -> PlanePair {
    PlanePair::from_integer_lines(
        &[
            [1, 0, 0],
            [0, 1, 0],
            [1, -1, 0],
            [1, 1, 0],
            [0, 0, 1],
            [1, 2, 3],
        ],
        vec![ratio(1, 2); 6],
    )
    .expect("valid arrangement")
}

/// Nine lines with several triple points, coefficient 1/3 each.
pub fn nine_lines() -> PlanePair {
    let lines = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
        [1, 1, 1],
        [1, -1, 0],
        [0, 1, -1],
    ];
    PlanePair::from_integer_lines(&lines, vec![ratio(1, 3); 9]).expect("valid arrangement")
}

/// A five-stage tower of rank six with mixed fiber dimensions.
pub fn tower_spec() -> BottTowerSpec {
    BottTowerSpec {
        stages: vec![
            BottStage {
                dim: 1,
                twists: vec![],
            },
            BottStage {
                dim: 1,
                twists: vec![big(&[0, 2])],
            },
            BottStage {
                dim: 2,
                twists: vec![big(&[1, 0, -1, 0]), big(&[0, 1, 0, 2])],
            },
            BottStage {
                dim: 1,
                twists: vec![big(&[1, -1, 0, 0, 2, 0, 0])],
            },
            BottStage {
                dim: 1,
                twists: vec![big(&[0, 0, 1, 0, 0, 0, 1, -2, 0])],
            },
        ],
    }
}

pub fn tower_fan() -> Fan {
    build_bott_tower(&tower_spec())
        .expect("valid spec")
        .top()
        .clone()
}

/// `P(O + O(a) + O(b))` over the plane, projected to the base.
pub fn plane_bundle() -> FanMorphism {
    let base = projective_space(2).expect("rank 2");
    let total = proj_bundle(&base, 2, &[big(&[1, 0, 0]), big(&[0, -2, 0])]).expect("valid twists");
    let mut m = IntMatrix::zeros(2, 4);
    m.set(0, 0, BigInt::from(1));
    m.set(1, 1, BigInt::from(1));
    FanMorphism::new(total, base, m).expect("compatible")
}
