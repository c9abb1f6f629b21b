//! Generalized Bott towers: iterated projectivizations of sums of line
//! bundles, starting from a point.
//!
//! [`build_bott_tower`] stacks `proj_bundle` constructions. Recognition runs
//! the other way: it looks for a set `S` of rays spanning a fiber `P^k`,
//! divides the lattice by the saturated span of `S`, checks that the
//! quotient is a locally trivial projective-space fibration over a complete
//! fan and recurses on that base.
//!
//! Candidate fibers are tried in descending colexicographic order of their
//! ray indices (subsets containing later rays first), with backtracking.
//! For fans produced by [`build_bott_tower`] this peels off the stage built
//! last first, so recognized stage dimensions come out in build order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::fan::standard::{proj_bundle, projective_space};
use crate::fan::{Cone, Fan, FanError};
use crate::fibration::{fiber_type, is_locally_trivial, split_fan, FanMorphism, FibrationError};
use crate::lattice::{
    k_subsets, primitive_vector, rank_of, smith_normal_form, IntMatrix, IntVector,
};
use crate::pair::{
    classes_equal, Equivalence, NumericalComponent, NumericalPair, PairError, Verdict,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BottError {
    #[error("a tower needs at least one stage")]
    NoStages,
    #[error("stage {stage} has fiber dimension zero")]
    ZeroDimension { stage: usize },
    #[error("the first stage is built over a point and takes no twists")]
    FirstStageTwists,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("stage {stage} fails the tower invariants: {source}")]
    Stage {
        stage: usize,
        source: FibrationError,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

impl BottError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            BottError::NoStages => "NoStages",
            BottError::ZeroDimension { .. } => "ZeroDimension",
            BottError::FirstStageTwists => "FirstStageTwists",
            BottError::InvalidParameter(_) => "InvalidParameter",
            BottError::Invariant(_) => "Invariant",
            BottError::Fan(e) => e.code(),
            BottError::Pair(e) => e.code(),
            BottError::Stage { source, .. } => source.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottStage {
    pub dim: usize,
    /// One vector per nontrivial summand, indexed by the rays of the base.
    pub twists: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottTowerSpec {
    pub stages: Vec<BottStage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub stage_dims: Vec<usize>,
    /// `fans[i]` is the total space after stage `i`; the last one is the top.
    pub fans: Vec<Fan>,
    /// `morphisms[i]: fans[i + 1] -> fans[i]`.
    pub morphisms: Vec<FanMorphism>,
}

impl TowerReport {
    pub fn top(&self) -> &Fan {
        self.fans.last().expect("towers have a stage")
    }
}

fn projection(total: usize, base: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(base, total);
    for i in 0..base {
        m.set(i, i, BigInt::one());
    }
    m
}

/// Split, locally trivial, fiber a projective space.
fn check_stage(f: &FanMorphism) -> Result<(), FibrationError> {
    let split = split_fan(f)?;
    if is_locally_trivial(f, &split) != Verdict::Yes {
        return Err(FibrationError::NotLocallyTrivial);
    }
    let fiber = fiber_type(f, &split)?;
    if !fiber.weights.is_some_and(|w| w.iter().all(One::is_one)) {
        return Err(FibrationError::FiberNotProjectiveSpace);
    }
    Ok(())
}

pub fn build_bott_tower(spec: &BottTowerSpec) -> Result<TowerReport, BottError> {
    let first = spec.stages.first().ok_or(BottError::NoStages)?;
    if !first.twists.is_empty() {
        return Err(BottError::FirstStageTwists);
    }
    if let Some(stage) = spec.stages.iter().position(|s| s.dim == 0) {
        return Err(BottError::ZeroDimension { stage });
    }
    let mut fans = vec![projective_space(first.dim)?];
    let mut morphisms = Vec::new();
    for (i, stage) in spec.stages.iter().enumerate().skip(1) {
        let base = fans.last().expect("nonempty");
        let total = proj_bundle(base, stage.dim, &stage.twists)?;
        let f = FanMorphism::new(
            total.clone(),
            base.clone(),
            projection(total.rank(), base.rank()),
        )
        .map_err(|source| BottError::Stage { stage: i, source })?;
        check_stage(&f).map_err(|source| BottError::Stage { stage: i, source })?;
        fans.push(total);
        morphisms.push(f);
    }
    Ok(TowerReport {
        stage_dims: spec.stages.iter().map(|s| s.dim).collect(),
        fans,
        morphisms,
    })
}

/// Descending colexicographic order: compare index sets by their largest
/// elements first, larger first; a proper prefix comes after its extensions.
fn candidate_fibers(num_rays: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (2..=rank).flat_map(|k| k_subsets(num_rays, k)).collect();
    for s in all.iter_mut() {
        s.reverse();
    }
    all.sort_by(|a, b| b.cmp(a));
    for s in all.iter_mut() {
        s.reverse();
    }
    all
}

/// The quotient of `fan` by the saturated span of the rays in `fiber`,
/// together with the quotient map, if it is a fan.
fn quotient(fan: &Fan, fiber: &[usize]) -> Option<(Fan, IntMatrix)> {
    let n = fan.rank();
    let gens: Vec<IntVector> = fiber.iter().map(|&i| fan.ray(i).clone()).collect();
    let k = fiber.len() - 1;
    let snf = smith_normal_form(&IntMatrix::from_columns(n, &gens));
    let rows: Vec<Vec<BigInt>> = (k..n).map(|i| snf.u.row(i).to_vec()).collect();
    let map = IntMatrix::from_rows(rows).ok()?;

    let mut rays: Vec<IntVector> = Vec::new();
    let mut index_of = vec![None; fan.num_rays()];
    for (i, u) in fan.rays().iter().enumerate() {
        let image = map.apply(u).ok()?;
        if image.is_zero() {
            continue;
        }
        let p = primitive_vector(&image).ok()?;
        let j = match rays.iter().position(|r| *r == p) {
            Some(j) => j,
            None => {
                rays.push(p);
                rays.len() - 1
            }
        };
        index_of[i] = Some(j);
    }
    let mut cones: Vec<Cone> = Vec::new();
    for c in fan.max_cones() {
        let image = Cone::new(c.rays().iter().filter_map(|&r| index_of[r]));
        if image.dim() == n - k && !cones.contains(&image) {
            cones.push(image);
        }
    }
    let target = Fan::new(
        n - k,
        rays,
        cones.into_iter().map(|c| c.rays().to_vec()).collect(),
    )
    .ok()?;
    Some((target, map))
}

fn recognize(fan: &Fan) -> Option<TowerReport> {
    if !fan.is_complete() || !fan.is_smooth() {
        return None;
    }
    let n = fan.rank();
    if fan.num_rays() == n + 1 {
        return Some(TowerReport {
            stage_dims: vec![n],
            fans: vec![fan.clone()],
            morphisms: Vec::new(),
        });
    }
    for fiber in candidate_fibers(fan.num_rays(), n) {
        let sum = fiber
            .iter()
            .fold(IntVector::zero(n), |acc, &i| &acc + fan.ray(i));
        if !sum.is_zero() {
            continue;
        }
        let gens: Vec<IntVector> = fiber.iter().map(|&i| fan.ray(i).clone()).collect();
        if rank_of(&gens) + 1 != fiber.len() {
            continue;
        }
        let Some((base, map)) = quotient(fan, &fiber) else {
            continue;
        };
        let Ok(f) = FanMorphism::new(fan.clone(), base.clone(), map) else {
            continue;
        };
        let Ok(split) = split_fan(&f) else { continue };
        if split.fiber_rays != fiber || check_stage(&f).is_err() {
            continue;
        }
        if let Some(mut report) = recognize(&base) {
            report.stage_dims.push(fiber.len() - 1);
            report.fans.push(fan.clone());
            report.morphisms.push(f);
            return Some(report);
        }
    }
    None
}

/// A tower structure on `fan`, or `None` when none is found. Singular or
/// incomplete fans are never towers.
pub fn recognize_bott_tower(fan: &Fan) -> Option<TowerReport> {
    recognize(fan)
}

fn indicator(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[i] = BigInt::one();
    v
}

/// `P(O + O(d))` over `P^{n-1}` with `B = S + (1/m)(sum of m sections
/// linearly equivalent to T) + (1/m)(pullbacks of mn general hyperplanes)`.
///
/// Ray layout: `0..n` lifted base rays, `n` is `S`, `n + 1` is `T`. The
/// hyperplane class is that of ray 0.
///
/// Log canonicity of the general configuration is not decided numerically;
/// the pair report carries `lc = unknown`.
pub fn build_index_example(
    d: &BigInt,
    n: usize,
    m: &BigInt,
) -> Result<(Fan, NumericalPair), BottError> {
    if !d.is_positive() {
        return Err(BottError::InvalidParameter(format!(
            "d must be at least 1, got {d}"
        )));
    }
    if n < 2 {
        return Err(BottError::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if *m < BigInt::from(3) {
        return Err(BottError::InvalidParameter(format!(
            "m must be at least 3, got {m}"
        )));
    }
    let base = projective_space(n - 1)?;
    let mut twist = vec![BigInt::zero(); n];
    twist[n - 1] = d.clone();
    let fan = proj_bundle(&base, 1, &[twist])?;
    let len = fan.num_rays();
    let (s, t, h) = (indicator(len, n), indicator(len, n + 1), indicator(len, 0));

    let q =
        |v: &[BigInt]| -> Vec<Rational> { v.iter().cloned().map(Rational::from_integer).collect() };
    let s_plus_dh: Vec<BigInt> = s.iter().zip(&h).map(|(a, b)| a + d * b).collect();
    if !classes_equal(&fan, &q(&t), &q(&s_plus_dh), Equivalence::Integral)? {
        return Err(BottError::Invariant(
            "T is not linearly equivalent to S + dH".into(),
        ));
    }
    let inv_m = Rational::new(BigInt::one(), m.clone());
    let components = vec![
        NumericalComponent {
            class: s,
            coeff: Rational::one(),
            count: BigInt::one(),
        },
        NumericalComponent {
            class: t,
            coeff: inv_m.clone(),
            count: m.clone(),
        },
        NumericalComponent {
            class: h,
            coeff: inv_m,
            count: m * BigInt::from(n),
        },
    ];
    let pair = NumericalPair::new(fan.clone(), components)?;
    Ok((fan, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::{product, weighted_projective};

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    fn stage(dim: usize, twists: &[&[i64]]) -> BottStage {
        BottStage {
            dim,
            twists: twists.iter().map(|t| big(t)).collect(),
        }
    }

    #[test]
    fn builds() {
        let p1 = projective_space(1).unwrap();
        let t = build_bott_tower(&BottTowerSpec {
            stages: vec![stage(1, &[]), stage(1, &[&[0, 0]])],
        })
        .unwrap();
        assert!(t.top().same_fan(&product(&p1, &p1)));
        let t = build_bott_tower(&BottTowerSpec {
            stages: vec![stage(2, &[])],
        })
        .unwrap();
        assert!(t.top().same_fan(&projective_space(2).unwrap()));
        assert_eq!(
            build_bott_tower(&BottTowerSpec {
                stages: vec![stage(1, &[&[1]])]
            }),
            Err(BottError::FirstStageTwists)
        );
    }

    #[test]
    fn recognizes() {
        let p2 = projective_space(2).unwrap();
        assert_eq!(recognize_bott_tower(&p2).unwrap().stage_dims, vec![2]);
        for d in 0..4 {
            let t = build_bott_tower(&BottTowerSpec {
                stages: vec![stage(1, &[]), stage(1, &[&[0, d]])],
            })
            .unwrap();
            assert_eq!(
                recognize_bott_tower(t.top()).unwrap().stage_dims,
                vec![1, 1]
            );
        }
        let w = weighted_projective(&big(&[1, 1, 2])).unwrap();
        assert!(recognize_bott_tower(&w).is_none());
    }

    #[test]
    fn stage_order_is_preserved() {
        for spec in [
            vec![stage(1, &[]), stage(2, &[&[1, 0], &[0, -2]])],
            vec![stage(2, &[]), stage(1, &[&[0, 1, -1]])],
            vec![
                stage(1, &[]),
                stage(1, &[&[2, 0]]),
                stage(2, &[&[0, 1, 0, 1], &[0, 0, 1, 0]]),
            ],
        ] {
            let dims: Vec<usize> = spec.iter().map(|s| s.dim).collect();
            let t = build_bott_tower(&BottTowerSpec { stages: spec }).unwrap();
            assert_eq!(recognize_bott_tower(t.top()).unwrap().stage_dims, dims);
        }
    }

    #[test]
    fn index_examples() {
        for (d, n, m) in [(1, 2, 3), (2, 3, 4)] {
            let (_, pair) = build_index_example(&d.into(), n, &m.into()).unwrap();
            let report = pair.report().unwrap();
            assert!(report.complexity.is_zero());
            assert_eq!(report.index, Some(m.into()));
        }
        assert!(matches!(
            build_index_example(&1.into(), 2, &1.into()),
            Err(BottError::InvalidParameter(_))
        ));
    }
}
