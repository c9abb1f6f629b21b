//! Simplicial fans: validation, smoothness, star subdivision and orbit
//! strata.
//!
//! Only simplicial fans are supported. A [`Fan`] stores its primitive ray
//! generators and its maximal cones, all of dimension equal to the lattice
//! rank, and carries precomputed completeness and smoothness flags.
//! Completeness is decided by the shared-facet test: every facet of every
//! maximal cone lies in exactly two maximal cones.

pub mod standard;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    rank_of, smith_normal_form, solve_in_span, IntMatrix, IntVector, LatticeError,
};
use crate::simplex::feasible_point;

pub use standard::{standard_fan, StandardFan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("fan rank must be positive")]
    ZeroRank,
    #[error("a fan needs at least one ray and one maximal cone")]
    EmptyFan,
    #[error("ray {ray} has {found} coordinates, expected {expected}")]
    RankMismatch {
        ray: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {ray} is the zero vector")]
    ZeroRay { ray: usize },
    #[error("ray {ray} = {vector} is not primitive")]
    NonPrimitiveRay { ray: usize, vector: IntVector },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} refers to missing ray {index}")]
    RayIndexOutOfRange { cone: usize, index: usize },
    #[error("cone {cone} has {found} rays, maximal cones need {expected}")]
    ConeDimension {
        cone: usize,
        expected: usize,
        found: usize,
    },
    #[error("cone {cone} repeats an earlier maximal cone")]
    DuplicateCone { cone: usize },
    #[error("cone {cone} is not simplicial (its rays are linearly dependent)")]
    NonSimplicialCone { cone: usize },
    #[error("cones {first} and {second} do not meet in a common face")]
    FaceIntersectionViolation { first: usize, second: usize },
    #[error("ray {ray} lies in no maximal cone")]
    UnusedRay { ray: usize },
    #[error("vector {vector} does not lie in the support of the fan")]
    NotInSupport { vector: IntVector },
    #[error("vector {vector} is already ray {ray}")]
    AlreadyARay { vector: IntVector, ray: usize },
    #[error("vector {vector} is not primitive")]
    NonPrimitive { vector: IntVector },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("twist data has wrong shape: {0}")]
    TwistShape(String),
    #[error("the fan is not complete")]
    IncompleteFan,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl FanError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            FanError::ZeroRank => "ZeroRank",
            FanError::EmptyFan => "EmptyFan",
            FanError::RankMismatch { .. } => "RankMismatch",
            FanError::ZeroRay { .. } => "ZeroRay",
            FanError::NonPrimitiveRay { .. } => "NonPrimitiveRay",
            FanError::DuplicateRay { .. } => "DuplicateRay",
            FanError::RayIndexOutOfRange { .. } => "RayIndexOutOfRange",
            FanError::ConeDimension { .. } => "ConeDimension",
            FanError::DuplicateCone { .. } => "DuplicateCone",
            FanError::NonSimplicialCone { .. } => "NonSimplicialCone",
            FanError::FaceIntersectionViolation { .. } => "FaceIntersectionViolation",
            FanError::UnusedRay { .. } => "UnusedRay",
            FanError::NotInSupport { .. } => "NotInSupport",
            FanError::AlreadyARay { .. } => "AlreadyARay",
            FanError::NonPrimitive { .. } => "NonPrimitive",
            FanError::InvalidWeights(_) => "InvalidWeights",
            FanError::TwistShape(_) => "TwistShape",
            FanError::IncompleteFan => "IncompleteFan",
            FanError::Lattice(e) => e.code(),
        }
    }
}

/// A cone of a fan, stored as the sorted set of its ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Cone(set.into_iter().collect())
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    /// All faces, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.0.len();
        (0u64..1 << k)
            .map(|mask| {
                Cone(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &r)| r)
                        .collect(),
                )
            })
            .collect()
    }

    /// The cone with one ray removed.
    pub fn without(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != ray).collect())
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Unvalidated fan data, as it arrives from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFan {
    pub rank: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Cone>,
    complete: bool,
    smooth: bool,
}

/// A torus-orbit closure, identified with its cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub cone: Cone,
    pub codim: usize,
}

/// Full validation of raw fan data.
pub fn validate_fan(raw: RawFan) -> Result<Fan, FanError> {
    let rays = raw
        .rays
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != raw.rank {
                return Err(FanError::RankMismatch {
                    ray: i,
                    expected: raw.rank,
                    found: r.len(),
                });
            }
            Ok(IntVector::new(r)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Fan::new(raw.rank, rays, raw.max_cones)
}

impl Fan {
    /// Validates and builds a fan. Checks primitivity and distinctness of
    /// rays, that every maximal cone is simplicial of full dimension, and
    /// that any two maximal cones meet in a common face.
    pub fn new(
        rank: usize,
        rays: Vec<IntVector>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        if rank == 0 {
            return Err(FanError::ZeroRank);
        }
        if rays.is_empty() || max_cones.is_empty() {
            return Err(FanError::EmptyFan);
        }
        let mut seen = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(FanError::RankMismatch {
                    ray: i,
                    expected: rank,
                    found: r.rank(),
                });
            }
            if r.is_zero() {
                return Err(FanError::ZeroRay { ray: i });
            }
            if !r.is_primitive() {
                return Err(FanError::NonPrimitiveRay {
                    ray: i,
                    vector: r.clone(),
                });
            }
            if let Some(first) = seen.insert(r.clone(), i) {
                return Err(FanError::DuplicateRay { first, second: i });
            }
        }

        let mut cones = Vec::with_capacity(max_cones.len());
        let mut distinct = BTreeSet::new();
        for (ci, raw) in max_cones.into_iter().enumerate() {
            if let Some(&index) = raw.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::RayIndexOutOfRange { cone: ci, index });
            }
            let cone = Cone::new(raw.iter().copied());
            if cone.dim() != raw.len() || cone.dim() != rank {
                if cone.dim() == raw.len() && cone.dim() > rank {
                    return Err(FanError::NonSimplicialCone { cone: ci });
                }
                return Err(FanError::ConeDimension {
                    cone: ci,
                    expected: rank,
                    found: cone.dim(),
                });
            }
            let gens: Vec<IntVector> = cone.rays().iter().map(|&i| rays[i].clone()).collect();
            if rank_of(&gens) != rank {
                return Err(FanError::NonSimplicialCone { cone: ci });
            }
            if !distinct.insert(cone.clone()) {
                return Err(FanError::DuplicateCone { cone: ci });
            }
            cones.push(cone);
        }
        if let Some(ray) = (0..rays.len()).find(|&r| !cones.iter().any(|c| c.contains_ray(r))) {
            return Err(FanError::UnusedRay { ray });
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if !meet_in_common_face(&rays, &cones[i], &cones[j]) {
                    return Err(FanError::FaceIntersectionViolation {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Self::assemble(rank, rays, cones))
    }

    /// Builds a fan from data that is valid by construction, computing the
    /// completeness and smoothness flags only.
    pub(crate) fn assemble(rank: usize, rays: Vec<IntVector>, max_cones: Vec<Cone>) -> Fan {
        let mut facets: BTreeMap<Cone, usize> = BTreeMap::new();
        for c in &max_cones {
            for &r in c.rays() {
                *facets.entry(c.without(r)).or_default() += 1;
            }
        }
        let complete = facets.values().all(|&k| k == 2);
        let smooth = max_cones.iter().all(|c| {
            IntMatrix::from_columns(
                rank,
                &c.rays()
                    .iter()
                    .map(|&i| rays[i].clone())
                    .collect::<Vec<_>>(),
            )
            .is_unimodular()
        });
        Fan {
            rank,
            rays,
            max_cones,
            complete,
            smooth,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Always true: non-simplicial input is rejected at construction.
    pub fn is_simplicial(&self) -> bool {
        true
    }

    pub fn ray_index(&self, v: &IntVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn cone_generators(&self, cone: &Cone) -> Vec<IntVector> {
        cone.rays().iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Rows are the ray generators: an `r x n` matrix whose column span is
    /// the lattice of principal torus-invariant divisors.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank, &self.rays).transpose()
    }

    /// Whether `cone` is a face of some maximal cone.
    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.max_cones.iter().any(|m| cone.is_face_of(m))
    }

    /// Coordinates of `v` in the rays of the maximal cone `cone`, when `v`
    /// lies in that cone.
    pub fn cone_coordinates(&self, cone: &Cone, v: &IntVector) -> Option<Vec<BigRational>> {
        let cols: Vec<Vec<BigRational>> = cone
            .rays()
            .iter()
            .map(|&i| self.rays[i].to_rational())
            .collect();
        let x = solve_in_span(&cols, &v.to_rational())?;
        x.iter().all(|c| !c.is_negative()).then_some(x)
    }

    /// The first maximal cone (in storage order) containing `v`, with the
    /// coordinates of `v` in its rays.
    pub fn locate(&self, v: &IntVector) -> Option<(usize, Vec<BigRational>)> {
        if v.rank() != self.rank {
            return None;
        }
        self.max_cones
            .iter()
            .enumerate()
            .find_map(|(i, c)| self.cone_coordinates(c, v).map(|x| (i, x)))
    }

    /// The smallest cone containing `v` in its relative interior.
    pub fn minimal_cone(&self, v: &IntVector) -> Option<Cone> {
        let (ci, x) = self.locate(v)?;
        let cone = &self.max_cones[ci];
        Some(Cone::new(
            cone.rays()
                .iter()
                .zip(&x)
                .filter(|(_, c)| c.is_positive())
                .map(|(&r, _)| r),
        ))
    }

    /// Every cone of the fan (faces of maximal cones), deduplicated, ordered
    /// by dimension and then lexicographically.
    pub fn all_cones(&self) -> Vec<Cone> {
        let set: BTreeSet<Cone> = self.max_cones.iter().flat_map(Cone::faces).collect();
        let mut cones: Vec<Cone> = set.into_iter().collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        cones
    }

    /// Equality as fans: same ray set and same set of maximal cones, up to
    /// reordering of the stored rays.
    pub fn same_fan(&self, other: &Fan) -> bool {
        if self.rank != other.rank || self.rays.len() != other.rays.len() {
            return false;
        }
        let as_sets = |f: &Fan| -> BTreeSet<BTreeSet<IntVector>> {
            f.max_cones
                .iter()
                .map(|c| c.rays().iter().map(|&i| f.rays[i].clone()).collect())
                .collect()
        };
        let rays_a: BTreeSet<&IntVector> = self.rays.iter().collect();
        let rays_b: BTreeSet<&IntVector> = other.rays.iter().collect();
        rays_a == rays_b && as_sets(self) == as_sets(other)
    }

    pub fn to_raw(&self) -> RawFan {
        RawFan {
            rank: self.rank,
            rays: self.rays.iter().map(|r| r.coords().to_vec()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.rays().to_vec()).collect(),
        }
    }
}

/// Whether two simplicial cones intersect exactly in the cone spanned by
/// their common rays. Decided by an exact feasibility problem: a point of the
/// intersection with weight on a non-shared ray exists iff they do not.
fn meet_in_common_face(rays: &[IntVector], a: &Cone, b: &Cone) -> bool {
    let rank = rays[0].rank();
    let na = a.dim();
    let nb = b.dim();
    let nvars = na + nb;
    let mut constraints = Vec::with_capacity(rank + 1);
    for k in 0..rank {
        let mut row = Vec::with_capacity(nvars);
        row.extend(
            a.rays()
                .iter()
                .map(|&i| BigRational::from_integer(rays[i].coords()[k].clone())),
        );
        row.extend(
            b.rays()
                .iter()
                .map(|&i| -BigRational::from_integer(rays[i].coords()[k].clone())),
        );
        constraints.push(row);
    }
    let mut normal = Vec::with_capacity(nvars);
    normal.extend(a.rays().iter().map(|&i| weight_unless_shared(b, i)));
    normal.extend(b.rays().iter().map(|&i| weight_unless_shared(a, i)));
    constraints.push(normal);
    let mut rhs = vec![BigRational::zero(); rank];
    rhs.push(BigRational::one());
    feasible_point(&constraints, &rhs, nvars).is_none()
}

fn weight_unless_shared(other: &Cone, ray: usize) -> BigRational {
    if other.contains_ray(ray) {
        BigRational::zero()
    } else {
        BigRational::one()
    }
}

/// Whether the rays of `cone` extend to a basis of the lattice.
pub fn is_smooth_cone(fan: &Fan, cone: &Cone) -> bool {
    if cone.dim() == 0 {
        return true;
    }
    let m = IntMatrix::from_columns(fan.rank(), &fan.cone_generators(cone));
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    factors.len() == cone.dim() && factors.iter().all(One::is_one)
}

/// Star subdivision of `fan` at the primitive vector `v`: every maximal cone
/// containing `v` is replaced by the joins of `v` with its facets not
/// containing `v`. The new ray is appended, so its index is the old ray
/// count.
pub fn star_subdivision(fan: &Fan, v: &IntVector) -> Result<(Fan, usize), FanError> {
    if v.rank() != fan.rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: fan.rank(),
            found: v.rank(),
        }
        .into());
    }
    if !v.is_primitive() {
        return Err(FanError::NonPrimitive { vector: v.clone() });
    }
    if let Some(ray) = fan.ray_index(v) {
        return Err(FanError::AlreadyARay {
            vector: v.clone(),
            ray,
        });
    }
    let new_index = fan.num_rays();
    let mut cones = Vec::with_capacity(fan.max_cones().len() + fan.rank());
    let mut hit = false;
    for cone in fan.max_cones() {
        match fan.cone_coordinates(cone, v) {
            Some(x) => {
                hit = true;
                for (&r, c) in cone.rays().iter().zip(&x) {
                    if c.is_positive() {
                        cones.push(Cone::new(
                            cone.without(r).rays().iter().copied().chain([new_index]),
                        ));
                    }
                }
            }
            None => cones.push(cone.clone()),
        }
    }
    if !hit {
        return Err(FanError::NotInSupport { vector: v.clone() });
    }
    let mut rays = fan.rays().to_vec();
    rays.push(v.clone());
    Ok((Fan::assemble(fan.rank(), rays, cones), new_index))
}

/// All torus-orbit closures: one per cone, including the zero cone (the open
/// orbit) and the rays (the invariant divisors).
pub fn orbit_strata(fan: &Fan) -> Vec<Stratum> {
    fan.all_cones()
        .into_iter()
        .map(|cone| Stratum {
            codim: fan.rank() - cone.dim(),
            cone,
        })
        .collect()
}
