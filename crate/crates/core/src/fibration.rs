//! Toric morphisms between complete simplicial fans.
//!
//! A [`FanMorphism`] is a lattice map `f_*: N_X -> N_Y` (an integer matrix of
//! shape `rank Y x rank X`) sending every source cone into a target cone.
//! For fibrations of split type the source fan decomposes as a fiber subfan
//! (cones inside `ker f_*`) joined with a section subfan (lifts of the target
//! cones), which is what [`split_fan`] verifies and records.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fan::standard::proj_bundle;
use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{
    nullspace, primitive_from_rational, smith_normal_form, solve_in_span, IntMatrix, IntVector,
    LatticeError,
};
use crate::pair::{PairError, ToricPair, Verdict};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FibrationError {
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("the image of source cone {cone} lies in no target cone")]
    IncompatibleCone { cone: Cone },
    #[error("the lattice map is not surjective")]
    NotSurjective,
    #[error("target ray {target_ray} is the image of several source rays {candidates:?}")]
    NonUniqueLift {
        target_ray: usize,
        candidates: Vec<usize>,
    },
    #[error("no source ray maps onto target ray {target_ray}")]
    NoRayOver { target_ray: usize },
    #[error("source ray {ray} is neither in the kernel nor over a target ray")]
    UnmatchedRay { ray: usize },
    #[error("lifted cone {cone} is not a cone of the source fan")]
    MissingLiftedCone { cone: Cone },
    #[error("source cone {cone} is not a join of a fiber cone and a section cone")]
    NotAJoin { cone: Cone },
    #[error("the fibration is not locally trivial")]
    NotLocallyTrivial,
    #[error("the general fiber is not a projective space")]
    FiberNotProjectiveSpace,
    #[error("source fan and pair fan differ")]
    PairMismatch,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl FibrationError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            FibrationError::MatrixShape { .. } => "MatrixShape",
            FibrationError::IncompatibleCone { .. } => "IncompatibleCone",
            FibrationError::NotSurjective => "NotSurjective",
            FibrationError::NonUniqueLift { .. } => "NonUniqueLift",
            FibrationError::NoRayOver { .. } => "NoRayOver",
            FibrationError::UnmatchedRay { .. } => "UnmatchedRay",
            FibrationError::MissingLiftedCone { .. } => "MissingLiftedCone",
            FibrationError::NotAJoin { .. } => "NotAJoin",
            FibrationError::NotLocallyTrivial => "NotLocallyTrivial",
            FibrationError::FiberNotProjectiveSpace => "FiberNotProjectiveSpace",
            FibrationError::PairMismatch => "PairMismatch",
            FibrationError::Fan(e) => e.code(),
            FibrationError::Pair(e) => e.code(),
            FibrationError::Lattice(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanMorphism {
    source: Fan,
    target: Fan,
    matrix: IntMatrix,
}

impl FanMorphism {
    /// Checks the shape and that each maximal source cone maps into a single
    /// target cone.
    pub fn new(source: Fan, target: Fan, matrix: IntMatrix) -> Result<Self, FibrationError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(FibrationError::MatrixShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.rank(),
                expected_cols: source.rank(),
            });
        }
        let images: Vec<IntVector> = source
            .rays()
            .iter()
            .map(|u| matrix.apply(u))
            .collect::<Result<_, _>>()?;
        for cone in source.max_cones() {
            let fits = target.max_cones().iter().any(|t| {
                cone.rays().iter().all(|&i| {
                    images[i].is_zero() || target.cone_coordinates(t, &images[i]).is_some()
                })
            });
            if !fits {
                return Err(FibrationError::IncompatibleCone { cone: cone.clone() });
            }
        }
        Ok(FanMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image(&self, v: &IntVector) -> IntVector {
        self.matrix.apply(v).expect("shape checked on construction")
    }

    pub fn is_surjective(&self) -> bool {
        let factors = smith_normal_form(&self.matrix).invariant_factors();
        factors.len() == self.matrix.rows() && factors.iter().all(One::is_one)
    }

    /// Source rays `tau` with `f_*(u_tau) = k u_sigma`, `k > 0`, for the
    /// target ray `sigma`, with their multiplicities `k`.
    pub fn rays_over(&self, sigma: usize) -> Vec<(usize, BigInt)> {
        let u = self.target.ray(sigma);
        self.source
            .rays()
            .iter()
            .enumerate()
            .filter_map(|(i, w)| self.image(w).positive_multiple_of(u).map(|k| (i, k)))
            .collect()
    }
}

/// Kernel basis and a section of a surjective lattice map, both read off a
/// Smith form `U M V = [I | 0]`: the kernel is spanned by the last columns of
/// `V`, and `s = V_left U` satisfies `M s = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSplitting {
    pub section: IntMatrix,
    pub kernel: Vec<IntVector>,
}

pub fn lattice_splitting(matrix: &IntMatrix) -> Result<LatticeSplitting, FibrationError> {
    let snf = smith_normal_form(matrix);
    let r = matrix.rows();
    let n = matrix.cols();
    let factors = snf.invariant_factors();
    if factors.len() != r || !factors.iter().all(One::is_one) {
        return Err(FibrationError::NotSurjective);
    }
    let column = |j: usize| IntVector::new(snf.v.column(j)).expect("n >= 1");
    let left: Vec<IntVector> = (0..r).map(column).collect();
    let section = IntMatrix::from_columns(n, &left).mul(&snf.u);
    let kernel = (r..n).map(column).collect();
    Ok(LatticeSplitting { section, kernel })
}

/// Coordinates of `v` in the given basis of a saturated sublattice.
fn coordinates_in(basis: &[IntVector], v: &IntVector) -> Option<Vec<BigInt>> {
    let cols: Vec<Vec<Q>> = basis.iter().map(IntVector::to_rational).collect();
    let x = solve_in_span(&cols, &v.to_rational())?;
    let back: Vec<Q> = (0..v.rank())
        .map(|k| cols.iter().zip(&x).map(|(c, xi)| &c[k] * xi).sum())
        .collect();
    if back != v.to_rational() || x.iter().any(|q| !q.is_integer()) {
        return None;
    }
    Some(x.into_iter().map(|q| q.to_integer()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    /// Source rays in the kernel, ascending.
    pub fiber_rays: Vec<usize>,
    /// `lift_map[sigma]` is the source ray over target ray `sigma`.
    pub lift_map: Vec<usize>,
    /// `f_*(u_{lift_map[sigma]}) = multiplicities[sigma] * u_sigma`.
    pub multiplicities: Vec<BigInt>,
    /// Every source cone spanned by fiber rays, zero cone included.
    pub fiber_subfan: Vec<Cone>,
    /// Lifts of the maximal target cones, in target order.
    pub section_subfan: Vec<Cone>,
}

impl SplitResult {
    pub fn lift(&self, target_cone: &Cone) -> Cone {
        Cone::new(target_cone.rays().iter().map(|&s| self.lift_map[s]))
    }

    /// Splits a source cone into its fiber part and its lifted part.
    pub fn decompose_cone(&self, cone: &Cone) -> (Cone, Cone) {
        let (fiber, lifted): (Vec<usize>, Vec<usize>) = cone
            .rays()
            .iter()
            .partition(|r| self.fiber_rays.binary_search(r).is_ok());
        (Cone::new(fiber), Cone::new(lifted))
    }

    /// Maximal fiber cones: those of dimension equal to the kernel rank.
    pub fn maximal_fiber_cones(&self) -> Vec<Cone> {
        let top = self.fiber_subfan.iter().map(Cone::dim).max().unwrap_or(0);
        self.fiber_subfan
            .iter()
            .filter(|c| c.dim() == top)
            .cloned()
            .collect()
    }
}

/// The splitting-fan decomposition `Sigma_X = Sigma_F + Sigma_Y`.
///
/// Fails unless each target ray has exactly one source ray over it, all
/// other source rays lie in the kernel, lifted target cones are source cones,
/// and every maximal source cone is a fiber cone joined with a lifted cone.
pub fn split_fan(f: &FanMorphism) -> Result<SplitResult, FibrationError> {
    if !f.is_surjective() {
        return Err(FibrationError::NotSurjective);
    }
    let source = f.source();
    let target = f.target();
    let fiber_rays: Vec<usize> = (0..source.num_rays())
        .filter(|&i| f.image(source.ray(i)).is_zero())
        .collect();

    let mut lift_map = Vec::with_capacity(target.num_rays());
    let mut multiplicities = Vec::with_capacity(target.num_rays());
    for sigma in 0..target.num_rays() {
        let over = f.rays_over(sigma);
        match over.as_slice() {
            [] => return Err(FibrationError::NoRayOver { target_ray: sigma }),
            [(i, k)] => {
                lift_map.push(*i);
                multiplicities.push(k.clone());
            }
            _ => {
                return Err(FibrationError::NonUniqueLift {
                    target_ray: sigma,
                    candidates: over.into_iter().map(|(i, _)| i).collect(),
                })
            }
        }
    }
    if let Some(ray) = (0..source.num_rays())
        .find(|i| fiber_rays.binary_search(i).is_err() && !lift_map.contains(i))
    {
        return Err(FibrationError::UnmatchedRay { ray });
    }

    let fiber_subfan: Vec<Cone> = source
        .all_cones()
        .into_iter()
        .filter(|c| c.rays().iter().all(|r| fiber_rays.binary_search(r).is_ok()))
        .collect();
    let mut split = SplitResult {
        fiber_rays,
        lift_map,
        multiplicities,
        fiber_subfan,
        section_subfan: Vec::new(),
    };
    for tc in target.max_cones() {
        let lifted = split.lift(tc);
        if !source.contains_cone(&lifted) {
            return Err(FibrationError::MissingLiftedCone { cone: lifted });
        }
        split.section_subfan.push(lifted);
    }
    for cone in source.max_cones() {
        let (fiber, lifted) = split.decompose_cone(cone);
        let lifted_ok = split.section_subfan.iter().any(|s| lifted.is_face_of(s));
        if !lifted_ok || !split.fiber_subfan.contains(&fiber) {
            return Err(FibrationError::NotAJoin { cone: cone.clone() });
        }
    }
    Ok(split)
}

/// Sufficient test from the lifted rays: any lift mapping to a proper
/// multiple of its target ray breaks saturation; with a smooth target and
/// all multiplicities one the fibration is locally trivial. Singular targets
/// are not decided.
pub fn is_locally_trivial(f: &FanMorphism, split: &SplitResult) -> Verdict {
    if split.multiplicities.iter().any(|k| !k.is_one()) {
        Verdict::No
    } else if f.target().is_smooth() {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberType {
    /// Basis of `ker f_*` in source coordinates.
    pub kernel_basis: Vec<IntVector>,
    /// The fiber fan in kernel coordinates; its rays follow `fiber_rays`.
    pub fan: Fan,
    /// Weights `(c_0, ..., c_n)`, ascending, when the fiber fan has
    /// `rank + 1` rays.
    pub weights: Option<Vec<BigInt>>,
}

pub fn fiber_type(f: &FanMorphism, split: &SplitResult) -> Result<FiberType, FibrationError> {
    let kernel_basis = lattice_splitting(f.matrix())?.kernel;
    let k = kernel_basis.len();
    let rays: Vec<IntVector> = split
        .fiber_rays
        .iter()
        .map(|&i| {
            let c = coordinates_in(&kernel_basis, f.source().ray(i))
                .expect("fiber rays lie in the kernel lattice");
            IntVector::new(c).expect("kernel rank is positive")
        })
        .collect();
    let position = |r: usize| split.fiber_rays.binary_search(&r).expect("fiber ray");
    let cones: Vec<Vec<usize>> = split
        .maximal_fiber_cones()
        .iter()
        .map(|c| c.rays().iter().map(|&r| position(r)).collect())
        .collect();
    let fan = Fan::new(k, rays, cones)?;
    let weights = (fan.num_rays() == k + 1).then(|| {
        let cols: Vec<Vec<Q>> = fan.rays().iter().map(IntVector::to_rational).collect();
        let relation = nullspace(&cols).pop().expect("k + 1 vectors in rank k");
        let mut c = primitive_from_rational(&relation)
            .expect("nonzero relation")
            .into_coords();
        if c.iter().any(Signed::is_negative) {
            c.iter_mut().for_each(|x| *x = -x.clone());
        }
        c.sort();
        c
    });
    Ok(FiberType {
        kernel_basis,
        fan,
        weights,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleExtraction {
    /// Right inverse `s` of `f_*` (`rank X x rank Y`).
    pub section: IntMatrix,
    /// `v_1, ..., v_n`: the fiber rays except the last one in source order.
    pub fiber_basis: Vec<IntVector>,
    /// `twists[tau][i] = a_{tau,i}`, indexed by target ray and fiber index.
    pub twists: Vec<Vec<BigInt>>,
    /// `L_0, ..., L_n` as target ray vectors; `L_i` has entry `-a_{tau,i}`
    /// at `tau` and `L_0 = 0`.
    pub line_bundle_classes: Vec<Vec<BigInt>>,
}

impl BundleExtraction {
    /// Twist data in the layout taken by `proj_bundle`: one vector per
    /// summand, indexed by base ray.
    pub fn bundle_twists(&self) -> Vec<Vec<BigInt>> {
        (0..self.fiber_basis.len())
            .map(|i| self.twists.iter().map(|t| t[i].clone()).collect())
            .collect()
    }

    /// Rebuilds the total space from the base and the twist data, carried to
    /// the source lattice by `(y, a) -> s(y) + sum a_i v_i`.
    pub fn rebuild(&self, base: &Fan) -> Result<Fan, FibrationError> {
        let model = proj_bundle(base, self.fiber_basis.len(), &self.bundle_twists())?;
        let r = base.rank();
        let rays: Vec<IntVector> = model
            .rays()
            .iter()
            .map(|w| {
                let (y, a) = w.coords().split_at(r);
                let mut v = self.section.mul_vec(y);
                for (ai, vi) in a.iter().zip(&self.fiber_basis) {
                    for (x, c) in v.iter_mut().zip(vi.coords()) {
                        *x += ai * c;
                    }
                }
                IntVector::new(v).expect("positive rank")
            })
            .collect();
        let cones = model
            .max_cones()
            .iter()
            .map(|c| c.rays().to_vec())
            .collect();
        Ok(Fan::new(self.section.rows(), rays, cones)?)
    }
}

pub fn extract_line_bundles(
    f: &FanMorphism,
    split: &SplitResult,
) -> Result<BundleExtraction, FibrationError> {
    if is_locally_trivial(f, split) != Verdict::Yes {
        return Err(FibrationError::NotLocallyTrivial);
    }
    let fiber = fiber_type(f, split)?;
    let n = fiber.kernel_basis.len();
    let is_projective_space = fiber
        .weights
        .as_ref()
        .is_some_and(|w| w.iter().all(One::is_one));
    if !is_projective_space {
        return Err(FibrationError::FiberNotProjectiveSpace);
    }
    let section = lattice_splitting(f.matrix())?.section;
    let fiber_basis: Vec<IntVector> = split.fiber_rays[..n]
        .iter()
        .map(|&i| f.source().ray(i).clone())
        .collect();

    let mut twists = Vec::with_capacity(split.lift_map.len());
    for &tau in &split.lift_map {
        let w = f.source().ray(tau);
        let s_y = IntVector::new(section.mul_vec(f.image(w).coords())).expect("positive rank");
        let a =
            coordinates_in(&fiber_basis, &(w - &s_y)).ok_or(FibrationError::NotLocallyTrivial)?;
        twists.push(a);
    }
    let mut line_bundle_classes = vec![vec![BigInt::zero(); twists.len()]];
    line_bundle_classes.extend((0..n).map(|i| twists.iter().map(|t| -&t[i]).collect()));
    Ok(BundleExtraction {
        section,
        fiber_basis,
        twists,
        line_bundle_classes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbfResult {
    pub pair: ToricPair,
    /// The moduli part of a toric fibration is always trivial.
    pub moduli_trivial: bool,
}

/// Discriminant part of the canonical bundle formula: the coefficient at a
/// target ray `sigma` is `1 - min_tau (1 - b_tau) / k_tau` over the source
/// rays `tau` with `f_*(u_tau) = k_tau u_sigma`.
pub fn cbf_pushforward(pair: &ToricPair, f: &FanMorphism) -> Result<CbfResult, FibrationError> {
    if pair.fan() != f.source() {
        return Err(FibrationError::PairMismatch);
    }
    if !pair.is_lc() {
        return Err(PairError::NotLc.into());
    }
    let mut coeffs = Vec::with_capacity(f.target().num_rays());
    for sigma in 0..f.target().num_rays() {
        let threshold = f
            .rays_over(sigma)
            .into_iter()
            .map(|(tau, k)| (Q::one() - &pair.coeffs()[tau]) / Q::from_integer(k))
            .min()
            .ok_or(FibrationError::NoRayOver { target_ray: sigma })?;
        coeffs.push(Q::one() - threshold);
    }
    Ok(CbfResult {
        pair: ToricPair::new(f.target().clone(), coeffs)?,
        moduli_trivial: true,
    })
}
