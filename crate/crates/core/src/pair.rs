//! Pairs `(X, B)` on complete simplicial toric varieties.
//!
//! A [`ToricPair`] carries one rational coefficient per ray, so
//! `B = sum b_rho D_rho` and `K_X = -sum D_rho`. A [`NumericalPair`] only
//! knows its components up to linear equivalence: each component is a
//! divisor class (an integer vector over the rays) with a coefficient and a
//! multiplicity, standing for that many distinct general members of the
//! class.
//!
//! Divisor classes are handled through the ray matrix `R` (rows = ray
//! generators): a ray-indexed vector is principal iff it lies in the integer
//! column span of `R`.
//!
//! The rank of the group of Weil divisors modulo algebraic equivalence is
//! taken to be `#rays - rank`, the free rank of the class group; torsion does
//! not enter the complexity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fan::{star_subdivision, Cone, Fan, FanError};
use crate::lattice::{
    k_subsets, lattice_membership_default, solve_in_span, IntVector, LatticeError,
};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("the fan is not complete")]
    IncompleteFan,
    #[error("expected {expected} coefficients (one per ray), found {found}")]
    CoeffCount { expected: usize, found: usize },
    #[error("component {component} has a class of length {found}, expected {expected}")]
    ClassLength {
        component: usize,
        expected: usize,
        found: usize,
    },
    #[error("component {component} has coefficient {coeff} outside [0, 1]")]
    CoeffOutOfRange { component: usize, coeff: String },
    #[error("component {component} has zero multiplicity")]
    ZeroCount { component: usize },
    #[error("K_X + B is not Q-linearly trivial")]
    NotLogCy,
    #[error("the pair is not log canonical")]
    NotLc,
    #[error("vector {vector} does not lie in the support of the fan")]
    NotInSupport { vector: IntVector },
    #[error("vector {vector} is not primitive")]
    NonPrimitive { vector: IntVector },
    #[error("the section polytope is unbounded")]
    UnboundedPolytope,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl PairError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            PairError::IncompleteFan => "IncompleteFan",
            PairError::CoeffCount { .. } => "CoeffCount",
            PairError::ClassLength { .. } => "ClassLength",
            PairError::CoeffOutOfRange { .. } => "CoeffOutOfRange",
            PairError::ZeroCount { .. } => "ZeroCount",
            PairError::NotLogCy => "NotLogCy",
            PairError::NotLc => "NotLc",
            PairError::NotInSupport { .. } => "NotInSupport",
            PairError::NonPrimitive { .. } => "NonPrimitive",
            PairError::UnboundedPolytope => "UnboundedPolytope",
            PairError::Fan(e) => e.code(),
            PairError::Lattice(e) => e.code(),
        }
    }
}

/// Three-valued answer for properties that are not always decidable here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub complexity: Q,
    /// `None` when `K_X + B` is not Q-linearly trivial.
    pub index: Option<BigInt>,
    pub lc: Verdict,
    pub log_cy: bool,
}

/// Linear equivalence (`Integral`) or Q-linear equivalence (`Rational`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Integral,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPair {
    fan: Fan,
    coeffs: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalComponent {
    pub class: Vec<BigInt>,
    pub coeff: Q,
    pub count: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalPair {
    fan: Fan,
    components: Vec<NumericalComponent>,
}

fn require_complete(fan: &Fan) -> Result<(), PairError> {
    if fan.is_complete() {
        Ok(())
    } else {
        Err(PairError::IncompleteFan)
    }
}

/// `dim X + rank WDiv_alg(X) - |B|` with `rank WDiv_alg(X) = #rays - dim X`.
fn complexity_formula(fan: &Fan, degree: &Q) -> Q {
    let dim = BigInt::from(fan.rank());
    let class_rank = BigInt::from(fan.num_rays()) - &dim;
    Q::from_integer(dim + class_rank) - degree
}

fn principal_multiplier(fan: &Fan, divisor: &[Q]) -> Result<Option<BigInt>, PairError> {
    Ok(lattice_membership_default(&fan.ray_matrix(), divisor)?)
}

impl ToricPair {
    pub fn new(fan: Fan, coeffs: Vec<Q>) -> Result<Self, PairError> {
        if coeffs.len() != fan.num_rays() {
            return Err(PairError::CoeffCount {
                expected: fan.num_rays(),
                found: coeffs.len(),
            });
        }
        Ok(ToricPair { fan, coeffs })
    }

    /// The toric boundary: every coefficient one.
    pub fn full_boundary(fan: Fan) -> Self {
        let coeffs = vec![Q::one(); fan.num_rays()];
        ToricPair { fan, coeffs }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// True when every coefficient lies in `[0, 1]` (a pair rather than a
    /// sub-pair).
    pub fn is_boundary(&self) -> bool {
        self.coeffs.iter().all(crate::rational::in_unit_interval)
    }

    pub fn degree(&self) -> Q {
        self.coeffs.iter().sum()
    }

    pub fn complexity(&self) -> Result<Q, PairError> {
        require_complete(&self.fan)?;
        Ok(complexity_formula(&self.fan, &self.degree()))
    }

    /// Ray-indexed coefficients of `K_X + B`.
    pub fn log_canonical_divisor(&self) -> Vec<Q> {
        self.coeffs.iter().map(|b| b - Q::one()).collect()
    }

    /// Smallest `m >= 1` with `m(K_X + B)` an integral principal divisor.
    pub fn index(&self) -> Result<BigInt, PairError> {
        require_complete(&self.fan)?;
        principal_multiplier(&self.fan, &self.log_canonical_divisor())?.ok_or(PairError::NotLogCy)
    }

    /// Log discrepancy of the toric valuation of the primitive vector `v`:
    /// writing `v = sum l_i u_i` in a cone containing it,
    /// `A(v) = sum l_i (1 - b_i)`.
    pub fn log_discrepancy(&self, v: &IntVector) -> Result<Q, PairError> {
        if v.rank() != self.fan.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.fan.rank(),
                found: v.rank(),
            }
            .into());
        }
        if !v.is_primitive() {
            return Err(PairError::NonPrimitive { vector: v.clone() });
        }
        self.support_function(v)
    }

    /// The piecewise-linear extension of the log discrepancy to every
    /// lattice point of the support, primitive or not.
    pub fn support_function(&self, v: &IntVector) -> Result<Q, PairError> {
        let (ci, x) = self
            .fan
            .locate(v)
            .ok_or_else(|| PairError::NotInSupport { vector: v.clone() })?;
        let cone = &self.fan.max_cones()[ci];
        Ok(cone
            .rays()
            .iter()
            .zip(&x)
            .map(|(&r, l)| l * (Q::one() - &self.coeffs[r]))
            .sum())
    }

    /// For torus-invariant boundaries, log canonical iff every coefficient is
    /// at most one.
    pub fn is_lc(&self) -> bool {
        self.coeffs.iter().all(|b| *b <= Q::one())
    }

    /// Nonzero cones all of whose rays carry coefficient one: the strata of
    /// the reduced part of `B`.
    pub fn lc_centers(&self) -> Result<Vec<Cone>, PairError> {
        if !self.is_lc() {
            return Err(PairError::NotLc);
        }
        Ok(self
            .fan
            .all_cones()
            .into_iter()
            .filter(|c| c.dim() > 0 && c.rays().iter().all(|&r| self.coeffs[r].is_one()))
            .collect())
    }

    /// Log pullback along the star subdivision at `v`. The new ray (appended
    /// last, index returned) gets coefficient `1 - A(v)`.
    pub fn pullback_star_subdivision(
        &self,
        v: &IntVector,
    ) -> Result<(ToricPair, usize), PairError> {
        let (fan, index) = star_subdivision(&self.fan, v)?;
        let a = self.log_discrepancy(v)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Q::one() - a);
        Ok((ToricPair { fan, coeffs }, index))
    }

    pub fn report(&self) -> Result<PairReport, PairError> {
        let complexity = self.complexity()?;
        let index = match self.index() {
            Ok(m) => Some(m),
            Err(PairError::NotLogCy) => None,
            Err(e) => return Err(e),
        };
        let lc = self.is_lc();
        Ok(PairReport {
            complexity,
            log_cy: lc && index.is_some(),
            index,
            lc: lc.into(),
        })
    }
}

impl NumericalPair {
    pub fn new(fan: Fan, components: Vec<NumericalComponent>) -> Result<Self, PairError> {
        for (i, c) in components.iter().enumerate() {
            if c.class.len() != fan.num_rays() {
                return Err(PairError::ClassLength {
                    component: i,
                    expected: fan.num_rays(),
                    found: c.class.len(),
                });
            }
            if !crate::rational::in_unit_interval(&c.coeff) {
                return Err(PairError::CoeffOutOfRange {
                    component: i,
                    coeff: crate::rational::format_rational(&c.coeff),
                });
            }
            if !c.count.is_positive() {
                return Err(PairError::ZeroCount { component: i });
            }
        }
        Ok(NumericalPair { fan, components })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn components(&self) -> &[NumericalComponent] {
        &self.components
    }

    /// `|B| = sum count * coeff`.
    pub fn degree(&self) -> Q {
        self.components
            .iter()
            .map(|c| Q::from_integer(c.count.clone()) * &c.coeff)
            .sum()
    }

    pub fn complexity(&self) -> Result<Q, PairError> {
        require_complete(&self.fan)?;
        Ok(complexity_formula(&self.fan, &self.degree()))
    }

    /// Ray-indexed class of `K_X + B`: `-1` on every ray plus
    /// `sum count * coeff * class`.
    pub fn log_canonical_class(&self) -> Vec<Q> {
        let mut v = vec![-Q::one(); self.fan.num_rays()];
        for c in &self.components {
            let w = Q::from_integer(c.count.clone()) * &c.coeff;
            for (x, k) in v.iter_mut().zip(&c.class) {
                *x += &w * Q::from_integer(k.clone());
            }
        }
        v
    }

    /// Smallest `m >= 1` such that `m(K_X + B)` is an integral divisor
    /// linearly equivalent to zero. The components are distinct prime
    /// divisors, so `m` must clear every coefficient's denominator as well as
    /// make the class principal.
    pub fn index(&self) -> Result<BigInt, PairError> {
        require_complete(&self.fan)?;
        let clearing = self
            .components
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.coeff.denom()));
        let scaled: Vec<Q> = self
            .log_canonical_class()
            .into_iter()
            .map(|x| x * Q::from_integer(clearing.clone()))
            .collect();
        let k = principal_multiplier(&self.fan, &scaled)?.ok_or(PairError::NotLogCy)?;
        Ok(clearing * k)
    }

    /// Log canonicity depends on the position of the general members and is
    /// not decided here, so `lc` is always [`Verdict::Unknown`] and `log_cy`
    /// reports Q-linear triviality of `K_X + B` alone.
    pub fn report(&self) -> Result<PairReport, PairError> {
        let complexity = self.complexity()?;
        let index = match self.index() {
            Ok(m) => Some(m),
            Err(PairError::NotLogCy) => None,
            Err(e) => return Err(e),
        };
        Ok(PairReport {
            complexity,
            log_cy: index.is_some(),
            index,
            lc: Verdict::Unknown,
        })
    }
}

/// Whether two ray-indexed divisors are (Q-)linearly equivalent.
pub fn classes_equal(fan: &Fan, d1: &[Q], d2: &[Q], mode: Equivalence) -> Result<bool, PairError> {
    require_complete(fan)?;
    let n = fan.num_rays();
    for d in [d1, d2] {
        if d.len() != n {
            return Err(PairError::CoeffCount {
                expected: n,
                found: d.len(),
            });
        }
    }
    let diff: Vec<Q> = d1.iter().zip(d2).map(|(a, b)| a - b).collect();
    match mode {
        Equivalence::Integral => {
            if diff.iter().any(|x| !x.is_integer()) {
                return Ok(false);
            }
            Ok(principal_multiplier(fan, &diff)? == Some(BigInt::one()))
        }
        Equivalence::Rational => {
            let r = fan.ray_matrix();
            let cols: Vec<Vec<Q>> = (0..r.cols())
                .map(|j| r.column(j).into_iter().map(Q::from_integer).collect())
                .collect();
            Ok(solve_in_span(&cols, &diff).is_some())
        }
    }
}

/// Number of lattice points `m` with `<m, u_rho> >= -a_rho` for every ray,
/// i.e. `h^0` of the invariant divisor `sum a_rho D_rho`.
///
/// The polytope is bounded for complete fans; its bounding box is read off
/// the feasible basic solutions (its vertices) and then scanned.
pub fn divisor_sections(fan: &Fan, divisor: &[BigInt]) -> Result<BigInt, PairError> {
    require_complete(fan)?;
    let n = fan.rank();
    if divisor.len() != fan.num_rays() {
        return Err(PairError::CoeffCount {
            expected: fan.num_rays(),
            found: divisor.len(),
        });
    }
    let satisfies = |m: &[Q]| {
        fan.rays().iter().zip(divisor).all(|(u, a)| {
            let pairing: Q = u
                .coords()
                .iter()
                .zip(m)
                .map(|(c, x)| x * Q::from_integer(c.clone()))
                .sum();
            pairing >= Q::from_integer(-a)
        })
    };

    let mut lo: Option<Vec<Q>> = None;
    let mut hi: Option<Vec<Q>> = None;
    for subset in k_subsets(fan.num_rays(), n) {
        // Solve <m, u_rho> = -a_rho for rho in subset.
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|k| {
                subset
                    .iter()
                    .map(|&r| Q::from_integer(fan.ray(r).coords()[k].clone()))
                    .collect()
            })
            .collect();
        let rhs: Vec<Q> = subset
            .iter()
            .map(|&r| Q::from_integer(-&divisor[r]))
            .collect();
        let gens: Vec<IntVector> = subset.iter().map(|&r| fan.ray(r).clone()).collect();
        if crate::lattice::rank_of(&gens) != n {
            continue;
        }
        let Some(vertex) = solve_in_span(&cols, &rhs) else {
            continue;
        };
        if !satisfies(&vertex) {
            continue;
        }
        match (&mut lo, &mut hi) {
            (Some(l), Some(h)) => {
                for k in 0..n {
                    if vertex[k] < l[k] {
                        l[k] = vertex[k].clone();
                    }
                    if vertex[k] > h[k] {
                        h[k] = vertex[k].clone();
                    }
                }
            }
            _ => {
                lo = Some(vertex.clone());
                hi = Some(vertex);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(BigInt::zero());
    };
    let lo: Vec<BigInt> = lo.iter().map(|x| x.ceil().to_integer()).collect();
    let hi: Vec<BigInt> = hi.iter().map(|x| x.floor().to_integer()).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(BigInt::zero());
    }

    let mut count = BigInt::zero();
    let mut point = lo.clone();
    loop {
        let m: Vec<Q> = point.iter().cloned().map(Q::from_integer).collect();
        if satisfies(&m) {
            count += 1;
        }
        // Odometer increment over the box.
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            if point[k] < hi[k] {
                point[k] += 1;
                break;
            }
            point[k] = lo[k].clone();
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::{product, projective_space, weighted_projective};
    use crate::rational::{int, ratio};

    fn p2() -> Fan {
        projective_space(2).unwrap()
    }

    fn p1xp1() -> Fan {
        let p1 = projective_space(1).unwrap();
        product(&p1, &p1)
    }

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    fn qs(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(ToricPair::full_boundary(p2()).complexity().unwrap(), int(0));
        assert_eq!(
            ToricPair::new(p2(), qs(&[0, 0, 0]))
                .unwrap()
                .complexity()
                .unwrap(),
            int(3)
        );
        let partial = Fan::new(2, p2().rays()[..2].to_vec(), vec![vec![0, 1]]).unwrap();
        assert_eq!(
            ToricPair::full_boundary(partial).complexity(),
            Err(PairError::IncompleteFan)
        );
    }

    #[test]
    fn index_examples() {
        assert_eq!(ToricPair::full_boundary(p2()).index().unwrap(), 1.into());
        assert_eq!(
            ToricPair::new(p2(), qs(&[1, 1, 0])).unwrap().index(),
            Err(PairError::NotLogCy)
        );
        // Half of the boundary of P1xP1 twice over: 2(K + B) ~ 0 needs B = D1 + D2 shape;
        // here K + B = -1/2 (sum D), a non-trivial class.
        let half = ToricPair::new(p1xp1(), vec![ratio(1, 2); 4]).unwrap();
        assert_eq!(half.index(), Err(PairError::NotLogCy));
    }

    #[test]
    fn discrepancy_examples() {
        let full = ToricPair::full_boundary(p2());
        assert_eq!(full.log_discrepancy(&v(&[1, 1])).unwrap(), int(0));
        let zero = ToricPair::new(p2(), qs(&[0, 0, 0])).unwrap();
        assert_eq!(zero.log_discrepancy(&v(&[1, 1])).unwrap(), int(2));
        let half = ToricPair::new(p2(), vec![ratio(1, 2); 3]).unwrap();
        assert_eq!(half.log_discrepancy(&v(&[2, 1])).unwrap(), ratio(3, 2));
        assert!(matches!(
            half.log_discrepancy(&v(&[2, 2])),
            Err(PairError::NonPrimitive { .. })
        ));
    }

    #[test]
    fn discrepancy_matches_dual_computation() {
        // Oracle: on the cone sigma containing v, solve <m, u_i> = 1 - b_i for
        // m and evaluate <m, v>.
        let half = ToricPair::new(p2(), vec![ratio(1, 2); 3]).unwrap();
        // v = (2, 1) lies in cone(e1, e2): m = (1/2, 1/2), <m, v> = 3/2.
        let m = [ratio(1, 2), ratio(1, 2)];
        let expect = &m[0] * int(2) + &m[1] * int(1);
        assert_eq!(half.log_discrepancy(&v(&[2, 1])).unwrap(), expect);
    }

    #[test]
    fn lc_and_centers() {
        assert!(ToricPair::full_boundary(p2()).is_lc());
        assert!(!ToricPair::new(p2(), vec![ratio(3, 2), int(0), int(0)])
            .unwrap()
            .is_lc());

        let centers = ToricPair::full_boundary(p2()).lc_centers().unwrap();
        assert_eq!(centers.len(), 6);
        assert!(ToricPair::new(p2(), vec![ratio(1, 2); 3])
            .unwrap()
            .lc_centers()
            .unwrap()
            .is_empty());

        // Rays of P1xP1 are e1, -e1, e2, -e2.
        let pair = ToricPair::new(p1xp1(), qs(&[1, 1, 0, 0])).unwrap();
        assert_eq!(
            pair.lc_centers().unwrap(),
            vec![Cone::new([0]), Cone::new([1])]
        );
        assert_eq!(
            ToricPair::new(p2(), vec![int(2), int(0), int(0)])
                .unwrap()
                .lc_centers(),
            Err(PairError::NotLc)
        );
    }

    #[test]
    fn pullback_examples() {
        let (p, idx) = ToricPair::full_boundary(p2())
            .pullback_star_subdivision(&v(&[1, 1]))
            .unwrap();
        assert_eq!(p.coeffs()[idx], int(1));
        let (p, idx) = ToricPair::new(p2(), qs(&[0, 0, 0]))
            .unwrap()
            .pullback_star_subdivision(&v(&[1, 1]))
            .unwrap();
        assert_eq!(p.coeffs()[idx], int(-1));
        assert!(!p.is_boundary());
        let (p, idx) = ToricPair::new(p2(), vec![ratio(1, 2); 3])
            .unwrap()
            .pullback_star_subdivision(&v(&[1, 1]))
            .unwrap();
        assert_eq!(p.coeffs()[idx], int(0));
    }

    #[test]
    fn class_equality() {
        let f = p2();
        assert!(
            classes_equal(&f, &qs(&[1, 0, 0]), &qs(&[0, 1, 0]), Equivalence::Integral).unwrap()
        );
        assert!(
            classes_equal(&f, &qs(&[1, 1, 1]), &qs(&[3, 0, 0]), Equivalence::Integral).unwrap()
        );
        let g = p1xp1();
        assert!(!classes_equal(
            &g,
            &qs(&[1, 0, 0, 0]),
            &qs(&[0, 0, 1, 0]),
            Equivalence::Integral
        )
        .unwrap());
        assert!(!classes_equal(
            &g,
            &qs(&[1, 0, 0, 0]),
            &qs(&[0, 0, 1, 0]),
            Equivalence::Rational
        )
        .unwrap());
        // On P(1,1,2), D_{u0} (weight 1) and D_{e2} (weight 2) satisfy
        // 2 D_{u0} ~_Q D_{e2} but not integrally equal as D_{u0} ~ D_{e2}.
        let w = weighted_projective(&ints(&[1, 1, 2])).unwrap();
        assert!(
            classes_equal(&w, &qs(&[0, 2, 0]), &qs(&[0, 0, 4]), Equivalence::Rational).unwrap()
        );
        assert!(!classes_equal(
            &w,
            &[int(0), int(1), int(0)],
            &[int(0), int(0), int(1)],
            Equivalence::Rational
        )
        .unwrap());
    }

    #[test]
    fn section_counts() {
        assert_eq!(
            divisor_sections(&p2(), &ints(&[1, 0, 0])).unwrap(),
            3.into()
        );
        assert_eq!(
            divisor_sections(&p2(), &ints(&[0, 0, 2])).unwrap(),
            6.into()
        );
        assert_eq!(
            divisor_sections(&p2(), &ints(&[-1, 0, 0])).unwrap(),
            0.into()
        );

        let w112 = weighted_projective(&ints(&[1, 1, 2])).unwrap();
        // Rays e1 (weight 1), e2 (weight 2), u0 = (-1, -2) (weight 1).
        assert!(divisor_sections(&w112, &ints(&[0, 0, 1])).unwrap() >= 2.into());
        assert!(divisor_sections(&w112, &ints(&[1, 0, 0])).unwrap() >= 2.into());

        let w123 = weighted_projective(&ints(&[1, 2, 3])).unwrap();
        assert_eq!(
            divisor_sections(&w123, &ints(&[0, 0, 1])).unwrap(),
            1.into()
        );
    }

    #[test]
    fn sections_match_weighted_monomials() {
        // On P(1,2,3) the rays e1, e2, u0 carry weights 2, 3, 1, and
        // h^0(sum a_rho D_rho) counts monomials x^i y^j z^k of weighted
        // degree 2 a_1 + 3 a_2 + a_0 in variables of degree 1, 2, 3.
        let w123 = weighted_projective(&ints(&[1, 2, 3])).unwrap();
        let monomials = |d: i64| {
            (0..=d)
                .flat_map(|j| (0..=d).map(move |k| (j, k)))
                .filter(|&(j, k)| 2 * j + 3 * k <= d)
                .count()
        };
        for a1 in -1..=2 {
            for a2 in -1..=2 {
                for a0 in -1..=3 {
                    let d = 2 * a1 + 3 * a2 + a0;
                    let expect = if d < 0 { 0 } else { monomials(d) };
                    let got = divisor_sections(&w123, &ints(&[a1, a2, a0])).unwrap();
                    assert_eq!(got, expect.into(), "divisor ({a1}, {a2}, {a0})");
                }
            }
        }
    }

    #[test]
    fn numerical_pair_validation() {
        let bad = NumericalPair::new(
            p2(),
            vec![NumericalComponent {
                class: ints(&[1, 0, 0]),
                coeff: ratio(3, 2),
                count: 1.into(),
            }],
        );
        assert!(matches!(bad, Err(PairError::CoeffOutOfRange { .. })));
        let three_lines = NumericalPair::new(
            p2(),
            vec![NumericalComponent {
                class: ints(&[1, 0, 0]),
                coeff: ratio(1, 2),
                count: 6.into(),
            }],
        )
        .unwrap();
        let report = three_lines.report().unwrap();
        assert_eq!(report.complexity, int(0));
        assert_eq!(report.index, Some(2.into()));
        assert_eq!(report.lc, Verdict::Unknown);
    }
}
