//! Pairs `(P^2, B)` with `B` supported on a line arrangement.
//!
//! Lines are projective triples `(a, b, c)` for `ax + by + cz = 0`, stored
//! with first nonzero coordinate equal to one.
//!
//! Every reduced toric boundary of `P^2` is three non-concurrent lines, and a
//! divisor `D` with `D <= ceil(B)` has its components among the arrangement
//! lines. Since such a boundary has degree 3 (it is anticanonical), the
//! associated boundaries of a line-supported `B` are exactly the
//! non-concurrent triples of arrangement lines lying between `floor(B)` and
//! `ceil(B)`.
//!
//! Log canonicity is tested by blowing up every point of multiplicity at
//! least two once; the result is simple normal crossings and the exceptional
//! curve over `p` has log discrepancy `2 - mult_p(B)`. So `(P^2, B)` is lc
//! iff all coefficients are at most one and `mult_p(B) <= 2` at every
//! incidence point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::pair::{PairReport, Verdict};
use crate::rational::format_rational;
use crate::simplex::{minimize, LpOutcome};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("line {line} is the zero triple")]
    ZeroLine { line: usize },
    #[error("lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("expected {expected} coefficients (one per line), found {found}")]
    CoeffCount { expected: usize, found: usize },
    #[error("line {line} has coefficient {coeff} outside [0, 1]")]
    CoeffOutOfRange { line: usize, coeff: String },
    #[error("line index {index} out of range ({lines} lines)")]
    LineIndex { index: usize, lines: usize },
    #[error("triangle {triangle} must consist of three distinct lines")]
    DegenerateTriangle { triangle: String },
    #[error("triangle {triangle} is not associated to the pair")]
    NotAssociated { triangle: String },
    #[error("the pair is not log canonical")]
    NotLc,
    #[error("the pair is not a log Calabi-Yau pair of complexity zero")]
    NotLogCyComplexityZero,
    #[error("no convex decomposition into associated triangles exists{detail}")]
    Infeasible { detail: String },
    #[error("peeling parameter {lambda} lies outside [0, {lambda2}]")]
    PeelOutOfRange { lambda: String, lambda2: String },
}

impl ArrangementError {
    /// Stable machine-readable name of the variant; wrapped errors report
    /// the code of the underlying error.
    pub fn code(&self) -> &'static str {
        match self {
            ArrangementError::ZeroLine { .. } => "ZeroLine",
            ArrangementError::DuplicateLine { .. } => "DuplicateLine",
            ArrangementError::CoeffCount { .. } => "CoeffCount",
            ArrangementError::CoeffOutOfRange { .. } => "CoeffOutOfRange",
            ArrangementError::LineIndex { .. } => "LineIndex",
            ArrangementError::DegenerateTriangle { .. } => "DegenerateTriangle",
            ArrangementError::NotAssociated { .. } => "NotAssociated",
            ArrangementError::NotLc => "NotLc",
            ArrangementError::NotLogCyComplexityZero => "NotLogCyComplexityZero",
            ArrangementError::Infeasible { .. } => "Infeasible",
            ArrangementError::PeelOutOfRange { .. } => "PeelOutOfRange",
        }
    }
}

/// Three line indices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([usize; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self, ArrangementError> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(ArrangementError::DegenerateTriangle {
                triangle: format!("{a},{b},{c}"),
            });
        }
        Ok(Triangle(t))
    }

    pub fn lines(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, line: usize) -> bool {
        self.0.contains(&line)
    }
}

impl std::fmt::Display for Triangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePoint {
    /// Normalized homogeneous coordinates.
    pub point: [Q; 3],
    /// Sorted indices of all lines through the point.
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub lambda1: Q,
    pub lambda2: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePair {
    lines: Vec<[Q; 3]>,
    coeffs: Vec<Q>,
}

fn normalize(v: [Q; 3]) -> Option<[Q; 3]> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.map(|x| x / &lead))
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PlanePair {
    pub fn new(lines: Vec<[Q; 3]>, coeffs: Vec<Q>) -> Result<Self, ArrangementError> {
        if coeffs.len() != lines.len() {
            return Err(ArrangementError::CoeffCount {
                expected: lines.len(),
                found: coeffs.len(),
            });
        }
        let mut normalized = Vec::with_capacity(lines.len());
        for (i, l) in lines.into_iter().enumerate() {
            let n = normalize(l).ok_or(ArrangementError::ZeroLine { line: i })?;
            if let Some(j) = normalized.iter().position(|m| *m == n) {
                return Err(ArrangementError::DuplicateLine {
                    first: j,
                    second: i,
                });
            }
            normalized.push(n);
        }
        for (i, b) in coeffs.iter().enumerate() {
            if !crate::rational::in_unit_interval(b) {
                return Err(ArrangementError::CoeffOutOfRange {
                    line: i,
                    coeff: format_rational(b),
                });
            }
        }
        Ok(PlanePair {
            lines: normalized,
            coeffs,
        })
    }

    /// Convenience constructor from integer line triples.
    pub fn from_integer_lines(
        lines: &[[i64; 3]],
        coeffs: Vec<Q>,
    ) -> Result<Self, ArrangementError> {
        let lines = lines
            .iter()
            .map(|l| l.map(|x| Q::from_integer(BigInt::from(x))))
            .collect();
        Self::new(lines, coeffs)
    }

    pub fn lines(&self) -> &[[Q; 3]] {
        &self.lines
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn degree(&self) -> Q {
        self.coeffs.iter().sum()
    }

    pub fn are_concurrent(&self, a: usize, b: usize, c: usize) -> bool {
        dot(&cross(&self.lines[a], &self.lines[b]), &self.lines[c]).is_zero()
    }

    /// Pairwise intersection points in order of first appearance over line
    /// pairs `(i, j)`, `i < j`, lexicographically.
    pub fn incidence_points(&self) -> Vec<IncidencePoint> {
        let mut order: Vec<[Q; 3]> = Vec::new();
        let mut members: BTreeMap<[Q; 3], Vec<usize>> = BTreeMap::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                let p = normalize(cross(&self.lines[i], &self.lines[j]))
                    .expect("distinct lines meet in a point");
                members.entry(p.clone()).or_insert_with(|| {
                    order.push(p);
                    Vec::new()
                });
            }
        }
        for (p, ls) in members.iter_mut() {
            *ls = (0..self.lines.len())
                .filter(|&k| dot(p, &self.lines[k]).is_zero())
                .collect();
        }
        order
            .into_iter()
            .map(|p| {
                let lines = members[&p].clone();
                IncidencePoint { point: p, lines }
            })
            .collect()
    }

    fn lc_with(&self, points: &[IncidencePoint], coeffs: &[Q]) -> bool {
        let two = Q::from_integer(2.into());
        coeffs.iter().all(|b| *b <= Q::one())
            && points
                .iter()
                .all(|p| p.lines.iter().map(|&l| &coeffs[l]).sum::<Q>() <= two)
    }

    pub fn is_lc(&self) -> bool {
        self.lc_with(&self.incidence_points(), &self.coeffs)
    }

    /// `K + B ~ (|B| - 3) H` and `Pic(P^2) = Z`, so the pair is log CY iff it
    /// is lc with `|B| = 3`, and then its index is the least common
    /// denominator of the coefficients.
    pub fn check_pair(&self) -> PairReport {
        let degree = self.degree();
        let three = Q::from_integer(3.into());
        let lc = self.is_lc();
        let index = (degree == three).then(|| {
            self.coeffs
                .iter()
                .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()))
        });
        PairReport {
            complexity: three - degree,
            log_cy: lc && index.is_some(),
            index,
            lc: Verdict::from(lc),
        }
    }

    fn check_indices(&self, t: &Triangle) -> Result<(), ArrangementError> {
        match t.lines().into_iter().find(|&i| i >= self.lines.len()) {
            Some(index) => Err(ArrangementError::LineIndex {
                index,
                lines: self.lines.len(),
            }),
            None => Ok(()),
        }
    }

    /// `floor(B) <= T <= ceil(B)` and the lines of `T` are not concurrent.
    pub fn is_associated(&self, t: &Triangle) -> bool {
        if self.check_indices(t).is_err() {
            return false;
        }
        let [a, b, c] = t.lines();
        t.lines().iter().all(|&l| self.coeffs[l].is_positive())
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(l, x)| !x.is_one() || t.contains(l))
            && !self.are_concurrent(a, b, c)
    }

    /// All associated triangles in lexicographic order.
    pub fn associated_triangles(&self) -> Vec<Triangle> {
        let n = self.lines.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t = Triangle([a, b, c]);
                    if self.is_associated(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    fn require_associated(&self, t: &Triangle) -> Result<(), ArrangementError> {
        self.check_indices(t)?;
        if self.is_associated(t) {
            Ok(())
        } else {
            Err(ArrangementError::NotAssociated {
                triangle: t.to_string(),
            })
        }
    }

    /// `lambda1 = max{l : l T <= B}` and `lambda2`, the largest `l <= lambda1`
    /// keeping `(B - l T) / (1 - l)` log canonical.
    ///
    /// At an incidence point with `a = mult_p(B)` and `c` lines of `T`, the
    /// peeled multiplicity bound `(a - c l) / (1 - l) <= 2` is the linear
    /// condition `a - 2 <= (c - 2) l`. A line outside `T` needs
    /// `b / (1 - l) <= 1`.
    pub fn lambda_invariants(&self, t: &Triangle) -> Result<LambdaReport, ArrangementError> {
        self.require_associated(t)?;
        let lambda1 = t
            .lines()
            .iter()
            .map(|&l| self.coeffs[l].clone())
            .min()
            .expect("three lines");
        if lambda1.is_one() {
            return Ok(LambdaReport {
                lambda2: Q::one(),
                lambda1,
            });
        }
        if !self.is_lc() {
            return Err(ArrangementError::NotLc);
        }
        let two = Q::from_integer(2.into());
        let mut lambda2 = lambda1.clone();
        for p in self.incidence_points() {
            let a: Q = p.lines.iter().map(|&l| &self.coeffs[l]).sum();
            let c = Q::from_integer(p.lines.iter().filter(|&&l| t.contains(l)).count().into());
            // c <= 2 because T is not concurrent; c = 2 gives a <= 2, already known.
            if c < two {
                lambda2 = lambda2.min((&two - &a) / (&two - &c));
            }
        }
        for (l, b) in self.coeffs.iter().enumerate() {
            if !t.contains(l) {
                lambda2 = lambda2.min(Q::one() - b);
            }
        }
        Ok(LambdaReport { lambda1, lambda2 })
    }

    /// The pair `(B - lambda T) / (1 - lambda)` for `0 <= lambda <= lambda2 < 1`.
    pub fn peel(&self, t: &Triangle, lambda: &Q) -> Result<PlanePair, ArrangementError> {
        let report = self.lambda_invariants(t)?;
        if lambda.is_negative() || *lambda > report.lambda2 || lambda.is_one() {
            return Err(ArrangementError::PeelOutOfRange {
                lambda: format_rational(lambda),
                lambda2: format_rational(&report.lambda2),
            });
        }
        let scale = (Q::one() - lambda).recip();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(l, b)| {
                if t.contains(l) {
                    (b - lambda) * &scale
                } else {
                    b * &scale
                }
            })
            .collect();
        Ok(PlanePair {
            lines: self.lines.clone(),
            coeffs,
        })
    }

    fn require_complexity_zero(&self) -> Result<(), ArrangementError> {
        let report = self.check_pair();
        if report.log_cy && report.complexity.is_zero() {
            Ok(())
        } else {
            Err(ArrangementError::NotLogCyComplexityZero)
        }
    }

    /// Equality constraints `sum_{T ni L} w_T = b_L` per line and
    /// `sum w_T = 1`, over the given triangles.
    fn decomposition_system(&self, triangles: &[Triangle]) -> (Vec<Vec<Q>>, Vec<Q>) {
        let mut rows: Vec<Vec<Q>> = (0..self.lines.len())
            .map(|l| {
                triangles
                    .iter()
                    .map(|t| if t.contains(l) { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        rows.push(vec![Q::one(); triangles.len()]);
        let mut rhs = self.coeffs.clone();
        rhs.push(Q::one());
        (rows, rhs)
    }

    fn collect_weights(triangles: &[Triangle], point: Vec<Q>) -> Vec<(Triangle, Q)> {
        triangles
            .iter()
            .copied()
            .zip(point)
            .filter(|(_, w)| w.is_positive())
            .collect()
    }

    /// Writes `B` as a convex combination of associated triangles.
    ///
    /// Solved as an exact feasibility problem over all associated triangles
    /// in lexicographic order with Bland's rule, so the output is
    /// reproducible. For a log Calabi-Yau pair of complexity zero such a
    /// decomposition always exists; `Infeasible` therefore means the input
    /// or the implementation is wrong.
    pub fn decompose(&self) -> Result<Vec<(Triangle, Q)>, ArrangementError> {
        self.require_complexity_zero()?;
        let triangles = self.associated_triangles();
        let (rows, rhs) = self.decomposition_system(&triangles);
        match minimize(&rows, &rhs, &vec![Q::zero(); triangles.len()]) {
            LpOutcome::Optimal { point, .. } => Ok(Self::collect_weights(&triangles, point)),
            _ => Err(ArrangementError::Infeasible {
                detail:
                    "; every complexity-zero pair admits one, so this indicates an internal error"
                        .into(),
            }),
        }
    }

    /// A decomposition giving `required` the largest possible weight.
    /// `Infeasible` when no decomposition gives it positive weight.
    pub fn decompose_with(
        &self,
        required: &Triangle,
    ) -> Result<Vec<(Triangle, Q)>, ArrangementError> {
        self.require_complexity_zero()?;
        self.require_associated(required)?;
        let triangles = self.associated_triangles();
        let (rows, rhs) = self.decomposition_system(&triangles);
        let objective: Vec<Q> = triangles
            .iter()
            .map(|t| if t == required { -Q::one() } else { Q::zero() })
            .collect();
        match minimize(&rows, &rhs, &objective) {
            LpOutcome::Optimal { point, value } if value.is_negative() => {
                Ok(Self::collect_weights(&triangles, point))
            }
            _ => Err(ArrangementError::Infeasible {
                detail: format!(" with positive weight on triangle {required}"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    // Four lines through [0:0:1] and two general lines.
    const SIX: [[i64; 3]; 6] = [
        [1, 0, 0],
        [0, 1, 0],
        [1, -1, 0],
        [1, 1, 0],
        [0, 0, 1],
        [1, 2, 3],
    ];

    fn six_lines() -> PlanePair {
        PlanePair::from_integer_lines(&SIX, vec![ratio(1, 2); 6]).unwrap()
    }

    fn tri(a: usize, b: usize, c: usize) -> Triangle {
        Triangle::new(a, b, c).unwrap()
    }

    fn coordinate_triangle() -> PlanePair {
        PlanePair::from_integer_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], vec![int(1); 3]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            PlanePair::from_integer_lines(&[[1, 2, 3], [2, 4, 6]], vec![int(0); 2]),
            Err(ArrangementError::DuplicateLine {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            PlanePair::from_integer_lines(&[[0, 0, 0]], vec![int(0)]),
            Err(ArrangementError::ZeroLine { line: 0 })
        );
        assert!(matches!(
            PlanePair::from_integer_lines(&[[1, 0, 0]], vec![ratio(3, 2)]),
            Err(ArrangementError::CoeffOutOfRange { .. })
        ));
        let p = PlanePair::from_integer_lines(&[[0, 2, 4]], vec![int(0)]).unwrap();
        assert_eq!(p.lines()[0], [int(0), int(1), int(2)]);
    }

    #[test]
    fn incidence_counts() {
        assert_eq!(coordinate_triangle().incidence_points().len(), 3);
        let pts = six_lines().incidence_points();
        assert_eq!(pts.len(), 10);
        assert_eq!(pts.iter().filter(|p| p.lines.len() == 4).count(), 1);
        assert_eq!(pts.iter().filter(|p| p.lines.len() == 2).count(), 9);
        let two = PlanePair::from_integer_lines(&SIX[..2], vec![int(0); 2]).unwrap();
        assert_eq!(two.incidence_points().len(), 1);
    }

    #[test]
    fn reports() {
        let r = six_lines().check_pair();
        assert_eq!(
            (r.lc, r.log_cy, r.complexity.clone(), r.index),
            (Verdict::Yes, true, int(0), Some(2.into()))
        );
        let five = PlanePair::from_integer_lines(
            &[[1, 0, 0], [0, 1, 0], [1, -1, 0], [1, 1, 0], [1, 2, 0]],
            vec![ratio(1, 2); 5],
        )
        .unwrap();
        assert_eq!(five.check_pair().lc, Verdict::No);
        let r = coordinate_triangle().check_pair();
        assert!(r.log_cy && r.complexity.is_zero());
    }

    #[test]
    fn lambdas() {
        let p = six_lines();
        assert_eq!(
            p.lambda_invariants(&tri(3, 4, 5)).unwrap(),
            LambdaReport {
                lambda1: ratio(1, 2),
                lambda2: int(0)
            }
        );
        assert_eq!(
            p.lambda_invariants(&tri(0, 1, 4)).unwrap(),
            LambdaReport {
                lambda1: ratio(1, 2),
                lambda2: ratio(1, 2)
            }
        );
        assert_eq!(
            coordinate_triangle()
                .lambda_invariants(&tri(0, 1, 2))
                .unwrap(),
            LambdaReport {
                lambda1: int(1),
                lambda2: int(1)
            }
        );
        assert!(matches!(
            p.lambda_invariants(&tri(0, 1, 2)),
            Err(ArrangementError::NotAssociated { .. })
        ));
    }

    #[test]
    fn triangles() {
        assert_eq!(six_lines().associated_triangles().len(), 16);
        assert_eq!(
            coordinate_triangle().associated_triangles(),
            vec![tri(0, 1, 2)]
        );
        let pencil = PlanePair::from_integer_lines(&SIX[..4], vec![ratio(3, 4); 4]).unwrap();
        assert!(pencil.associated_triangles().is_empty());
    }

    #[test]
    fn decompositions() {
        let p = six_lines();
        let d = p.decompose().unwrap();
        let total: Q = d.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, int(1));
        for l in 0..6 {
            let b: Q = d
                .iter()
                .filter(|(t, _)| t.contains(l))
                .map(|(_, w)| w.clone())
                .sum();
            assert_eq!(b, ratio(1, 2));
        }
        assert_eq!(
            coordinate_triangle().decompose().unwrap(),
            vec![(tri(0, 1, 2), int(1))]
        );
        assert!(matches!(
            p.decompose_with(&tri(3, 4, 5)),
            Err(ArrangementError::Infeasible { .. })
        ));
        let forced = p.decompose_with(&tri(0, 1, 4)).unwrap();
        assert!(forced
            .iter()
            .any(|(t, w)| *t == tri(0, 1, 4) && w.is_positive()));
    }

    #[test]
    fn peeling() {
        let p = six_lines();
        let t = tri(0, 1, 4);
        let peeled = p.peel(&t, &ratio(1, 2)).unwrap();
        assert_eq!(
            peeled.coeffs(),
            &[int(0), int(0), int(1), int(1), int(0), int(1)]
        );
        assert!(peeled.is_lc());
        assert!(matches!(
            p.peel(&tri(3, 4, 5), &ratio(1, 4)),
            Err(ArrangementError::PeelOutOfRange { .. })
        ));
    }
}
