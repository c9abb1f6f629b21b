//! Generators for standard fans.
//!
//! Ray orders are fixed so that ray indices in stored documents stay stable:
//!
//! * `projective_space(n)`: `e_1, ..., e_n, -(e_1 + ... + e_n)`.
//! * `weighted_projective(c_0, ..., c_n)`: `u_1, ..., u_n, u_0`.
//! * `product(a, b)`: rays of `a` (padded with zeros), then rays of `b`.
//! * `proj_bundle(base, n, twists)`: lifted base rays in base order, then
//!   fiber rays `f_1, ..., f_n`, then `f_0 = -(f_1 + ... + f_n)`.
//!
//! Maximal cones of the simplex-type fans are the `n`-subsets of the rays in
//! lexicographic order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Cone, Fan, FanError};
use crate::lattice::{primitive_vector, smith_normal_form, IntMatrix, IntVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardFan {
    ProjectiveSpace(usize),
    WeightedProjective(Vec<BigInt>),
    Product(Box<Fan>, Box<Fan>),
    ProjBundle {
        base: Box<Fan>,
        fiber_dim: usize,
        twists: Vec<Vec<BigInt>>,
    },
}

pub fn standard_fan(kind: &StandardFan) -> Result<Fan, FanError> {
    match kind {
        StandardFan::ProjectiveSpace(n) => projective_space(*n),
        StandardFan::WeightedProjective(w) => weighted_projective(w),
        StandardFan::Product(a, b) => Ok(product(a, b)),
        StandardFan::ProjBundle {
            base,
            fiber_dim,
            twists,
        } => proj_bundle(base, *fiber_dim, twists),
    }
}

fn simplex_cones(n: usize) -> Vec<Cone> {
    // n-subsets of {0..=n}, lexicographic: omit n, then n-1, ..., then 0.
    (0..=n)
        .rev()
        .map(|omit| Cone::new((0..=n).filter(|&i| i != omit)))
        .collect()
}

pub fn projective_space(n: usize) -> Result<Fan, FanError> {
    if n == 0 {
        return Err(FanError::ZeroRank);
    }
    let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    rays.push(IntVector::from_i64s(&vec![-1; n]));
    Ok(Fan::assemble(n, rays, simplex_cones(n)))
}

/// Fan of `P(c_0, ..., c_n)`: rays `u_0, ..., u_n` with `sum c_i u_i = 0`.
///
/// With `c_0 = 1` the rays are `u_i = e_i` and `u_0 = -sum c_i e_i`. Otherwise
/// `N` is realised as `Z^{n+1} / Z(c_0, ..., c_n)` with coordinates taken from
/// a Smith form of the weight column.
pub fn weighted_projective(weights: &[BigInt]) -> Result<Fan, FanError> {
    if weights.len() < 2 {
        return Err(FanError::InvalidWeights("need at least two weights".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(FanError::InvalidWeights("weights must be positive".into()));
    }
    if !weights
        .iter()
        .fold(BigInt::zero(), |g, w| g.gcd(w))
        .is_one()
    {
        return Err(FanError::InvalidWeights("weights must have gcd 1".into()));
    }
    let n = weights.len() - 1;
    let rays: Vec<IntVector> = if weights[0].is_one() {
        let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        rays.push(IntVector::new(weights[1..].iter().map(|c| -c).collect())?);
        rays
    } else {
        let column = IntMatrix::from_rows(weights.iter().map(|w| vec![w.clone()]).collect())?;
        let u = smith_normal_form(&column).u;
        let image = |i: usize| -> Result<IntVector, FanError> {
            let v = IntVector::new((1..=n).map(|r| u.get(r, i).clone()).collect())?;
            Ok(primitive_vector(&v)?)
        };
        let mut rays = (1..=n).map(image).collect::<Result<Vec<_>, _>>()?;
        rays.push(image(0)?);
        rays
    };
    Fan::new(
        n,
        rays,
        simplex_cones(n)
            .into_iter()
            .map(|c| c.rays().to_vec())
            .collect(),
    )
}

pub fn product(a: &Fan, b: &Fan) -> Fan {
    let zero_a = IntVector::zero(a.rank());
    let zero_b = IntVector::zero(b.rank());
    let mut rays: Vec<IntVector> = a.rays().iter().map(|r| r.concat(&zero_b)).collect();
    rays.extend(b.rays().iter().map(|r| zero_a.concat(r)));
    let offset = a.num_rays();
    let cones = a
        .max_cones()
        .iter()
        .flat_map(|ca| {
            b.max_cones().iter().map(move |cb| {
                Cone::new(
                    ca.rays()
                        .iter()
                        .copied()
                        .chain(cb.rays().iter().map(|r| r + offset)),
                )
            })
        })
        .collect();
    Fan::assemble(a.rank() + b.rank(), rays, cones)
}

/// Fan of `P(O + L_1 + ... + L_n)` over the toric variety of `base`, where
/// `twists[i][tau]` is the integer `a_{tau,i}` attached to base ray `tau`:
/// base ray `u_tau` lifts to `(u_tau, a_{tau,1}, ..., a_{tau,n})`.
pub fn proj_bundle(base: &Fan, fiber_dim: usize, twists: &[Vec<BigInt>]) -> Result<Fan, FanError> {
    if fiber_dim == 0 {
        return Err(FanError::TwistShape(
            "fiber dimension must be positive".into(),
        ));
    }
    if twists.len() != fiber_dim {
        return Err(FanError::TwistShape(format!(
            "expected {fiber_dim} twist vectors, found {}",
            twists.len()
        )));
    }
    if let Some(t) = twists.iter().find(|t| t.len() != base.num_rays()) {
        return Err(FanError::TwistShape(format!(
            "twist vector has {} entries, base has {} rays",
            t.len(),
            base.num_rays()
        )));
    }
    let n = fiber_dim;
    let rank = base.rank() + n;
    let mut rays: Vec<IntVector> = base
        .rays()
        .iter()
        .enumerate()
        .map(|(tau, u)| {
            let lift =
                IntVector::new(twists.iter().map(|t| t[tau].clone()).collect()).expect("n >= 1");
            u.concat(&lift)
        })
        .collect();
    let zero_base = IntVector::zero(base.rank());
    rays.extend((0..n).map(|i| zero_base.concat(&IntVector::unit(n, i))));
    rays.push(zero_base.concat(&IntVector::from_i64s(&vec![-1; n])));

    let offset = base.num_rays();
    let fiber: Vec<usize> = (offset..offset + n + 1).collect();
    let mut cones = Vec::with_capacity(base.max_cones().len() * (n + 1));
    for sigma in base.max_cones() {
        for &omit in fiber.iter().rev() {
            let fibers = fiber.iter().copied().filter(|&f| f != omit);
            cones.push(Cone::new(sigma.rays().iter().copied().chain(fibers)));
        }
    }
    Ok(Fan::assemble(rank, rays, cones))
}
