//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use logcy_core::fan::standard::{product, proj_bundle, projective_space, weighted_projective};
use logcy_core::{
    star_subdivision, BottStage, BottTowerSpec, Fan, FanMorphism, IntMatrix, IntVector, PlanePair,
    Rational, Triangle,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

pub fn p1() -> Fan {
    projective_space(1).unwrap()
}

pub fn hirzebruch(d: i64) -> Fan {
    proj_bundle(&p1(), 1, &[big(&[0, d])]).unwrap()
}

/// `[I | 0]`: the projection onto the first `base` coordinates.
pub fn projection(total: usize, base: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(base, total);
    for i in 0..base {
        m.set(i, i, BigInt::one());
    }
    m
}

pub fn bundle_morphism(base: &Fan, fiber_dim: usize, twists: &[Vec<BigInt>]) -> FanMorphism {
    let total = proj_bundle(base, fiber_dim, twists).unwrap();
    let m = projection(total.rank(), base.rank());
    FanMorphism::new(total, base.clone(), m).unwrap()
}

pub fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Q {
    let d = rng.gen_range(1..=6);
    q(rng.gen_range(lo * d..=hi * d), d)
}

pub fn unit_rational(rng: &mut ChaCha8Rng) -> Q {
    small_rational(rng, 0, 1)
}

pub fn base_fans(rank: usize) -> Vec<Fan> {
    let w = |xs: &[i64]| weighted_projective(&big(xs)).unwrap();
    match rank {
        2 => vec![
            projective_space(2).unwrap(),
            product(&p1(), &p1()),
            w(&[1, 1, 2]),
            w(&[1, 2, 3]),
            w(&[2, 3, 5]),
            hirzebruch(2),
        ],
        3 => vec![
            projective_space(3).unwrap(),
            product(&p1(), &projective_space(2).unwrap()),
            product(&product(&p1(), &p1()), &p1()),
            w(&[1, 1, 1, 2]),
            w(&[1, 2, 3, 5]),
            proj_bundle(&projective_space(2).unwrap(), 1, &[big(&[1, 0, -1])]).unwrap(),
        ],
        _ => panic!("no base fans of rank {rank}"),
    }
}

/// A primitive vector with coordinates in `[-3, 3]` that is not yet a ray.
pub fn fresh_primitive(rng: &mut ChaCha8Rng, fan: &Fan) -> IntVector {
    loop {
        let v: Vec<i64> = (0..fan.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        let v = IntVector::from_i64s(&v);
        if !v.is_zero() && v.is_primitive() && fan.ray_index(&v).is_none() {
            return v;
        }
    }
}

/// A complete simplicial fan: a standard fan refined by up to two random
/// star subdivisions.
pub fn random_complete_fan(rng: &mut ChaCha8Rng, rank: usize) -> Fan {
    let bases = base_fans(rank);
    let mut fan = bases[rng.gen_range(0..bases.len())].clone();
    for _ in 0..rng.gen_range(0..=2) {
        let v = fresh_primitive(rng, &fan);
        fan = star_subdivision(&fan, &v).unwrap().0;
    }
    fan
}

pub fn random_twists(rng: &mut ChaCha8Rng, fiber_dim: usize, base_rays: usize) -> Vec<Vec<BigInt>> {
    (0..fiber_dim)
        .map(|_| {
            (0..base_rays)
                .map(|_| BigInt::from(rng.gen_range(-3..=3)))
                .collect()
        })
        .collect()
}

pub fn random_bott_spec(rng: &mut ChaCha8Rng, max_rank: usize) -> BottTowerSpec {
    let mut stages = Vec::new();
    let mut rank = 0;
    let mut rays = 0;
    loop {
        let room = max_rank - rank;
        let dim = rng.gen_range(1..=room.min(3));
        let twists = if stages.is_empty() {
            Vec::new()
        } else {
            random_twists(rng, dim, rays)
        };
        stages.push(BottStage { dim, twists });
        rank += dim;
        rays += dim + 1;
        if rank == max_rank || rng.gen_bool(0.35) {
            return BottTowerSpec { stages };
        }
    }
}

/// Base fans for random bundles: P1, P2, P1 x P1.
pub fn bundle_bases() -> Vec<Fan> {
    vec![p1(), projective_space(2).unwrap(), product(&p1(), &p1())]
}

// ---------------------------------------------------------------------------
// Plane arrangements

pub fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Log canonicity of `sum b_i L_i` checked directly: coefficients at most
/// one, and at the meeting point of every two lines the coefficients of all
/// lines through it sum to at most two.
pub fn lc_oracle(lines: &[[Q; 3]], coeffs: &[Q]) -> bool {
    if coeffs.iter().any(|b| *b > Q::one()) {
        return false;
    }
    let two = Q::from_integer(2.into());
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = cross(&lines[i], &lines[j]);
            let mult: Q = (0..lines.len())
                .filter(|&k| dot(&p, &lines[k]).is_zero())
                .map(|k| coeffs[k].clone())
                .sum();
            if mult > two {
                return false;
            }
        }
    }
    true
}

fn peeled(coeffs: &[Q], t: &Triangle, lambda: &Q) -> Vec<Q> {
    let scale = (Q::one() - lambda).recip();
    coeffs
        .iter()
        .enumerate()
        .map(|(l, b)| {
            if t.contains(l) {
                (b - lambda) * &scale
            } else {
                b * &scale
            }
        })
        .collect()
}

/// The rational with least denominator in `[lo, hi]`, `0 <= lo <= hi`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &fl + Q::one() <= *hi {
        return fl + Q::one();
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// `lambda2` by brute force: scan `lambda = k/200` for the last value whose
/// peeled pair passes [`lc_oracle`], bisect the boundary 64 times and read
/// off the simplest rational left in the bracket.
pub fn lambda2_oracle(pair: &PlanePair, t: &Triangle) -> Q {
    let lambda1 = t
        .lines()
        .iter()
        .map(|&l| pair.coeffs()[l].clone())
        .min()
        .unwrap();
    if lambda1.is_one() {
        return Q::one();
    }
    let lc_at = |lambda: &Q| lc_oracle(pair.lines(), &peeled(pair.coeffs(), t, lambda));
    if lc_at(&lambda1) {
        return lambda1;
    }
    let steps = Q::from_integer(200.into());
    let mut lo = Q::zero();
    let mut hi = lambda1.clone();
    let mut k = 1;
    loop {
        let lambda = Q::from_integer(k.into()) / &steps;
        if lambda >= lambda1 {
            break;
        }
        if !lc_at(&lambda) {
            hi = lambda;
            break;
        }
        lo = lambda;
        k += 1;
    }
    for _ in 0..64 {
        let mid = (&lo + &hi) / Q::from_integer(2.into());
        if lc_at(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    simplest_between(&lo, &hi)
}

fn random_point(rng: &mut ChaCha8Rng) -> [Q; 3] {
    loop {
        let p = [0; 3].map(|_| Q::from_integer(rng.gen_range(-3i64..=3).into()));
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

/// A log canonical arrangement of 3 to `max_lines` lines with at least one
/// associated triangle. Some lines are forced through shared points so that
/// higher multiplicities occur.
pub fn random_arrangement(rng: &mut ChaCha8Rng, max_lines: usize) -> PlanePair {
    loop {
        let n = rng.gen_range(3..=max_lines);
        let special: Vec<[Q; 3]> = (0..rng.gen_range(0..=2))
            .map(|_| random_point(rng))
            .collect();
        let mut lines: Vec<[Q; 3]> = Vec::new();
        let mut attempts = 0;
        while lines.len() < n && attempts < 100 {
            attempts += 1;
            let l = if !special.is_empty() && rng.gen_bool(0.5) {
                cross(
                    &special[rng.gen_range(0..special.len())],
                    &random_point(rng),
                )
            } else {
                random_point(rng)
            };
            let Some(lead) = l.iter().find(|x| !x.is_zero()).cloned() else {
                continue;
            };
            let l = l.map(|x| x / &lead);
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
        if lines.len() < 3 {
            continue;
        }
        let coeffs: Vec<Q> = lines
            .iter()
            .map(|_| {
                // Skewed towards larger coefficients so point constraints bind.
                let d = [2i64, 3, 4, 6][rng.gen_range(0..4)];
                q(rng.gen_range((d + 1) / 2..=d), d)
            })
            .collect();
        if !lc_oracle(&lines, &coeffs) {
            continue;
        }
        let pair = PlanePair::new(lines, coeffs).unwrap();
        if !pair.associated_triangles().is_empty() {
            return pair;
        }
    }
}

/// The four concurrent lines and two general lines, all with coefficient 1/2.
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
        vec![q(1, 2); 6],
    )
    .unwrap()
}

/// `<m, v>` for `m` solving `<m, u_i> = 1 - b_i` on the rays of a maximal
/// cone containing `v`: the log discrepancy computed on the dual side.
pub fn dual_discrepancy(fan: &Fan, coeffs: &[Q], v: &IntVector) -> Q {
    let n = fan.rank();
    for cone in fan.max_cones() {
        // Rows <u_i, .> = 1 - b_i, solved by Gauss-Jordan elimination.
        let mut rows: Vec<Vec<Q>> = cone
            .rays()
            .iter()
            .map(|&r| {
                let mut row: Vec<Q> = fan
                    .ray(r)
                    .coords()
                    .iter()
                    .cloned()
                    .map(Q::from_integer)
                    .collect();
                row.push(Q::one() - &coeffs[r]);
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !rows[i][c].is_zero()).unwrap();
            rows.swap(c, p);
            let inv = rows[c][c].recip();
            for x in rows[c].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != c && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    let pivot = rows[c].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
        }
        let m: Vec<Q> = rows.iter().map(|r| r[n].clone()).collect();
        // v lies in this cone iff its coordinates in the cone's rays are >= 0.
        if fan
            .cone_coordinates(cone, v)
            .is_some_and(|x| x.iter().all(|c| !c.is_negative()))
        {
            return m
                .iter()
                .zip(v.coords())
                .map(|(mi, vi)| mi * Q::from_integer(vi.clone()))
                .sum();
        }
    }
    panic!("{v} lies outside the support");
}
