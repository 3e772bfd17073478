//! Random inputs for property and acceptance tests.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use qsm_core::delsarte::{AtomKind, AtomicType};
use qsm_core::{ExponentMatrix, Fan, MonomialSystem, Polytope, ToricAmbient};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn hirzebruch(a: i64) -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

/// The blowup of projective 3-space used by the fixture of the same name.
pub fn blowup_fan() -> Fan {
    Fan::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, -1, -1],
            vec![0, 0, -1],
            vec![-1, 0, 0],
        ],
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 1, 4],
            vec![0, 3, 4],
            vec![1, 3, 4],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 5],
        ],
    )
    .unwrap()
}

fn random_wps_fan(rng: &mut ChaCha8Rng, n: usize) -> Option<Fan> {
    let weights: Vec<i64> = (0..=n).map(|_| rng.gen_range(1..=5)).collect();
    Fan::weighted_projective(&weights).ok()
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap()).collect()
}

/// The fan over the faces of a random simplicial polytope with primitive
/// vertices and the origin in its interior.
pub fn random_face_fan(rng: &mut ChaCha8Rng, n: usize, max_rays: usize) -> Option<Fan> {
    let count = rng.gen_range(n + 1..=max_rays);
    let pts: Vec<Vec<i64>> = (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    let p = Polytope::hull_i64(&pts).ok()?;
    if !p.is_full_dimensional() {
        return None;
    }
    let verts: Vec<Vec<i64>> = p.integer_vertices()?.iter().map(|v| to_i64(v)).collect();
    if verts.iter().any(|v| v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1) {
        return None;
    }
    let mut cones = Vec::new();
    for f in p.facets() {
        if f.offset >= num_rational::BigRational::zero() {
            return None;
        }
        let cone: Vec<usize> = (0..verts.len())
            .filter(|&i| {
                let s: i64 = f.normal.iter().zip(&verts[i]).map(|(a, b)| a.to_i64().unwrap() * b).sum();
                num_rational::BigRational::from_integer(s.into()) == f.offset
            })
            .collect();
        if cone.len() != n {
            return None;
        }
        cones.push(cone);
    }
    Fan::new(n, verts, cones).ok()
}

/// A random complete simplicial fan of the given dimension with at most
/// `max_rays` rays.
pub fn random_fan_of_dim(rng: &mut ChaCha8Rng, n: usize, max_rays: usize) -> Fan {
    loop {
        let pick = rng.gen_range(0..6);
        let fan = match (n, pick) {
            (_, 0) => Some(Fan::projective_space(n)),
            (1, _) => Some(Fan::projective_space(1)),
            (2, 1) => Some(Fan::projective_space(1).product(&Fan::projective_space(1))),
            (2, 2) => Some(hirzebruch(rng.gen_range(0..=3))),
            (3, 1) => Some(Fan::projective_space(2).product(&Fan::projective_space(1))),
            (3, 2) => Some(
                Fan::projective_space(1)
                    .product(&Fan::projective_space(1))
                    .product(&Fan::projective_space(1)),
            ),
            (3, 3) if rng.gen_bool(0.5) => Some(blowup_fan()),
            (3, 3) => Some(hirzebruch(rng.gen_range(0..=2)).product(&Fan::projective_space(1))),
            (4, 1) => Some(Fan::projective_space(2).product(&Fan::projective_space(2))),
            (4, 2) => Some(Fan::projective_space(3).product(&Fan::projective_space(1))),
            (_, 4) => random_wps_fan(rng, n),
            (_, _) if n <= 3 => random_face_fan(rng, n, max_rays.min(n + 4)),
            _ => None,
        };
        if let Some(f) = fan {
            if f.num_rays() <= max_rays {
                return f;
            }
        }
    }
}

/// A random complete simplicial fan with at most `max_rays` rays.
pub fn random_fan(rng: &mut ChaCha8Rng, max_rays: usize) -> Fan {
    let n = rng.gen_range(1..=(max_rays - 1).min(4));
    random_fan_of_dim(rng, n, max_rays)
}

/// All exponent vectors `<m, v_rho> + b_rho` with entries in `0..=max_exp`
/// for lattice points `m` in a box.
fn candidate_rows(fan: &Fan, base: &[i64], max_exp: i64) -> Vec<Vec<i64>> {
    let n = fan.lattice_rank();
    let bound = max_exp;
    let mut out = Vec::new();
    let mut m = vec![-bound; n];
    loop {
        let row: Vec<i64> = fan
            .rays()
            .iter()
            .zip(base)
            .map(|(v, b)| v.iter().zip(&m).map(|(x, y)| x * y).sum::<i64>() + b)
            .collect();
        if row.iter().all(|&a| (0..=max_exp).contains(&a)) {
            out.push(row);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            m[i] += 1;
            if m[i] <= bound {
                break;
            }
            m[i] = -bound;
            i += 1;
        }
    }
}

/// A random homogeneous system with at most `max_rows` monomials and
/// exponents at most `max_exp`. Homogeneity is automatic because all rows
/// differ from the base row by the image of a character.
pub fn random_system(rng: &mut ChaCha8Rng, amb: &Arc<ToricAmbient>, max_rows: usize, max_exp: i64) -> MonomialSystem {
    let fan = amb.fan().expect("fan ambient").clone();
    loop {
        let base: Vec<i64> = (0..fan.num_rays()).map(|_| rng.gen_range(0..=max_exp.min(4))).collect();
        let mut cands = candidate_rows(&fan, &base, max_exp);
        if cands.is_empty() {
            continue;
        }
        cands.shuffle(rng);
        let s = rng.gen_range(1..=max_rows.min(cands.len()));
        cands.truncate(s);
        return MonomialSystem::new(amb.clone(), cands).expect("homogeneous by construction");
    }
}

/// A random system on a random complete simplicial ambient.
pub fn random_fan_system(rng: &mut ChaCha8Rng, max_rays: usize, max_rows: usize, max_exp: i64) -> MonomialSystem {
    let fan = random_fan(rng, max_rays);
    let amb = Arc::new(ToricAmbient::from_fan(fan).unwrap());
    random_system(rng, &amb, max_rows, max_exp)
}

/// A random full-dimensional lattice polytope with the origin as its only
/// interior lattice point.
pub fn random_canonical_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    loop {
        let count = rng.gen_range(n + 1..=n + 5);
        let pts: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let Ok(p) = Polytope::hull_i64(&pts) else { continue };
        if p.is_full_dimensional() && p.is_canonical().unwrap() {
            return p;
        }
    }
}

/// A random sum of atomic types on `r` variables with exponents in
/// `2..=max_exp`, with variables and rows shuffled.
pub fn random_atomic_sum(rng: &mut ChaCha8Rng, r: usize, max_exp: i64) -> Vec<Vec<i64>> {
    let mut vars: Vec<usize> = (0..r).collect();
    vars.shuffle(rng);
    let mut atoms = Vec::new();
    let mut start = 0;
    while start < r {
        let len = rng.gen_range(1..=r - start);
        let kind = match len {
            1 => AtomKind::Fermat,
            _ if rng.gen_bool(0.5) => AtomKind::Chain,
            _ => AtomKind::Loop,
        };
        let variables = vars[start..start + len].to_vec();
        let exponents = (0..len).map(|_| rng.gen_range(2..=max_exp)).collect();
        atoms.push(AtomicType {
            kind,
            variables,
            exponents,
        });
        start += len;
    }
    let mut rows: Vec<Vec<i64>> = atoms.iter().flat_map(|a| a.rows(r)).collect();
    rows.shuffle(rng);
    rows
}

/// Every sum of atomic types on `0..r`, with blocks of consecutive
/// variables and exponents in `2..=max_exp`.
pub fn all_atomic_sums(r: usize, max_exp: i64) -> Vec<Vec<Vec<i64>>> {
    fn shapes(start: usize, r: usize, acc: &mut Vec<(AtomKind, usize, usize)>, out: &mut Vec<Vec<(AtomKind, usize, usize)>>) {
        if start == r {
            out.push(acc.clone());
            return;
        }
        for len in 1..=r - start {
            let kinds: &[AtomKind] = if len == 1 {
                &[AtomKind::Fermat]
            } else {
                &[AtomKind::Chain, AtomKind::Loop]
            };
            for &k in kinds {
                acc.push((k, start, len));
                shapes(start + len, r, acc, out);
                acc.pop();
            }
        }
    }
    let mut all_shapes = Vec::new();
    shapes(0, r, &mut Vec::new(), &mut all_shapes);
    let span = (max_exp - 1) as usize;
    let total = span.pow(r as u32);
    let mut out = Vec::new();
    for shape in &all_shapes {
        for code in 0..total {
            let mut c = code;
            let exps: Vec<i64> = (0..r)
                .map(|_| {
                    let e = 2 + (c % span) as i64;
                    c /= span;
                    e
                })
                .collect();
            let rows: Vec<Vec<i64>> = shape
                .iter()
                .flat_map(|&(kind, start, len)| {
                    AtomicType {
                        kind,
                        variables: (start..start + len).collect(),
                        exponents: exps[start..start + len].to_vec(),
                    }
                    .rows(r)
                })
                .collect();
            out.push(rows);
        }
    }
    out
}

/// A random square matrix with a dominant diagonal and sparse small
/// off-diagonal entries.
pub fn random_square(rng: &mut ChaCha8Rng, r: usize, max_exp: i64) -> Option<ExponentMatrix> {
    let mut rows = vec![vec![0i64; r]; r];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = rng.gen_range(2..=max_exp);
        for (j, x) in row.iter_mut().enumerate() {
            if j != i && rng.gen_bool(0.3) {
                *x = rng.gen_range(1..=2);
            }
        }
    }
    rows.shuffle(rng);
    ExponentMatrix::new(r, rows).ok()
}

/// Facets by exhaustive search: every hyperplane through `n` affinely
/// independent points of `pts` that has all points on one side. Returns
/// `(normal, offset)` with `<normal, x> >= offset` on the points, reduced
/// and deduplicated.
pub fn brute_force_facets(pts: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, i64)> {
    let n = pts[0].len();
    let mut out = BTreeSet::new();
    let idx: Vec<usize> = (0..pts.len()).collect();
    for combo in idx.into_iter().combinations(n) {
        let base = &pts[combo[0]];
        let diffs: Vec<Vec<i128>> = combo[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(base).map(|(a, b)| (a - b) as i128).collect())
            .collect();
        let normal = cross(&diffs, n);
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let vals: Vec<i128> = pts
            .iter()
            .map(|p| p.iter().zip(&normal).map(|(a, b)| *a as i128 * b).sum())
            .collect();
        let c: i128 = base.iter().zip(&normal).map(|(a, b)| *a as i128 * b).sum();
        let sign = if vals.iter().all(|&v| v >= c) {
            1
        } else if vals.iter().all(|&v| v <= c) {
            -1
        } else {
            continue;
        };
        let g = normal.iter().fold(0i128, |g, &x| g.gcd(&x));
        let nn: Vec<i64> = normal.iter().map(|&x| (sign * x / g) as i64).collect();
        out.insert((nn, (sign * c / g) as i64));
    }
    out
}

/// The generalized cross product of `n - 1` vectors in dimension `n`.
fn cross(vs: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let d = det(minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn det(m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(minor)
        })
        .sum()
}

/// Interior lattice points by brute force against the exhaustive facets.
pub fn brute_force_interior_points(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let facets = brute_force_facets(pts);
    let n = pts[0].len();
    let lo: Vec<i64> = (0..n).map(|i| pts.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|i| pts.iter().map(|p| p[i]).max().unwrap()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if facets
            .iter()
            .all(|(a, c)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() > *c)
        {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}
