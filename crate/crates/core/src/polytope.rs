//! Exact convex polytopes: hulls, facets, lattice points, polar duals and
//! normal fans.
//!
//! A [`Polytope`] is stored in the ambient space it was given in. When the
//! hull is lower dimensional its affine hull is recorded as explicit
//! equations next to the facet inequalities.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::exact::{self, Exact};
use crate::linalg::{integer_kernel, IntMatrix};
use crate::toric::Fan;

/// The inequality `<normal, x> >= offset`, with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

/// The equation `<normal, x> = value` of the affine hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub normal: Vec<BigInt>,
    pub value: BigRational,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    facets: Vec<Facet>,
    equations: Vec<Equation>,
}

/// A polytope whose vertices are lattice points.
pub type LatticePolytope = Polytope;
/// A polytope with possibly rational vertices, such as a polar dual.
pub type RationalPolytope = Polytope;

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * BigRational::from_integer(x.clone()))
        .sum()
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

impl Polytope {
    /// Convex hull of integer points.
    pub fn hull(points: &[Vec<BigInt>]) -> Result<Polytope> {
        let rat: Vec<Vec<BigRational>> = points.iter().map(|p| to_rational(p)).collect();
        Self::hull_rational(&rat)
    }

    pub fn hull_i64(points: &[Vec<i64>]) -> Result<Polytope> {
        let big: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::hull(&big)
    }

    /// Convex hull of rational points.
    pub fn hull_rational(points: &[Vec<BigRational>]) -> Result<Polytope> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let scale = points
            .iter()
            .flatten()
            .fold(<BigInt as One>::one(), |l, x| l.lcm(x.denom()));
        let mut ints: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| p.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
            .collect();
        ints.sort();
        ints.dedup();
        Ok(build(ints, &scale, n))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    /// Vertices as integer vectors, if they all are.
    pub fn integer_vertices(&self) -> Option<Vec<Vec<BigInt>>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.ambient_dim
            && self.equations.iter().all(|e| dot_rat(&e.normal, x) == e.value)
            && self.facets.iter().all(|f| dot_rat(&f.normal, x) >= f.offset)
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.contains(&to_rational(x))
    }

    /// Strict inequality on every facet. Only full-dimensional polytopes
    /// have interior points.
    pub fn interior_contains(&self, x: &[BigRational]) -> bool {
        self.is_full_dimensional()
            && x.len() == self.ambient_dim
            && self.facets.iter().all(|f| dot_rat(&f.normal, x) > f.offset)
    }

    /// Is `other` contained in `self`, checked on the vertices of `other`.
    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// All lattice points, in lexicographic order, by a bounding-box scan.
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        let n = self.ambient_dim;
        let lo: Vec<BigInt> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j].ceil().to_integer()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j].floor().to_integer()).max().unwrap())
            .collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Vec::new();
        }
        let mut eqs = Vec::new();
        for e in &self.equations {
            if !e.value.is_integer() {
                return Vec::new();
            }
            eqs.push((&e.normal, e.value.to_integer()));
        }
        let ineqs: Vec<(&Vec<BigInt>, BigInt)> = self
            .facets
            .iter()
            .map(|f| (&f.normal, f.offset.ceil().to_integer()))
            .collect();

        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if eqs.iter().all(|(nrm, v)| &dot_int(nrm, &x) == v)
                && ineqs.iter().all(|(nrm, c)| &dot_int(nrm, &x) >= c)
            {
                out.push(x.clone());
            }
            // odometer step, last coordinate fastest
            let mut j = n;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if x[j] < hi[j] {
                    x[j] += 1;
                    for (xi, li) in x[j + 1..].iter_mut().zip(&lo[j + 1..]) {
                        *xi = li.clone();
                    }
                    break;
                }
            }
        }
    }

    pub fn interior_lattice_points(&self) -> Vec<Vec<BigInt>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        self.lattice_points()
            .into_iter()
            .filter(|p| self.interior_contains(&to_rational(p)))
            .collect()
    }

    fn origin_interior(&self) -> bool {
        let zero = vec![BigRational::zero(); self.ambient_dim];
        self.interior_contains(&zero)
    }

    /// `P* = {y : <x, y> >= -1 for all x in P}`.
    pub fn polar_dual(&self) -> Result<Polytope> {
        if !self.origin_interior() {
            return Err(Error::NotInteriorOrigin);
        }
        let verts: Vec<Vec<BigRational>> = self
            .facets
            .iter()
            .map(|f| {
                let s = -f.offset.clone();
                f.normal
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()) / &s)
                    .collect()
            })
            .collect();
        Self::hull_rational(&verts)
    }

    /// True iff the origin is the only interior lattice point.
    pub fn is_canonical(&self) -> Result<bool> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDim {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        let interior = self.interior_lattice_points();
        Ok(interior.len() == 1 && interior[0].iter().all(Zero::is_zero))
    }

    /// Rays are the primitive inner facet normals in facet order; the maximal
    /// cone of a vertex collects the facets through it.
    pub fn normal_fan(&self) -> Result<Fan> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDim {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        let rays: Vec<Vec<BigInt>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        let cones: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| dot_rat(&f.normal, v) == f.offset)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Fan::from_big(self.ambient_dim, rays, cones)
    }

    /// Parse one vertex per line (`p/q` allowed), `#` comments.
    pub fn from_text(text: &str) -> Result<Polytope> {
        let mut pts: Vec<Vec<BigRational>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| parse_rational(tok).ok_or_else(|| Error::parse(idx + 1, format!("not a number: {tok}"))))
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = pts.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(
                        idx + 1,
                        format!("expected {} coordinates, got {}", first.len(), row.len()),
                    ));
                }
            }
            pts.push(row);
        }
        Self::hull_rational(&pts)
    }

    /// Vertices, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("ambient_dim", &self.ambient_dim)
            .field(
                "vertices",
                &self
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                    .collect::<Vec<_>>(),
            )
            .field("facets", &self.facets.len())
            .finish()
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if Zero::is_zero(&q) {
                return None;
            }
            Some(BigRational::new(p.parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(tok.parse().ok()?)),
    }
}

fn build(points: Vec<Vec<BigInt>>, scale: &BigInt, n: usize) -> Polytope {
    let scale_r = BigRational::from_integer(scale.clone());
    let p0 = points[0].clone();
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect())
        .collect();
    let ech = exact::echelon(diffs.clone(), n).expect("BigInt elimination cannot overflow");
    let k = ech.rank;
    let pivots = ech.pivot_cols;

    let diff_m = IntMatrix::from_rows_with_cols(n, diffs).expect("rectangular");
    let mut equations: Vec<Equation> = integer_kernel(&diff_m)
        .into_iter()
        .map(|nrm| {
            let nrm = orient(nrm);
            let value = BigRational::from_integer(dot_int(&nrm, &p0)) / &scale_r;
            Equation { normal: nrm, value }
        })
        .collect();
    equations.sort_by(|a, b| a.normal.cmp(&b.normal));

    let unscale = |p: &[BigInt]| -> Vec<BigRational> {
        p.iter()
            .map(|x| BigRational::new(x.clone(), scale.clone()))
            .collect()
    };

    if k == 0 {
        return Polytope {
            ambient_dim: n,
            dim: 0,
            vertices: vec![unscale(&p0)],
            facets: Vec::new(),
            equations,
        };
    }

    let projected: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| pivots.iter().map(|&j| p[j].clone()).collect())
        .collect();
    let raw = match exact::to_small(&projected).and_then(|small| facets_dd(&small, k)) {
        Some(f) => f.iter().map(|r| r.iter().map(Exact::to_big).collect()).collect(),
        None => facets_dd(&projected, k).expect("BigInt arithmetic cannot overflow"),
    };

    let mut vertices = Vec::new();
    for (p, q) in points.iter().zip(&projected) {
        let tight: Vec<Vec<BigInt>> = raw
            .iter()
            .filter(|r: &&Vec<BigInt>| dot_int(&r[..k], q) == r[k])
            .map(|r| r[..k].to_vec())
            .collect();
        let tight_m = IntMatrix::from_rows_with_cols(k, tight).expect("rectangular");
        if crate::linalg::rank_rational(&tight_m) == k {
            vertices.push(unscale(p));
        }
    }
    vertices.sort();

    let mut facets: Vec<Facet> = raw
        .into_iter()
        .map(|r| {
            let mut normal = vec![<BigInt as Zero>::zero(); n];
            for (i, &j) in pivots.iter().enumerate() {
                normal[j] = r[i].clone();
            }
            Facet {
                normal,
                offset: BigRational::from_integer(r[k].clone()) / &scale_r,
            }
        })
        .collect();
    facets.sort();

    Polytope {
        ambient_dim: n,
        dim: k,
        vertices,
        facets,
        equations,
    }
}

/// Make the first nonzero entry positive.
fn orient(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !Zero::is_zero(*x)) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

fn make_primitive<T: Exact>(v: &mut [T]) -> Option<()> {
    let mut g = T::nil();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_nil() && g != T::unit() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g)?;
        }
    }
    Some(())
}

fn dot_t<T: Exact>(a: &[T], b: &[T]) -> Option<T> {
    let mut s = T::nil();
    for (x, y) in a.iter().zip(b) {
        s = s.add(&x.mul(y)?)?;
    }
    Some(s)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray<T> {
    y: Vec<T>,
    zeros: Bits,
}

/// Facets of the hull of full-dimensional points in `Z^k` as rows
/// `(normal, offset)`, via the double description method on the cone
/// `{(n, c) : <n, p> - c >= 0 for every point p}`. Returns `None` on overflow.
fn facets_dd<T: Exact>(points: &[Vec<T>], k: usize) -> Option<Vec<Vec<T>>> {
    let m = points.len();
    let d = k + 1;
    let minus_one = T::unit().neg()?;
    let cons: Vec<Vec<T>> = points
        .iter()
        .map(|p| {
            let mut a = p.clone();
            a.push(minus_one.clone());
            a
        })
        .collect();

    // pick d linearly independent constraints
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    for i in 0..m {
        let mut rows: Vec<Vec<T>> = chosen.iter().map(|&c| cons[c].clone()).collect();
        rows.push(cons[i].clone());
        if exact::rank(rows, d)? == chosen.len() + 1 {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    debug_assert_eq!(chosen.len(), d, "points are not full dimensional");

    let basis: Vec<Vec<T>> = chosen.iter().map(|&c| cons[c].clone()).collect();
    let det_sign = exact::det(basis.clone())?.signum();
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(d);
    for j in 0..d {
        // column j of the adjugate
        let mut y = Vec::with_capacity(d);
        for i in 0..d {
            let minor: Vec<Vec<T>> = basis
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != i)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let mut v = exact::det(minor)?;
            if (i + j) % 2 == 1 {
                v = v.neg()?;
            }
            if det_sign < 0 {
                v = v.neg()?;
            }
            y.push(v);
        }
        make_primitive(&mut y)?;
        let mut zeros = Bits::new(m);
        for (l, &c) in chosen.iter().enumerate() {
            if l != j {
                zeros.set(c);
            }
        }
        rays.push(Ray { y, zeros });
    }

    let mut done = vec![false; m];
    for &c in &chosen {
        done[c] = true;
    }
    for i in 0..m {
        if done[i] {
            continue;
        }
        done[i] = true;
        let vals: Vec<T> = rays
            .iter()
            .map(|r| dot_t(&cons[i], &r.y))
            .collect::<Option<_>>()?;
        if vals.iter().all(|v| v.signum() >= 0) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_nil() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| vals[r].signum() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| vals[r].signum() < 0).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let mut y = Vec::with_capacity(d);
                for (a, b) in rays[q].y.iter().zip(&rays[p].y) {
                    y.push(vals[p].mul(a)?.sub(&vals[q].mul(b)?)?);
                }
                make_primitive(&mut y)?;
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray { y, zeros });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            match v.signum() {
                1 => next.push(r),
                0 => {
                    let mut r = r;
                    r.zeros.set(i);
                    next.push(r);
                }
                _ => {}
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut out: Vec<Vec<T>> = rays
        .into_iter()
        .filter(|r| r.y[..k].iter().any(|x| !x.is_nil()))
        .map(|r| r.y)
        .collect();
    out.dedup();
    Some(out)
}
