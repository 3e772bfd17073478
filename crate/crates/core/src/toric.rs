//! Toric ambients: fans, Cox gradings, irrelevant loci and relevant strata.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, in_row_space, rank_rational, smith_normal_form, Domain, IntMatrix};
use crate::polytope::Polytope;
use crate::varset::VarSet;

/// A fan given by primitive rays and maximal cones (as 0-based ray sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    lattice_rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<VarSet>,
}

impl Fan {
    pub fn new(lattice_rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let r = rays.len();
        if r == 0 {
            return Err(Error::EmptyInput);
        }
        if r > VarSet::MAX_VARS {
            return Err(Error::TooManyVariables(r));
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != lattice_rank {
                return Err(Error::DimensionMismatch {
                    expected: lattice_rank,
                    got: ray.len(),
                });
            }
            let g = ray.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(Error::InvalidFan(format!("ray {} is not primitive", i + 1)));
            }
        }
        let mut uniq = HashSet::new();
        if let Some(i) = rays.iter().position(|v| !uniq.insert(v.clone())) {
            return Err(Error::InvalidFan(format!("ray {} is repeated", i + 1)));
        }
        if cones.is_empty() {
            return Err(Error::InvalidFan("no maximal cones".into()));
        }
        let mut max_cones = Vec::with_capacity(cones.len());
        for cone in &cones {
            if cone.is_empty() {
                return Err(Error::InvalidFan("empty cone".into()));
            }
            if let Some(&i) = cone.iter().find(|&&i| i >= r) {
                return Err(Error::InvalidFan(format!("cone refers to missing ray {}", i + 1)));
            }
            max_cones.push(VarSet::from_indices(cone.iter().copied()));
        }
        for (a, ca) in max_cones.iter().enumerate() {
            for (b, cb) in max_cones.iter().enumerate() {
                if a != b && ca.is_subset(*cb) {
                    return Err(Error::InvalidFan(format!(
                        "cone {} is contained in cone {}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let used = max_cones.iter().fold(VarSet::empty(), |u, c| u.union(*c));
        if used != VarSet::full(r) {
            return Err(Error::InvalidFan("some ray lies in no maximal cone".into()));
        }
        let fan = Fan {
            lattice_rank,
            rays,
            max_cones,
        };
        for (i, c) in fan.max_cones.iter().enumerate() {
            if !fan.is_strongly_convex(*c) {
                return Err(Error::InvalidFan(format!("cone {} is not strongly convex", i + 1)));
            }
        }
        Ok(fan)
    }

    pub(crate) fn from_big(lattice_rank: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let small = rays
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidFan("ray coordinates out of range".into()))?;
        Fan::new(lattice_rank, small, cones)
    }

    /// The standard fan of projective `n`-space: rays `e_1..e_n, -(e_1+..+e_n)`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).expect("standard fan")
    }

    /// Product fan; the rays of `self` come first.
    pub fn product(&self, other: &Fan) -> Fan {
        let (n1, n2) = (self.lattice_rank, other.lattice_rank);
        let mut rays = Vec::new();
        for v in &self.rays {
            let mut w = v.clone();
            w.extend(std::iter::repeat_n(0, n2));
            rays.push(w);
        }
        for v in &other.rays {
            let mut w = vec![0; n1];
            w.extend(v.iter().copied());
            rays.push(w);
        }
        let r1 = self.rays.len();
        let mut cones = Vec::new();
        for a in &self.max_cones {
            for b in &other.max_cones {
                let mut c = a.to_vec();
                c.extend(b.iter().map(|i| i + r1));
                cones.push(c);
            }
        }
        Fan::new(n1 + n2, rays, cones).expect("product of fans")
    }

    /// The fan of the weighted projective space with the given weights.
    /// Fails when the weights are not well formed (non-primitive rays).
    pub fn weighted_projective(weights: &[i64]) -> Result<Fan> {
        if weights.len() < 2 || weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidFan("weights must be positive, at least two".into()));
        }
        let w = IntMatrix::from_i64_rows(&[weights.to_vec()])?;
        let kernel = linalg::integer_kernel(&w);
        let n = weights.len() - 1;
        let rays: Vec<Vec<BigInt>> = (0..=n)
            .map(|i| kernel.iter().map(|col| col[i].clone()).collect())
            .collect();
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::from_big(n, rays, cones)
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[VarSet] {
        &self.max_cones
    }

    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(
            self.lattice_rank,
            self.rays.iter().map(|r| linalg::big_vec(r)).collect(),
        )
        .expect("rectangular")
    }

    fn cone_polytope(&self, cone: VarSet) -> Polytope {
        let mut pts = vec![vec![0i64; self.lattice_rank]];
        pts.extend(cone.iter().map(|i| self.rays[i].clone()));
        Polytope::hull_i64(&pts).expect("nonempty")
    }

    fn is_strongly_convex(&self, cone: VarSet) -> bool {
        let zero = vec![num_rational::BigRational::zero(); self.lattice_rank];
        self.cone_polytope(cone).vertices().contains(&zero)
    }

    fn cone_dim(&self, cone: VarSet) -> usize {
        let rows: Vec<Vec<i64>> = cone.iter().map(|i| self.rays[i].clone()).collect();
        linalg::rank_of_rows(&rows, self.lattice_rank)
    }

    /// Facets of a full-dimensional cone, as the sets of rays on them.
    fn cone_facets(&self, cone: VarSet) -> Vec<VarSet> {
        let p = self.cone_polytope(cone);
        p.facets()
            .iter()
            .filter(|f| f.offset.is_zero())
            .map(|f| {
                VarSet::from_indices(cone.iter().filter(|&i| {
                    let s: BigInt = f
                        .normal
                        .iter()
                        .zip(&self.rays[i])
                        .map(|(a, &b)| a * b)
                        .sum();
                    s.is_zero()
                }))
            })
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|&c| self.cone_dim(c) == c.len())
    }

    /// Every maximal cone is full dimensional and every facet of a maximal
    /// cone lies in exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        let n = self.lattice_rank;
        if n == 0 || self.max_cones.iter().any(|&c| self.cone_dim(c) != n) {
            return false;
        }
        let mut count: std::collections::HashMap<VarSet, usize> = Default::default();
        for &c in &self.max_cones {
            for f in self.cone_facets(c) {
                *count.entry(f).or_default() += 1;
            }
        }
        count.values().all(|&k| k == 2)
    }

    pub fn is_fake_wps(&self) -> bool {
        self.rays.len() == self.lattice_rank + 1 && self.is_simplicial() && self.is_complete()
    }

    /// All ray sets contained in some maximal cone.
    pub fn faces(&self) -> Vec<VarSet> {
        let mut set = BTreeSet::new();
        for c in &self.max_cones {
            set.extend(c.subsets());
        }
        set.into_iter().collect()
    }

    pub fn is_face(&self, c: VarSet) -> bool {
        self.max_cones.iter().any(|m| c.is_subset(*m))
    }

    /// Minimal ray sets contained in no maximal cone.
    pub fn irrelevant_components(&self) -> Vec<VarSet> {
        let r = self.rays.len();
        let faces = self.faces();
        let face_set: HashSet<VarSet> = faces.iter().copied().collect();
        let mut out = BTreeSet::new();
        for f in &faces {
            for i in 0..r {
                if f.contains(i) {
                    continue;
                }
                let mut c = *f;
                c.insert(i);
                if face_set.contains(&c) {
                    continue;
                }
                if c.iter().all(|j| {
                    let mut d = c;
                    d.remove(j);
                    face_set.contains(&d)
                }) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Cox grading via the Smith normal form of the ray matrix.
    pub fn class_group(&self) -> Result<Grading> {
        let m = self.ray_matrix();
        let snf = smith_normal_form(&m);
        let rank = snf.rank();
        if rank < self.lattice_rank {
            return Err(Error::DegenerateFan);
        }
        let r = self.rays.len();
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d > &BigInt::one() {
                let w: Vec<BigInt> = snf.u.row(i).iter().map(|x| x.mod_floor(d)).collect();
                torsion.push((d.clone(), w));
            }
        }
        let mut free_rows: Vec<Vec<BigInt>> = (rank..r).map(|i| snf.u.row(i).to_vec()).collect();
        for row in &mut free_rows {
            let s: BigInt = row.iter().sum();
            if s.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        Grading::new(IntMatrix::from_rows_with_cols(r, free_rows)?, torsion)
    }
}

/// The degree map of the Cox ring: a free part (rows of a matrix) and
/// cyclic torsion parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    free_part: IntMatrix,
    torsion: Vec<(BigInt, Vec<BigInt>)>,
}

/// A degree in the class group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Degree {
    pub free: Vec<BigInt>,
    pub torsion: Vec<(BigInt, BigInt)>,
}

impl Degree {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|(_, x)| x.is_zero())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))?;
        for (q, x) in &self.torsion {
            write!(f, " + {x} mod {q}")?;
        }
        Ok(())
    }
}

impl Grading {
    pub fn new(free_part: IntMatrix, torsion: Vec<(BigInt, Vec<BigInt>)>) -> Result<Grading> {
        let r = free_part.cols();
        let mut reduced = Vec::with_capacity(torsion.len());
        for (q, w) in torsion {
            if q < BigInt::from(2) {
                return Err(Error::InvalidAmbient(format!("torsion modulus {q} is below 2")));
            }
            if w.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: w.len(),
                });
            }
            let w = w.iter().map(|x| x.mod_floor(&q)).collect();
            reduced.push((q, w));
        }
        Ok(Grading {
            free_part,
            torsion: reduced,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.free_part.cols()
    }

    pub fn free_part(&self) -> &IntMatrix {
        &self.free_part
    }

    pub fn free_rank(&self) -> usize {
        self.free_part.rows()
    }

    pub fn torsion(&self) -> &[(BigInt, Vec<BigInt>)] {
        &self.torsion
    }

    /// Same free part, different torsion.
    pub fn with_torsion(&self, torsion: Vec<(BigInt, Vec<BigInt>)>) -> Result<Grading> {
        Grading::new(self.free_part.clone(), torsion)
    }

    pub fn degree(&self, v: &[i64]) -> Degree {
        let free = (0..self.free_part.rows())
            .map(|i| {
                self.free_part
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, &b)| a * b)
                    .sum()
            })
            .collect();
        let torsion = self
            .torsion
            .iter()
            .map(|(q, w)| {
                let s: BigInt = w.iter().zip(v).map(|(a, &b)| a * b).sum();
                (q.clone(), s.mod_floor(q))
            })
            .collect();
        Degree { free, torsion }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Fan(Fan),
    Quotient,
}

/// A toric variety as a quotient of an open subset of affine space: the Cox
/// grading together with the irrelevant locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricAmbient {
    presentation: Presentation,
    grading: Grading,
    irrelevant: Vec<VarSet>,
    names: Vec<String>,
}

fn default_names(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("x{i}")).collect()
}

impl ToricAmbient {
    pub fn from_fan(fan: Fan) -> Result<ToricAmbient> {
        let grading = fan.class_group()?;
        let irrelevant = fan.irrelevant_components();
        let r = fan.num_rays();
        Ok(ToricAmbient {
            presentation: Presentation::Fan(fan),
            grading,
            irrelevant,
            names: default_names(r),
        })
    }

    /// A quotient presentation. The irrelevant components must be nonempty
    /// and irredundant.
    pub fn from_quotient(grading: Grading, irrelevant: Vec<VarSet>) -> Result<ToricAmbient> {
        let r = grading.num_vars();
        if r == 0 {
            return Err(Error::EmptyInput);
        }
        if r > VarSet::MAX_VARS {
            return Err(Error::TooManyVariables(r));
        }
        if irrelevant.is_empty() {
            return Err(Error::InvalidAmbient("no irrelevant components".into()));
        }
        for (a, ca) in irrelevant.iter().enumerate() {
            if ca.is_empty() || !ca.is_subset(VarSet::full(r)) {
                return Err(Error::InvalidAmbient(format!("irrelevant component {} is invalid", a + 1)));
            }
            for (b, cb) in irrelevant.iter().enumerate() {
                if a != b && ca.is_subset(*cb) {
                    return Err(Error::InvalidAmbient(format!(
                        "irrelevant component {} contains component {}",
                        b + 1,
                        a + 1
                    )));
                }
            }
        }
        let mut irrelevant = irrelevant;
        irrelevant.sort();
        Ok(ToricAmbient {
            presentation: Presentation::Quotient,
            grading,
            irrelevant,
            names: default_names(r),
        })
    }

    /// Fan presentation cross-checked against a given grading and irrelevant
    /// locus. The fan is authoritative; the extra data must agree with it.
    pub fn from_fan_checked(fan: Fan, grading: Option<Grading>, irrelevant: Option<Vec<VarSet>>) -> Result<ToricAmbient> {
        let amb = Self::from_fan(fan)?;
        if let Some(g) = grading {
            let ours = amb.grading.free_part();
            let theirs = g.free_part();
            if theirs.cols() != ours.cols() {
                return Err(Error::DimensionMismatch {
                    expected: ours.cols(),
                    got: theirs.cols(),
                });
            }
            let same_span = rank_rational(theirs) == ours.rows()
                && (0..theirs.rows()).all(|i| in_row_space(theirs.row(i), ours, Domain::Rationals).unwrap_or(false));
            if !same_span {
                return Err(Error::InvalidAmbient("grading does not match the fan".into()));
            }
            if let Presentation::Fan(f) = &amb.presentation {
                let rays = f.ray_matrix();
                for (q, w) in g.torsion() {
                    for j in 0..rays.cols() {
                        let s: BigInt = w.iter().zip(rays.column(j)).map(|(a, b)| a * b).sum();
                        if !s.is_multiple_of(q) {
                            return Err(Error::InvalidAmbient("torsion grading does not match the fan".into()));
                        }
                    }
                }
            }
        }
        if let Some(mut irr) = irrelevant {
            irr.sort();
            if irr != amb.irrelevant {
                return Err(Error::InvalidAmbient("irrelevant components do not match the fan".into()));
            }
        }
        Ok(amb)
    }

    /// Weighted projective space as a quotient presentation.
    pub fn weighted_projective(weights: &[i64]) -> Result<ToricAmbient> {
        if weights.is_empty() || weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidAmbient("weights must be positive".into()));
        }
        let g = Grading::new(IntMatrix::from_i64_rows(&[weights.to_vec()])?, vec![])?;
        Self::from_quotient(g, vec![VarSet::full(weights.len())])
    }

    pub fn projective_space(n: usize) -> ToricAmbient {
        Self::from_fan(Fan::projective_space(n)).expect("standard fan")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<ToricAmbient> {
        if names.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                got: names.len(),
            });
        }
        let mut seen = HashSet::new();
        if let Some(n) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidAmbient(format!("variable name {n} is repeated")));
        }
        self.names = names;
        Ok(self)
    }

    pub fn with_grading(&self, grading: Grading) -> Result<ToricAmbient> {
        if grading.num_vars() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                got: grading.num_vars(),
            });
        }
        let mut amb = self.clone();
        amb.grading = grading;
        Ok(amb)
    }

    pub fn num_vars(&self) -> usize {
        self.grading.num_vars()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn fan(&self) -> Option<&Fan> {
        match &self.presentation {
            Presentation::Fan(f) => Some(f),
            Presentation::Quotient => None,
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Dimension of the toric variety.
    pub fn dim(&self) -> usize {
        self.num_vars() - self.grading.free_rank()
    }

    pub fn irrelevant_components(&self) -> &[VarSet] {
        &self.irrelevant
    }

    pub fn display_set(&self, c: VarSet) -> String {
        c.display_with(&self.names)
    }

    pub fn is_relevant(&self, c: VarSet) -> bool {
        match &self.presentation {
            Presentation::Fan(f) => f.is_face(c),
            Presentation::Quotient => !self.irrelevant.iter().any(|k| k.is_subset(c)),
        }
    }

    /// Every relevant zero pattern, in size-then-lexicographic order.
    pub fn relevant_subsets(&self) -> Vec<VarSet> {
        if let Presentation::Fan(f) = &self.presentation {
            return f.faces();
        }
        let r = self.num_vars();
        let mut out = vec![VarSet::empty()];
        let mut frontier = vec![VarSet::empty()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in frontier {
                let start = s.iter().last().map_or(0, |m| m + 1);
                for i in start..r {
                    let mut t = s;
                    t.insert(i);
                    if self.is_relevant(t) {
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().copied());
            frontier = next;
        }
        out.sort();
        out
    }

    pub fn is_fake_wps(&self) -> bool {
        match &self.presentation {
            Presentation::Fan(f) => f.is_fake_wps(),
            Presentation::Quotient => {
                let g = self.grading.free_part();
                let r = self.num_vars();
                g.rows() == 1
                    && (g.row(0).iter().all(|x| x.is_positive()) || g.row(0).iter().all(|x| x.is_negative()))
                    && self.irrelevant == [VarSet::full(r)]
            }
        }
    }

    /// Dimension of the set of exponent vectors `m` of a fixed degree with
    /// `m_i = 0` for `i` in `c`, when nonempty: `(r - |c|)` minus the rank of
    /// the free grading columns outside `c`.
    pub fn stratum_image_dim(&self, c: VarSet) -> Result<usize> {
        if !self.is_relevant(c) {
            return Err(Error::IrrelevantStratum(c));
        }
        let outside: Vec<usize> = (0..self.num_vars()).filter(|&i| !c.contains(i)).collect();
        let rows: Vec<usize> = (0..self.grading.free_rank()).collect();
        let sub = self.grading.free_part().submatrix(&rows, &outside);
        Ok(outside.len() - rank_rational(&sub))
    }

    /// Dimension of the irrelevant locus inside the coordinate subspace
    /// `{x_i = 0, i in c}`, or `None` if they do not meet.
    pub fn irrelevant_dim_in_stratum(&self, c: VarSet) -> Option<usize> {
        let r = self.num_vars();
        self.irrelevant.iter().map(|k| r - k.union(c).len()).max()
    }

    /// Check that all exponent vectors have the same degree.
    pub fn check_homogeneous(&self, exponents: &[Vec<i64>]) -> Result<()> {
        let Some(first) = exponents.first() else {
            return Ok(());
        };
        for (i, e) in exponents.iter().enumerate().skip(1) {
            if e.len() != self.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: self.num_vars(),
                    got: e.len(),
                });
            }
            let diff: Vec<i64> = e.iter().zip(first).map(|(a, b)| a - b).collect();
            let d = self.grading.degree(&diff);
            if !d.is_zero() {
                return Err(Error::NotHomogeneous {
                    first: 1,
                    second: i + 1,
                    difference: d.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn is_homogeneous(&self, exponents: &[Vec<i64>]) -> bool {
        exponents.iter().all(|e| e.len() == self.num_vars()) && self.check_homogeneous(exponents).is_ok()
    }

    /// Parse the sectioned ambient text format.
    pub fn from_text(text: &str) -> Result<ToricAmbient> {
        crate::format::parse_ambient(text)
    }

    pub fn to_text(&self) -> String {
        crate::format::write_ambient(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix.iter().copied())
    }

    fn p2xp1() -> Fan {
        Fan::projective_space(2).product(&Fan::projective_space(1))
    }

    #[test]
    fn projective_space_class_group() {
        for n in 1..=4 {
            let g = Fan::projective_space(n).class_group().unwrap();
            assert_eq!(g.free_part().to_rows(), vec![linalg::big_vec(&vec![1; n + 1])]);
            assert!(g.torsion().is_empty());
        }
    }

    #[test]
    fn product_class_group_matches_bidegrees() {
        let g = p2xp1().class_group().unwrap();
        assert_eq!(g.free_rank(), 2);
        let expected = IntMatrix::from_i64_rows(&[vec![1, 1, 1, 0, 0], vec![0, 0, 0, 1, 1]]).unwrap();
        for i in 0..2 {
            assert!(in_row_space(g.free_part().row(i), &expected, Domain::Integers).unwrap());
            assert!(in_row_space(expected.row(i), g.free_part(), Domain::Integers).unwrap());
        }
    }

    #[test]
    fn index_two_fake_wps_has_torsion() {
        let fan = Fan::new(2, vec![vec![1, 1], vec![1, -1], vec![-3, 1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(fan.is_fake_wps());
        let g = fan.class_group().unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion().len(), 1);
        assert_eq!(g.torsion()[0].0, BigInt::from(2));
        assert_eq!(g.free_part().row(0), &linalg::big_vec(&[1, 2, 1])[..]);
    }

    #[test]
    fn irrelevant_components_of_standard_fans() {
        assert_eq!(Fan::projective_space(3).irrelevant_components(), vec![vs(&[0, 1, 2, 3])]);
        let p1p1 = Fan::projective_space(1).product(&Fan::projective_space(1));
        assert_eq!(p1p1.irrelevant_components(), vec![vs(&[0, 1]), vs(&[2, 3])]);
    }

    #[test]
    fn fake_wps_recognition() {
        assert!(Fan::projective_space(3).is_fake_wps());
        let p235 = Fan::new(2, vec![vec![1, 0], vec![1, 5], vec![-1, -3]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(p235.is_fake_wps());
        let w = p235.class_group().unwrap();
        let row: Vec<i64> = w.free_part().row(0).iter().map(|x| x.to_i64().unwrap()).collect();
        let mut sorted = row.clone();
        sorted.sort();
        assert_eq!(sorted, vec![2, 3, 5]);
        let p1p1 = Fan::projective_space(1).product(&Fan::projective_space(1));
        assert!(p1p1.is_complete());
        assert!(!p1p1.is_fake_wps());
    }

    #[test]
    fn incomplete_fan_detected() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!fan.is_complete());
    }

    #[test]
    fn invalid_fans_rejected() {
        assert!(Fan::new(2, vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]).is_err());
        assert!(Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0, 1]]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0]]).is_err());
    }

    #[test]
    fn weighted_projective_fan() {
        let f = Fan::weighted_projective(&[1, 1, 2]).unwrap();
        assert!(f.is_fake_wps());
        let g = f.class_group().unwrap();
        assert!(g.torsion().is_empty());
        assert_eq!(g.free_part().row(0), &linalg::big_vec(&[1, 1, 2])[..]);
    }

    #[test]
    fn relevant_subsets_of_projective_plane() {
        let amb = ToricAmbient::projective_space(2);
        let rel = amb.relevant_subsets();
        assert_eq!(rel.len(), 7);
        assert!(!rel.contains(&vs(&[0, 1, 2])));
    }

    #[test]
    fn quotient_and_fan_relevance_agree() {
        let fan = p2xp1();
        let amb = ToricAmbient::from_fan(fan.clone()).unwrap();
        let q = ToricAmbient::from_quotient(amb.grading().clone(), fan.irrelevant_components()).unwrap();
        assert_eq!(amb.relevant_subsets(), q.relevant_subsets());
    }

    #[test]
    fn image_dims_and_irrelevant_dims() {
        let p3 = ToricAmbient::projective_space(3);
        assert_eq!(p3.stratum_image_dim(vs(&[0])).unwrap(), 2);
        assert_eq!(p3.irrelevant_dim_in_stratum(vs(&[1])), Some(0));
        assert!(matches!(p3.stratum_image_dim(vs(&[0, 1, 2, 3])), Err(Error::IrrelevantStratum(_))));
        let p1p1 = ToricAmbient::from_fan(Fan::projective_space(1).product(&Fan::projective_space(1))).unwrap();
        assert_eq!(p1p1.irrelevant_dim_in_stratum(vs(&[0])), Some(2));
        assert_eq!(p1p1.irrelevant_dim_in_stratum(vs(&[0, 1])), Some(2));
    }

    #[test]
    fn homogeneity() {
        let p2 = ToricAmbient::projective_space(2);
        assert!(p2.is_homogeneous(&[vec![3, 0, 0], vec![1, 1, 1]]));
        assert!(!p2.is_homogeneous(&[vec![2, 0, 0], vec![1, 2, 0]]));
        let err = p2.check_homogeneous(&[vec![2, 0, 0], vec![1, 2, 0]]).unwrap_err();
        assert!(err.to_string().contains("(1)"));
    }

    #[test]
    fn redundant_irrelevant_components_rejected() {
        let g = Grading::new(IntMatrix::from_i64_rows(&[vec![1, 1, 1]]).unwrap(), vec![]).unwrap();
        assert!(ToricAmbient::from_quotient(g, vec![vs(&[0, 1]), vs(&[0, 1, 2])]).is_err());
    }
}
