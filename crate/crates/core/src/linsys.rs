//! Monomial linear systems: exponent matrices, Newton polytopes, base-locus
//! strata and the face supports used by the quasismoothness criteria.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{rank_of_rows, IntMatrix};
use crate::polytope::Polytope;
use crate::toric::{Degree, ToricAmbient};
use crate::varset::VarSet;

/// Rows are monomials, columns are Cox variables. Entries are nonnegative
/// and rows are distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    cols: usize,
    rows: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<i64>>) -> Result<ExponentMatrix> {
        if rows.is_empty() {
            return Err(Error::NoMonomials);
        }
        let mut seen: HashMap<&[i64], usize> = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            if row.iter().any(|&x| x < 0) {
                return Err(Error::Unsupported(format!("monomial {} has a negative exponent", i + 1)));
            }
            if let Some(j) = seen.insert(row, i) {
                return Err(Error::DuplicateRow(j + 1, i + 1));
            }
        }
        Ok(ExponentMatrix { cols, rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.rows).expect("rectangular")
    }

    pub fn transpose(&self) -> Result<ExponentMatrix> {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect();
        ExponentMatrix::new(self.rows.len(), rows)
    }

    /// Rational rank of the submatrix on the given rows and columns.
    pub fn sub_rank(&self, rows: &[usize], cols: &[usize]) -> usize {
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.rows[i][j]).collect())
            .collect();
        rank_of_rows(&sub, cols.len())
    }

    /// Sum of the entries of row `i` over the columns in `s`.
    pub fn row_sum(&self, i: usize, s: VarSet) -> i64 {
        s.iter().map(|j| self.rows[i][j]).sum()
    }
}

/// A relevant zero pattern `C` contained in the base locus, with the face
/// supports `S_rho` for `rho` in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseStratum {
    pub set: VarSet,
    /// `(rho, S_rho)` for every `rho` in `set`, in increasing `rho`.
    pub supports: Vec<(usize, Vec<usize>)>,
}

impl BaseStratum {
    /// Number of nonempty face supports.
    pub fn k(&self) -> usize {
        self.supports.iter().filter(|(_, s)| !s.is_empty()).count()
    }

    /// The variables whose face support is nonempty.
    pub fn nonempty_faces(&self) -> VarSet {
        VarSet::from_indices(
            self.supports
                .iter()
                .filter(|(_, s)| !s.is_empty())
                .map(|(rho, _)| *rho),
        )
    }

    pub fn support(&self, rho: usize) -> &[usize] {
        self.supports
            .iter()
            .find(|(r, _)| *r == rho)
            .map_or(&[], |(_, s)| s.as_slice())
    }
}

#[derive(Clone, Debug)]
pub struct MonomialSystem {
    ambient: Arc<ToricAmbient>,
    a: ExponentMatrix,
    degree: Degree,
}

impl MonomialSystem {
    pub fn new(ambient: Arc<ToricAmbient>, rows: Vec<Vec<i64>>) -> Result<MonomialSystem> {
        let a = ExponentMatrix::new(ambient.num_vars(), rows)?;
        ambient.check_homogeneous(a.rows())?;
        let degree = ambient.grading().degree(a.row(0));
        Ok(MonomialSystem { ambient, a, degree })
    }

    pub fn from_text(ambient: Arc<ToricAmbient>, text: &str) -> Result<MonomialSystem> {
        let rows = crate::format::parse_monomials(text, ambient.names())?;
        Self::new(ambient, rows)
    }

    pub fn to_text(&self) -> String {
        crate::format::write_monomials(self.a.rows())
    }

    pub fn ambient(&self) -> &Arc<ToricAmbient> {
        &self.ambient
    }

    pub fn exponents(&self) -> &ExponentMatrix {
        &self.a
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.a.num_cols()
    }

    pub fn num_monomials(&self) -> usize {
        self.a.num_rows()
    }

    /// The same monomials over a different ambient on the same variables.
    pub fn with_ambient(&self, ambient: Arc<ToricAmbient>) -> Result<MonomialSystem> {
        Self::new(ambient, self.a.rows().to_vec())
    }

    /// The monomial rendered with the ambient's variable names.
    pub fn monomial_name(&self, i: usize) -> String {
        crate::format::format_monomial(self.a.row(i), self.ambient.names())
    }

    /// Index of a row that is a unit vector, i.e. a Cox generator.
    pub fn generator_row(&self) -> Option<usize> {
        self.a
            .rows()
            .iter()
            .position(|r| r.iter().sum::<i64>() == 1)
    }

    /// Indices of the rows that are vertices of the Newton polytope.
    pub fn newton_vertices(&self) -> Vec<usize> {
        let hull = Polytope::hull_i64(self.a.rows()).expect("at least one monomial");
        let verts: std::collections::HashSet<Vec<i64>> = hull
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x.to_integer()).expect("small exponent")).collect())
            .collect();
        (0..self.a.num_rows())
            .filter(|&i| verts.contains(self.a.row(i)))
            .collect()
    }

    /// The system spanned by the vertex monomials only.
    pub fn vertex_subsystem(&self) -> MonomialSystem {
        let rows = self
            .newton_vertices()
            .into_iter()
            .map(|i| self.a.row(i).to_vec())
            .collect();
        Self::new(self.ambient.clone(), rows).expect("subsystem of a valid system")
    }

    /// Every monomial vanishes on `{x_i = 0, i in c}`. Checking all rows is
    /// the same as checking the vertex rows, since the inequality
    /// `sum_{i in c} m_i >= 1` is preserved under convex combinations.
    fn vanishes_on(&self, c: VarSet) -> bool {
        (0..self.a.num_rows()).all(|i| self.a.row_sum(i, c) > 0)
    }

    pub fn is_base_stratum(&self, c: VarSet) -> bool {
        !c.is_empty() && self.ambient.is_relevant(c) && self.vanishes_on(c)
    }

    /// All relevant zero patterns in the base locus, smallest first.
    pub fn base_locus_strata(&self) -> Vec<BaseStratum> {
        self.ambient
            .relevant_subsets()
            .into_iter()
            .filter(|&c| !c.is_empty() && self.vanishes_on(c))
            .map(|c| self.stratum(c))
            .collect()
    }

    /// The minimal base strata, i.e. the irreducible components of the base
    /// locus.
    pub fn base_locus_components(&self) -> Vec<VarSet> {
        let strata: Vec<VarSet> = self.base_locus_strata().into_iter().map(|s| s.set).collect();
        strata
            .iter()
            .copied()
            .filter(|&c| !strata.iter().any(|&d| d != c && d.is_subset(c)))
            .collect()
    }

    fn stratum(&self, c: VarSet) -> BaseStratum {
        let supports = c
            .iter()
            .map(|rho| {
                let rest = {
                    let mut r = c;
                    r.remove(rho);
                    r
                };
                let rows = (0..self.a.num_rows())
                    .filter(|&i| self.a.entry(i, rho) == 1 && rest.iter().all(|g| self.a.entry(i, g) == 0))
                    .collect();
                (rho, rows)
            })
            .collect();
        BaseStratum { set: c, supports }
    }

    /// The base stratum on `c`, with its face supports.
    pub fn base_stratum(&self, c: VarSet) -> Result<BaseStratum> {
        if !self.is_base_stratum(c) {
            return Err(Error::NotBaseStratum(c));
        }
        Ok(self.stratum(c))
    }

    /// `S_rho` for every `rho` in `c`.
    pub fn face_supports(&self, c: VarSet) -> Result<Vec<(usize, Vec<usize>)>> {
        Ok(self.base_stratum(c)?.supports)
    }

    /// Rows with `sum_{i in gamma} m_i = 1`. Unless `literal` is set, rows are
    /// also required to vanish on `c \ gamma`, which makes the result the
    /// disjoint union of the face supports over `gamma`.
    pub fn m_gamma(&self, c: VarSet, gamma: VarSet, literal: bool) -> Result<Vec<usize>> {
        if gamma.is_empty() {
            return Err(Error::EmptyGamma);
        }
        if !gamma.is_subset(c) {
            return Err(Error::GammaNotInStratum { gamma, stratum: c });
        }
        if !self.is_base_stratum(c) {
            return Err(Error::NotBaseStratum(c));
        }
        let rest = c.difference(gamma);
        Ok((0..self.a.num_rows())
            .filter(|&i| self.a.row_sum(i, gamma) == 1 && (literal || self.a.row_sum(i, rest) == 0))
            .collect())
    }
}
