//! Fake weighted projective spaces: the subset criterion, Delsarte
//! (square) systems and their atomic types, and the transpose construction.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, solve_rational};
use crate::linsys::{ExponentMatrix, MonomialSystem};
use crate::qscheck::{self, FailureReason, Method, QSVerdict, StratumOutcome, StratumReport, StratumWitness};
use crate::toric::ToricAmbient;
use crate::varset::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

/// One atomic summand. `variables[i]` carries exponent `exponents[i]` and is
/// multiplied by `variables[i + 1]` (cyclically for loops).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomicType {
    pub kind: AtomKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<i64>,
}

impl AtomicType {
    pub fn display_with(&self, names: &[String]) -> String {
        let steps: Vec<String> = self
            .variables
            .iter()
            .zip(&self.exponents)
            .map(|(&v, e)| format!("{}^{}", names[v], e))
            .collect();
        match self.kind {
            AtomKind::Fermat => format!("fermat({})", steps[0]),
            AtomKind::Chain => format!("chain({})", steps.join("->")),
            AtomKind::Loop => format!("loop({}->{})", steps.join("->"), names[self.variables[0]]),
        }
    }

    /// Exponent rows of the atom in an `r`-variable ring, one per variable
    /// of the atom, in atom order.
    pub fn rows(&self, r: usize) -> Vec<Vec<i64>> {
        let k = self.variables.len();
        (0..k)
            .map(|i| {
                let mut row = vec![0; r];
                row[self.variables[i]] = self.exponents[i];
                let next = match self.kind {
                    AtomKind::Loop => Some(self.variables[(i + 1) % k]),
                    _ if i + 1 < k => Some(self.variables[i + 1]),
                    _ => None,
                };
                if let Some(j) = next {
                    row[j] += 1;
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for AtomicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.variables.iter().max().map_or(0, |m| m + 1);
        let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteDecomposition {
    pub atoms: Vec<AtomicType>,
    /// `row_permutation[i]` is the input row whose large exponent sits on
    /// variable `i`.
    pub row_permutation: Vec<usize>,
}

impl DelsarteDecomposition {
    pub fn display_with(&self, names: &[String]) -> String {
        self.atoms
            .iter()
            .map(|a| a.display_with(names))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The exponent matrix rebuilt from the atoms, in input row order.
    pub fn reconstruct(&self) -> Vec<Vec<i64>> {
        let r = self.row_permutation.len();
        let mut by_var = vec![Vec::new(); r];
        for atom in &self.atoms {
            for (v, row) in atom.variables.iter().zip(atom.rows(r)) {
                by_var[*v] = row;
            }
        }
        let mut out = vec![Vec::new(); r];
        for (v, &row) in self.row_permutation.iter().enumerate() {
            out[row] = by_var[v].clone();
        }
        out
    }
}

impl fmt::Display for DelsarteDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.row_permutation.len()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

fn check_weighted(a: &ExponentMatrix, weights: &[i64]) -> Result<i64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.num_rows(),
            cols: a.num_cols(),
        });
    }
    if weights.len() != a.num_cols() {
        return Err(Error::DimensionMismatch {
            expected: a.num_cols(),
            got: weights.len(),
        });
    }
    let degs: Vec<i64> = a
        .rows()
        .iter()
        .map(|r| r.iter().zip(weights).map(|(x, w)| x * w).sum())
        .collect();
    if let Some(i) = degs.iter().position(|&d| d != degs[0]) {
        return Err(Error::NotHomogeneous {
            first: 1,
            second: i + 1,
            difference: (degs[i] - degs[0]).to_string(),
        });
    }
    Ok(degs[0])
}

/// Decompose a square system into Fermat, chain and loop atoms, or return
/// `None` if the rows cannot be arranged that way.
pub fn classify_atomic(a: &ExponentMatrix, weights: &[i64]) -> Result<Option<DelsarteDecomposition>> {
    let d = check_weighted(a, weights)?;
    if weights.iter().any(|&w| w >= d) {
        return Err(Error::DegreeTooSmall { degree: d });
    }
    let r = a.num_cols();

    // each row has exactly one entry above 1, and these positions are distinct
    let mut perm = vec![usize::MAX; r];
    for (i, row) in a.rows().iter().enumerate() {
        let big: Vec<usize> = (0..r).filter(|&j| row[j] > 1).collect();
        if big.len() != 1 || perm[big[0]] != usize::MAX {
            return Ok(None);
        }
        perm[big[0]] = i;
    }

    // off-diagonal row and column sums are at most 1
    let mut succ = vec![None; r];
    let mut pred = vec![None; r];
    for v in 0..r {
        let row = a.row(perm[v]);
        let off: i64 = (0..r).filter(|&j| j != v).map(|j| row[j]).sum();
        if off > 1 {
            return Ok(None);
        }
        if let Some(j) = (0..r).find(|&j| j != v && row[j] == 1) {
            if pred[j].is_some() {
                return Ok(None);
            }
            succ[v] = Some(j);
            pred[j] = Some(v);
        }
    }

    let mut seen = vec![false; r];
    let mut atoms = Vec::new();
    let exps = |vars: &[usize]| -> Vec<i64> { vars.iter().map(|&v| a.entry(perm[v], v)).collect() };
    for start in (0..r).filter(|&v| pred[v].is_none()) {
        let mut vars = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(n) = succ[cur] {
            vars.push(n);
            seen[n] = true;
            cur = n;
        }
        let kind = if vars.len() == 1 {
            AtomKind::Fermat
        } else {
            AtomKind::Chain
        };
        atoms.push(AtomicType {
            kind,
            exponents: exps(&vars),
            variables: vars,
        });
    }
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut vars = vec![start];
        seen[start] = true;
        let mut cur = succ[start].expect("cycle");
        while cur != start {
            vars.push(cur);
            seen[cur] = true;
            cur = succ[cur].expect("cycle");
        }
        atoms.push(AtomicType {
            kind: AtomKind::Loop,
            exponents: exps(&vars),
            variables: vars,
        });
    }
    atoms.sort_by_key(|a| *a.variables.iter().min().unwrap());
    Ok(Some(DelsarteDecomposition {
        atoms,
        row_permutation: perm,
    }))
}

/// The subset criterion on a fake weighted projective space: for every
/// proper nonempty `gamma`, either some monomial avoids `gamma`, or the rows
/// with `gamma`-sum 1 restricted to `gamma` have rank at least `r - |gamma|`.
pub fn wps_check(sys: &MonomialSystem) -> Result<QSVerdict> {
    if !sys.ambient().is_fake_wps() {
        return Err(Error::NotFakeWps);
    }
    if let Some(row) = sys.generator_row() {
        let var = sys.exponents().row(row).iter().position(|&x| x == 1).unwrap_or(0);
        return Err(Error::GeneratorInBasis(var));
    }
    let a = sys.exponents();
    let r = sys.num_vars();
    let all: Vec<usize> = (0..r).collect();
    let mut reports = Vec::new();
    for gamma in VarSet::full(r).subsets() {
        if gamma.is_empty() || gamma.len() == r {
            continue;
        }
        if (0..a.num_rows()).any(|i| a.row_sum(i, gamma) == 0) {
            continue;
        }
        let rows: Vec<usize> = (0..a.num_rows()).filter(|&i| a.row_sum(i, gamma) == 1).collect();
        let cols = gamma.to_vec();
        let rank = a.sub_rank(&rows, &cols);
        let k = cols
            .iter()
            .filter(|&&j| rows.iter().any(|&i| a.entry(i, j) == 1))
            .count();
        let outcome = if !rows.is_empty() && rank >= r - gamma.len() {
            let support = VarSet::from_indices(cols.iter().copied().filter(|&j| rows.iter().any(|&i| a.entry(i, j) == 1)));
            StratumOutcome::Witness(StratumWitness {
                stratum: gamma,
                gamma: support,
                k,
                rank_small: rank,
                rank_big: a.sub_rank(&rows, &all),
                span_dim: a.sub_rank(&rows, &all) - rank,
            })
        } else if k == 0 {
            StratumOutcome::Failed(FailureReason::AllFacesEmpty)
        } else {
            StratumOutcome::Failed(FailureReason::NoDegenerateSubcollection)
        };
        reports.push(StratumReport {
            stratum: gamma,
            k,
            outcome,
        });
    }
    let ok = reports.iter().all(|s| s.outcome.is_witness());
    Ok(QSVerdict {
        status: if ok {
            qscheck::QSStatus::Quasismooth
        } else {
            qscheck::QSStatus::NotQuasismooth
        },
        method: Method::Rank,
        generator_row: None,
        strata: reports,
    })
}

/// Data of the transposed system on its weighted projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransposeDual {
    pub weights: Vec<i64>,
    pub degree: i64,
    pub matrix: ExponentMatrix,
}

/// Weights and degree making `A^T` homogeneous: `d'` is the least positive
/// integer with `(A^T)^{-1} d' (1,..,1)` integral, and those entries are the
/// weights. No common factor of the weights and `d'` remains.
pub fn transpose_dual(a: &ExponentMatrix, weights: &[i64], d: i64) -> Result<TransposeDual> {
    let deg = check_weighted(a, weights)?;
    if deg != d {
        return Err(Error::NotHomogeneous {
            first: 1,
            second: 1,
            difference: format!("stated degree {d}, actual degree {deg}"),
        });
    }
    let at = a.transpose()?;
    let (weights, degree) = solve_weights(&at)?;
    Ok(TransposeDual {
        weights,
        degree,
        matrix: at,
    })
}

/// The least degree `d` and positive weights `w` with `A w = d (1,..,1)`.
pub fn delsarte_weights(a: &ExponentMatrix) -> Result<(Vec<i64>, i64)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.num_rows(),
            cols: a.num_cols(),
        });
    }
    solve_weights(a)
}

fn solve_weights(a: &ExponentMatrix) -> Result<(Vec<i64>, i64)> {
    let m = a.to_int_matrix();
    if determinant(&m)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let ones = vec![BigRational::one(); a.num_rows()];
    let u = solve_rational(&m, &ones)?;
    if u.iter().any(|x| !x.is_positive()) {
        return Err(Error::NoPositiveSolution);
    }
    let d = u.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let w: Vec<i64> = u
        .iter()
        .map(|x| (x * BigRational::from_integer(d.clone())).to_integer().to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported("weights out of range".into()))?;
    let d = d.to_i64().ok_or_else(|| Error::Unsupported("degree out of range".into()))?;
    Ok((w, d))
}

/// A square system on the weighted projective space with the given weights.
pub fn delsarte_system(a: &ExponentMatrix, weights: &[i64]) -> Result<MonomialSystem> {
    let amb = ToricAmbient::weighted_projective(weights)?;
    MonomialSystem::new(Arc::new(amb), a.rows().to_vec())
}

fn wps_verdict(sys: &MonomialSystem) -> Result<bool> {
    if sys.generator_row().is_some() {
        return Ok(true);
    }
    Ok(wps_check(sys)?.is_quasismooth())
}

/// Whether the system and its transpose are both quasismooth or both not.
pub fn quasismooth_transpose_invariance(a: &ExponentMatrix, weights: &[i64], d: i64) -> Result<bool> {
    let t = transpose_dual(a, weights, d)?;
    let lhs = wps_verdict(&delsarte_system(a, weights)?)?;
    let rhs = wps_verdict(&delsarte_system(&t.matrix, &t.weights)?)?;
    Ok(lhs == rhs)
}
