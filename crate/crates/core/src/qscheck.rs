//! Quasismoothness decisions with certificates.
//!
//! For every relevant zero pattern `C` in the base locus the system is
//! quasismooth along `D_C` iff some nonempty `gamma`, drawn from the
//! variables of `C` with nonempty face support, is degenerate. Two
//! equivalent tests of degeneracy are implemented:
//!
//! * rank: `2 rk A[M_gamma, gamma] > rk A[M_gamma, all]`;
//! * polytope: `|gamma| > dim span of the union of S_rho - m(rho)`.
//!
//! Subsets `gamma` are tried by increasing size and then lexicographically,
//! so certificates are deterministic.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::rank_of_rows;
use crate::linsys::{BaseStratum, MonomialSystem};
use crate::toric::Presentation;
use crate::varset::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    Rank,
    Polytope,
    #[default]
    Both,
    /// Closed-form conditions for curves on surfaces and surfaces on threefolds.
    LowDimension,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rank => "rank",
            Method::Polytope => "polytope",
            Method::Both => "both",
            Method::LowDimension => "low-dimension",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "rank" => Ok(Method::Rank),
            "polytope" => Ok(Method::Polytope),
            "both" => Ok(Method::Both),
            other => Err(Error::Unsupported(format!("unknown method {other}"))),
        }
    }
}

/// A degenerate subcollection for one base stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumWitness {
    pub stratum: VarSet,
    pub gamma: VarSet,
    /// `|gamma|`; every member has a nonempty face support.
    pub k: usize,
    /// `rk A[M_gamma, gamma]`
    pub rank_small: usize,
    /// `rk A[M_gamma, all columns]`
    pub rank_big: usize,
    /// Dimension of the span of the translated face supports over `gamma`.
    pub span_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    AllFacesEmpty,
    NoDegenerateSubcollection,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::AllFacesEmpty => "AllFacesEmpty",
            FailureReason::NoDegenerateSubcollection => "NoDegenerateSubcollection",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumOutcome {
    Witness(StratumWitness),
    Failed(FailureReason),
}

impl StratumOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, StratumOutcome::Witness(_))
    }

    pub fn witness(&self) -> Option<&StratumWitness> {
        match self {
            StratumOutcome::Witness(w) => Some(w),
            StratumOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<FailureReason> {
        match self {
            StratumOutcome::Witness(_) => None,
            StratumOutcome::Failed(r) => Some(*r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub stratum: VarSet,
    /// Number of nonempty face supports.
    pub k: usize,
    pub outcome: StratumOutcome,
}

/// The two per-stratum results that did not agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub stratum: VarSet,
    pub rank: StratumOutcome,
    pub polytope: StratumOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QSStatus {
    Quasismooth,
    NotQuasismooth,
}

impl fmt::Display for QSStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QSStatus::Quasismooth => "Quasismooth",
            QSStatus::NotQuasismooth => "NotQuasismooth",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSVerdict {
    pub status: QSStatus,
    pub method: Method,
    /// Set when a monomial of the basis is a Cox generator, which decides
    /// the question without looking at strata.
    pub generator_row: Option<usize>,
    /// One report per base stratum, in stratum order.
    pub strata: Vec<StratumReport>,
}

impl QSVerdict {
    fn from_reports(method: Method, strata: Vec<StratumReport>) -> QSVerdict {
        let ok = strata.iter().all(|s| s.outcome.is_witness());
        QSVerdict {
            status: if ok {
                QSStatus::Quasismooth
            } else {
                QSStatus::NotQuasismooth
            },
            method,
            generator_row: None,
            strata,
        }
    }

    pub fn is_quasismooth(&self) -> bool {
        self.status == QSStatus::Quasismooth
    }

    /// The first failing stratum.
    pub fn failure(&self) -> Option<(VarSet, FailureReason)> {
        self.strata
            .iter()
            .find_map(|s| s.outcome.failure().map(|r| (s.stratum, r)))
    }

    pub fn report(&self, stratum: VarSet) -> Option<&StratumReport> {
        self.strata.iter().find(|s| s.stratum == stratum)
    }

    pub fn witness(&self, stratum: VarSet) -> Option<&StratumWitness> {
        self.report(stratum).and_then(|r| r.outcome.witness())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub method: Method,
    /// Use rows with `sum_{gamma} m = 1` without requiring them to vanish on
    /// the rest of the stratum.
    pub literal_m_gamma: bool,
    /// Worker threads for the per-stratum checks; `Some(0)` runs serially,
    /// `None` uses the global pool.
    pub threads: Option<usize>,
}

fn witness_data(sys: &MonomialSystem, st: &BaseStratum, gamma: VarSet, m: &[usize]) -> StratumWitness {
    let a = sys.exponents();
    let gcols = gamma.to_vec();
    let all: Vec<usize> = (0..sys.num_vars()).collect();
    StratumWitness {
        stratum: st.set,
        gamma,
        k: gamma.len(),
        rank_small: a.sub_rank(m, &gcols),
        rank_big: a.sub_rank(m, &all),
        span_dim: translated_span(sys, st, gamma),
    }
}

fn translated_span(sys: &MonomialSystem, st: &BaseStratum, gamma: VarSet) -> usize {
    let a = sys.exponents();
    let mut diffs = Vec::new();
    for rho in gamma.iter() {
        let rows = st.support(rho);
        let Some(base) = rows.iter().map(|&i| a.row(i)).min() else {
            continue;
        };
        for &i in rows {
            diffs.push(a.row(i).iter().zip(base).map(|(x, y)| x - y).collect::<Vec<i64>>());
        }
    }
    rank_of_rows(&diffs, sys.num_vars())
}

fn failure(st: &BaseStratum) -> StratumOutcome {
    StratumOutcome::Failed(if st.k() == 0 {
        FailureReason::AllFacesEmpty
    } else {
        FailureReason::NoDegenerateSubcollection
    })
}

fn gammas(st: &BaseStratum) -> impl Iterator<Item = VarSet> {
    st.nonempty_faces().subsets().into_iter().filter(|g| !g.is_empty())
}

fn rank_outcome(sys: &MonomialSystem, st: &BaseStratum, literal: bool) -> StratumOutcome {
    let a = sys.exponents();
    let all: Vec<usize> = (0..sys.num_vars()).collect();
    for gamma in gammas(st) {
        let m: Vec<usize> = if literal {
            (0..a.num_rows()).filter(|&i| a.row_sum(i, gamma) == 1).collect()
        } else {
            let mut m: Vec<usize> = gamma.iter().flat_map(|rho| st.support(rho).iter().copied()).collect();
            m.sort_unstable();
            m
        };
        if m.is_empty() {
            continue;
        }
        let small = a.sub_rank(&m, &gamma.to_vec());
        let big = a.sub_rank(&m, &all);
        if 2 * small > big {
            let mut w = witness_data(sys, st, gamma, &m);
            w.rank_small = small;
            w.rank_big = big;
            return StratumOutcome::Witness(w);
        }
    }
    failure(st)
}

fn polytope_outcome(sys: &MonomialSystem, st: &BaseStratum) -> StratumOutcome {
    for gamma in gammas(st) {
        let span = translated_span(sys, st, gamma);
        if gamma.len() > span {
            let mut m: Vec<usize> = gamma.iter().flat_map(|rho| st.support(rho).iter().copied()).collect();
            m.sort_unstable();
            return StratumOutcome::Witness(witness_data(sys, st, gamma, &m));
        }
    }
    failure(st)
}

/// Rank test on one base stratum.
pub fn check_stratum_rank(sys: &MonomialSystem, c: VarSet) -> Result<StratumOutcome> {
    check_stratum_rank_with(sys, c, false)
}

pub fn check_stratum_rank_with(sys: &MonomialSystem, c: VarSet, literal_m_gamma: bool) -> Result<StratumOutcome> {
    let st = sys.base_stratum(c)?;
    Ok(rank_outcome(sys, &st, literal_m_gamma))
}

/// Polytope-dependency test on one base stratum.
pub fn check_stratum_polytope(sys: &MonomialSystem, c: VarSet) -> Result<StratumOutcome> {
    let st = sys.base_stratum(c)?;
    Ok(polytope_outcome(sys, &st))
}

fn check_one(sys: &MonomialSystem, st: &BaseStratum, opts: &CheckOptions) -> Result<StratumReport> {
    let outcome = match opts.method {
        Method::Rank => rank_outcome(sys, st, opts.literal_m_gamma),
        Method::Polytope => polytope_outcome(sys, st),
        Method::Both | Method::LowDimension => {
            let r = rank_outcome(sys, st, opts.literal_m_gamma);
            let p = polytope_outcome(sys, st);
            if r.is_witness() != p.is_witness() {
                return Err(Error::MethodDisagreement(Box::new(Disagreement {
                    stratum: st.set,
                    rank: r,
                    polytope: p,
                })));
            }
            r
        }
    };
    Ok(StratumReport {
        stratum: st.set,
        k: st.k(),
        outcome,
    })
}

pub fn is_quasismooth(sys: &MonomialSystem, method: Method) -> Result<QSVerdict> {
    is_quasismooth_with(
        sys,
        &CheckOptions {
            method,
            ..CheckOptions::default()
        },
    )
}

pub fn is_quasismooth_with(sys: &MonomialSystem, opts: &CheckOptions) -> Result<QSVerdict> {
    let method = if opts.method == Method::LowDimension {
        Method::Both
    } else {
        opts.method
    };
    if let Some(row) = sys.generator_row() {
        return Ok(QSVerdict {
            status: QSStatus::Quasismooth,
            method,
            generator_row: Some(row),
            strata: Vec::new(),
        });
    }
    let strata = sys.base_locus_strata();
    let opts = CheckOptions { method, ..*opts };
    let results: Vec<Result<StratumReport>> = match opts.threads {
        Some(0) | Some(1) => strata.iter().map(|st| check_one(sys, st, &opts)).collect(),
        None => strata.par_iter().map(|st| check_one(sys, st, &opts)).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            pool.install(|| strata.par_iter().map(|st| check_one(sys, st, &opts)).collect())
        }
    };
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(QSVerdict::from_reports(method, reports))
}

/// `k_C` exceeds the dimension of the image of `D_C`; true on every base
/// stratum implies quasismooth.
pub fn sufficient_screen(sys: &MonomialSystem, c: VarSet) -> Result<bool> {
    let st = sys.base_stratum(c)?;
    Ok(st.k() > sys.ambient().stratum_image_dim(c)?)
}

/// `dim D_C - k_C <= dim (irrelevant locus ∩ D_C)`; false on some base
/// stratum implies not quasismooth. Requires that no monomial is a Cox
/// generator.
pub fn necessary_screen(sys: &MonomialSystem, c: VarSet) -> Result<bool> {
    if let Some(row) = sys.generator_row() {
        let var = sys.exponents().row(row).iter().position(|&x| x == 1).unwrap_or(0);
        return Err(Error::GeneratorInBasis(var));
    }
    let st = sys.base_stratum(c)?;
    let dim_d = (sys.num_vars() - c.len()) as i64;
    let r_c = sys.ambient().irrelevant_dim_in_stratum(c).map_or(-1, |d| d as i64);
    Ok(dim_d - st.k() as i64 <= r_c)
}

fn low_dim_ambient_check(sys: &MonomialSystem, dim: usize) -> Result<()> {
    let amb = sys.ambient();
    if amb.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: amb.dim(),
        });
    }
    if let Presentation::Fan(f) = amb.presentation() {
        if !f.is_complete() {
            return Err(Error::InvalidAmbient("the fan is not complete".into()));
        }
        if !f.is_simplicial() {
            return Err(Error::InvalidAmbient("the fan is not simplicial".into()));
        }
    }
    Ok(())
}

fn low_dim_verdict(sys: &MonomialSystem, decide: impl Fn(&BaseStratum) -> Option<VarSet>) -> QSVerdict {
    let reports = sys
        .base_locus_strata()
        .iter()
        .map(|st| {
            let outcome = match decide(st) {
                Some(gamma) => {
                    let mut m: Vec<usize> = gamma.iter().flat_map(|rho| st.support(rho).iter().copied()).collect();
                    m.sort_unstable();
                    StratumOutcome::Witness(witness_data(sys, st, gamma, &m))
                }
                None => failure(st),
            };
            StratumReport {
                stratum: st.set,
                k: st.k(),
                outcome,
            }
        })
        .collect();
    QSVerdict::from_reports(Method::LowDimension, reports)
}

fn first_nonempty(st: &BaseStratum) -> Option<VarSet> {
    st.nonempty_faces().iter().next().map(VarSet::singleton)
}

/// Closed-form test for curves on a complete toric surface.
pub fn check_curve_on_surface(sys: &MonomialSystem) -> Result<QSVerdict> {
    low_dim_ambient_check(sys, 2)?;
    Ok(low_dim_verdict(sys, |st| {
        let v = st.set.to_vec();
        match v.len() {
            // a unique monomial with x_i to the first power
            1 => (st.support(v[0]).len() == 1).then_some(st.set),
            // a monomial with a_i + a_j = 1
            _ => first_nonempty(st),
        }
    }))
}

/// Closed-form test for surfaces on a simplicial complete toric threefold.
pub fn check_surface_on_threefold(sys: &MonomialSystem) -> Result<QSVerdict> {
    check_surface_on_threefold_with(sys, false)
}

/// With `literal` set, the one-sided pair condition requires the exponent
/// of `x_i` to be 0 or at least 2 in every monomial; otherwise it only
/// requires that no monomial has `a_i = 1, a_j = 0`.
pub fn check_surface_on_threefold_with(sys: &MonomialSystem, literal: bool) -> Result<QSVerdict> {
    low_dim_ambient_check(sys, 3)?;
    let a = sys.exponents();
    Ok(low_dim_verdict(sys, |st| {
        let v = st.set.to_vec();
        match v.len() {
            1 => (st.support(v[0]).len() == 1).then_some(st.set),
            2 => {
                let (i, j) = (v[0], v[1]);
                let (si, sj) = (st.support(i), st.support(j));
                if !si.is_empty() && !sj.is_empty() {
                    return Some(st.set);
                }
                let one_sided = |empty: usize, other: &[usize]| {
                    let empty_ok = if literal {
                        a.rows().iter().all(|r| r[empty] != 1)
                    } else {
                        true
                    };
                    empty_ok && other.len() == 1
                };
                if si.is_empty() && one_sided(i, sj) {
                    Some(VarSet::singleton(j))
                } else if sj.is_empty() && one_sided(j, si) {
                    Some(VarSet::singleton(i))
                } else {
                    None
                }
            }
            _ => first_nonempty(st),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{Fan, ToricAmbient};
    use std::sync::Arc;

    fn vs(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix.iter().copied())
    }

    fn system(amb: ToricAmbient, rows: &[&[i64]]) -> MonomialSystem {
        MonomialSystem::new(Arc::new(amb), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ex1() -> MonomialSystem {
        system(
            ToricAmbient::from_fan(Fan::projective_space(2).product(&Fan::projective_space(1))).unwrap(),
            &[
                &[2, 1, 0, 2, 0],
                &[2, 1, 0, 0, 2],
                &[2, 0, 1, 2, 0],
                &[2, 0, 1, 0, 2],
                &[0, 3, 0, 2, 0],
                &[0, 3, 0, 0, 2],
                &[0, 0, 3, 2, 0],
                &[0, 0, 3, 0, 2],
            ],
        )
    }

    #[test]
    fn ex1_witness() {
        let s = ex1();
        let w = match check_stratum_rank(&s, vs(&[1, 2])).unwrap() {
            StratumOutcome::Witness(w) => w,
            other => panic!("{other:?}"),
        };
        assert_eq!((w.gamma, w.rank_small, w.rank_big), (vs(&[1, 2]), 2, 3));
        assert!(check_stratum_polytope(&s, vs(&[1, 2])).unwrap().is_witness());
        let v = is_quasismooth(&s, Method::Both).unwrap();
        assert!(v.is_quasismooth());
        assert_eq!(v.strata.len(), 3);
        assert!(sufficient_screen(&s, vs(&[1, 2])).unwrap());
    }

    #[test]
    fn single_points_are_degenerate() {
        let s = system(ToricAmbient::projective_space(2), &[&[2, 1, 0], &[0, 2, 1]]);
        let w = check_stratum_polytope(&s, vs(&[1])).unwrap();
        assert!(w.is_witness());
    }

    #[test]
    fn curve_checker_examples() {
        let p2 = ToricAmbient::projective_space(2);
        let s = system(p2.clone(), &[&[3, 0, 0], &[0, 2, 1]]);
        let v = check_curve_on_surface(&s).unwrap();
        assert!(!v.is_quasismooth());
        assert_eq!(v.is_quasismooth(), is_quasismooth(&s, Method::Both).unwrap().is_quasismooth());
        let s = system(p2.clone(), &[&[2, 1, 0], &[0, 0, 3]]);
        let v = check_curve_on_surface(&s).unwrap();
        assert!(!v.is_quasismooth());
        assert_eq!(v.is_quasismooth(), is_quasismooth(&s, Method::Both).unwrap().is_quasismooth());
        let cubic: Vec<Vec<i64>> = (0..=3)
            .flat_map(|a| (0..=3 - a).map(move |b| vec![a, b, 3 - a - b]))
            .collect();
        let s = MonomialSystem::new(Arc::new(p2), cubic).unwrap();
        assert!(check_curve_on_surface(&s).unwrap().is_quasismooth());
        let p3 = system(ToricAmbient::projective_space(3), &[&[4, 0, 0, 0]]);
        assert!(matches!(check_curve_on_surface(&p3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn necessary_screen_rejects_generators() {
        let s = system(ToricAmbient::projective_space(2), &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(necessary_screen(&s, vs(&[0, 1])), Err(Error::GeneratorInBasis(_))));
        let v = is_quasismooth(&s, Method::Both).unwrap();
        assert!(v.is_quasismooth() && v.generator_row == Some(0));
    }

    #[test]
    fn thread_settings_do_not_change_output() {
        let s = ex1();
        let base = is_quasismooth_with(&s, &CheckOptions { threads: Some(0), ..Default::default() }).unwrap();
        for t in [None, Some(2), Some(4)] {
            let v = is_quasismooth_with(&s, &CheckOptions { threads: t, ..Default::default() }).unwrap();
            assert_eq!(v, base);
        }
    }
}
