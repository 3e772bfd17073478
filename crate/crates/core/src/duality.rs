//! Good pairs of polytopes, the monomial systems they induce, and the dual
//! pair construction.
//!
//! For `P1 ⊆ P2` the ambient is the toric variety of the normal fan of `P2`
//! and the lattice point `m` of `P1` becomes the monomial with exponents
//! `<m, v_rho> + 1`, one per ray `v_rho` in facet order.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::big_vec;
use crate::linsys::MonomialSystem;
use crate::polytope::Polytope;
use crate::qscheck::{is_quasismooth, Method, QSVerdict};
use crate::toric::{Fan, ToricAmbient};

/// The flags deciding whether `(p1, p2)` is a good pair.
#[derive(Clone, Debug)]
pub struct GoodPair {
    pub p1: Polytope,
    pub p2: Polytope,
    /// `p1 ⊆ p2`.
    pub containment: bool,
    /// `p1` is a full-dimensional lattice polytope whose only interior
    /// lattice point is the origin.
    pub p1_canonical: bool,
    /// The polar of `p2` is a canonical lattice polytope.
    pub p2star_canonical: bool,
    /// The polar of `p2` exists but has a non-lattice vertex. Such a polar
    /// is never reported canonical.
    pub non_integral: bool,
}

impl GoodPair {
    pub fn is_good(&self) -> bool {
        self.containment && self.p1_canonical && self.p2star_canonical
    }
}

/// The linear system attached to a pair, together with its ambient.
#[derive(Clone, Debug)]
pub struct InducedSystem {
    pub ambient: Arc<ToricAmbient>,
    pub system: MonomialSystem,
}

fn canonical_lattice(p: &Polytope) -> bool {
    p.is_full_dimensional() && p.is_lattice() && p.is_canonical().unwrap_or(false)
}

pub fn good_pair_check(p1: &Polytope, p2: &Polytope) -> Result<GoodPair> {
    if p1.ambient_dim() != p2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p2.ambient_dim(),
            got: p1.ambient_dim(),
        });
    }
    let (p2star_canonical, non_integral) = match p2.polar_dual() {
        Ok(star) if star.is_lattice() => (canonical_lattice(&star), false),
        Ok(_) => (false, true),
        Err(_) => (false, false),
    };
    Ok(GoodPair {
        p1: p1.clone(),
        p2: p2.clone(),
        containment: p2.contains_polytope(p1),
        p1_canonical: canonical_lattice(p1),
        p2star_canonical,
        non_integral,
    })
}

/// The anticanonical polytope `{m : <m, v> >= -1 for every ray v}` of a
/// complete fan.
pub fn anticanonical_polytope(fan: &Fan) -> Result<Polytope> {
    let rays: Vec<Vec<BigInt>> = fan.rays().iter().map(|r| big_vec(r)).collect();
    Polytope::hull(&rays)?.polar_dual()
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Unsupported(format!("coordinate {x} does not fit in 64 bits")))
        })
        .collect()
}

/// The monomial system of the lattice points of `p1` on the toric variety of
/// the normal fan of `p2`. Variables follow the facet order of `p2`.
pub fn induced_system(p1: &Polytope, p2: &Polytope) -> Result<InducedSystem> {
    if p1.ambient_dim() != p2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p2.ambient_dim(),
            got: p1.ambient_dim(),
        });
    }
    let fan = p2.normal_fan()?;
    let mut rows = Vec::new();
    for m in p1.lattice_points() {
        let m = to_i64(&m)?;
        let row: Vec<i64> = fan
            .rays()
            .iter()
            .map(|v| v.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() + 1)
            .collect();
        if row.iter().any(|&a| a < 0) {
            return Err(Error::PointOutsideP2(m));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ambient = Arc::new(ToricAmbient::from_fan(fan)?);
    let system = MonomialSystem::new(ambient.clone(), rows)?;
    Ok(InducedSystem { ambient, system })
}

/// `(P2*, P1*)`. The first polar must be a lattice polytope so that its
/// lattice points define the dual system.
pub fn dual_pair(p1: &Polytope, p2: &Polytope) -> Result<(Polytope, Polytope)> {
    let p2star = p2.polar_dual()?;
    if !p2star.is_lattice() {
        return Err(Error::NonIntegralDual);
    }
    let p1star = p1.polar_dual()?;
    Ok((p2star, p1star))
}

/// Verdicts for the system of `(p1, p2)` and for the system of its dual pair.
pub fn duality_qs_report(p1: &Polytope, p2: &Polytope, method: Method) -> Result<(QSVerdict, QSVerdict)> {
    let first = induced_system(p1, p2)?;
    let (q1, q2) = dual_pair(p1, p2)?;
    let second = induced_system(&q1, &q2)?;
    Ok((
        is_quasismooth(&first.system, method)?,
        is_quasismooth(&second.system, method)?,
    ))
}

/// False exactly when the system of `(p1, p2)` is quasismooth while `p1` is
/// not canonical.
pub fn quasismooth_implies_good(p1: &Polytope, p2: &Polytope) -> Result<bool> {
    let induced = induced_system(p1, p2)?;
    let verdict = is_quasismooth(&induced.system, Method::Rank)?;
    Ok(!verdict.is_quasismooth() || canonical_lattice(p1))
}
