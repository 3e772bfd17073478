//! Certified quasismoothness checks for monomial linear systems on toric
//! varieties, together with the polytope, weighted projective and duality
//! tools they rely on.

pub mod delsarte;
pub mod duality;
pub mod error;
pub mod format;
pub mod linalg;
pub mod linsys;
pub mod polytope;
pub mod qscheck;
pub mod toric;
pub mod varset;

pub use duality::{GoodPair, InducedSystem};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, SnfResult};
pub use linsys::{BaseStratum, ExponentMatrix, MonomialSystem};
pub use polytope::{LatticePolytope, Polytope, RationalPolytope};
pub use qscheck::{Method, QSVerdict, StratumWitness};
pub use toric::{Fan, Grading, ToricAmbient};
pub use varset::VarSet;
