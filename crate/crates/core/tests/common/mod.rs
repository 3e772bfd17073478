#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;
use std::sync::Arc;

use qsm_core::{MonomialSystem, Polytope, ToricAmbient, VarSet};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

pub fn ambient(name: &str) -> Arc<ToricAmbient> {
    Arc::new(ToricAmbient::from_text(&read_fixture(&format!("{name}.ambient"))).expect("ambient parses"))
}

pub fn system(name: &str) -> MonomialSystem {
    let amb = ambient(name);
    MonomialSystem::from_text(amb, &read_fixture(&format!("{name}.monomials"))).expect("monomials parse")
}

pub fn polytope(name: &str) -> Polytope {
    Polytope::from_text(&read_fixture(&format!("{name}.polytope"))).expect("polytope parses")
}

/// The variable set with the given names.
pub fn named(amb: &ToricAmbient, names: &[&str]) -> VarSet {
    VarSet::from_indices(names.iter().map(|n| {
        amb.names()
            .iter()
            .position(|x| x == n)
            .unwrap_or_else(|| panic!("no variable {n}"))
    }))
}

/// True iff some column permutation of `a` has the same row multiset as `b`.
pub fn equal_up_to_column_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.first().map_or(0, |r| r.len());
    if b.iter().chain(a).any(|r| r.len() != n) {
        return false;
    }
    let mut target: Vec<Vec<i64>> = b.to_vec();
    target.sort();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, &target, &mut perm, &mut used)
}

fn search(a: &[Vec<i64>], target: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = used.len();
    let k = perm.len();
    // prune on the multiset of column prefixes
    let mut pa: Vec<Vec<i64>> = a.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
    let mut pb: Vec<Vec<i64>> = target.iter().map(|r| r[..k].to_vec()).collect();
    pa.sort();
    pb.sort();
    if pa != pb {
        return false;
    }
    if k == n {
        return true;
    }
    for j in 0..n {
        if !used[j] {
            used[j] = true;
            perm.push(j);
            if search(a, target, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
    }
    false
}
