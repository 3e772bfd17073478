//! Sets of homogeneous-coordinate indices, stored as 64-bit masks.

use std::fmt;

/// A subset of the Cox variables `{0, .., r-1}` (0-based, `r <= 64`).
///
/// Ordering is by size first and then lexicographic on the sorted index
/// list, which is the order strata and `gamma` subsets are enumerated in.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u64);

impl VarSet {
    pub const MAX_VARS: usize = 64;

    pub const fn empty() -> Self {
        VarSet(0)
    }

    pub fn full(r: usize) -> Self {
        assert!(r <= Self::MAX_VARS);
        if r == 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << r) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VarSet::empty();
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < Self::MAX_VARS);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in size-then-lexicographic order.
    pub fn subsets(self) -> Vec<VarSet> {
        let idx = self.to_vec();
        let mut out = Vec::with_capacity(1 << idx.len());
        for k in 0..=idx.len() {
            for combo in itertools::Itertools::combinations(idx.iter().copied(), k) {
                out.push(VarSet::from_indices(combo));
            }
        }
        out
    }

    /// Render with the given variable names, e.g. `{x1,x2}`.
    pub fn display_with(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Default rendering uses 1-based `x<k>` names.
impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_size_then_lex() {
        let mut v = [
            VarSet::from_indices([1, 2]),
            VarSet::from_indices([0]),
            VarSet::from_indices([0, 3]),
            VarSet::from_indices([0, 1, 2]),
            VarSet::from_indices([2]),
        ];
        v.sort();
        let got: Vec<Vec<usize>> = v.iter().map(|s| s.to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![2], vec![0, 3], vec![1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn subsets_are_sorted_and_complete() {
        let s = VarSet::from_indices([1, 4, 6]);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        let mut sorted = subs.clone();
        sorted.sort();
        assert_eq!(subs, sorted);
        assert!(subs.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(VarSet::from_indices([0, 2]).to_string(), "{x1,x3}");
        assert_eq!(VarSet::full(64).len(), 64);
    }
}
