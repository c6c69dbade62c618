//! Exact sparse row reduction over `F = Q`.
//!
//! Columns are identified by ordered keys. The pivot of a row is its largest
//! key, so reduction modulo the span always leaves a vector supported on
//! non-pivot keys; that vector is unique, which makes coset representatives
//! reproducible.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    pivots: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon {
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.pivots.contains_key(key)
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    /// The unique vector `v + s` (`s` in the span) supported on non-pivot keys.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut work = v.clone();
        let mut out = SparseVec::new();
        while let Some((k, c)) = work.pop_last() {
            match self.pivots.get(&k) {
                Some(row) => {
                    for (k2, c2) in row.range(..&k) {
                        let delta = &c * c2;
                        let entry = work.entry(k2.clone()).or_insert_with(Scalar::zero);
                        *entry -= &delta;
                        if entry.is_zero() {
                            work.remove(k2);
                        }
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, lc)) = r.last_key_value() else {
            return false;
        };
        let inv = lc.inv().expect("leading coefficient is nonzero");
        let lead = lead.clone();
        let row: SparseVec<K> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = SparseEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, Scalar::from(c))).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        let r = e.reduce(&v(&[(2, 1)]));
        assert!(r.keys().all(|k| !e.is_pivot(k)));
        assert!(e.contains(&v(&[(0, 1), (1, 2), (2, 1)])));
        assert!(!e.contains(&v(&[(0, 1)])));
    }

    #[test]
    fn rank_of_dependent_set() {
        let vs = vec![v(&[(0, 2), (3, 4)]), v(&[(0, 1), (3, 2)]), v(&[(1, 1)])];
        assert_eq!(rank(&vs), 2);
    }
}
