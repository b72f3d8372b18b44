//! Vertex subsets as 64-bit masks over a fixed universe.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest universe a [`VSet`] can index.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices `0..n`, `n <= 64`.
///
/// Ordering is lexicographic on the sorted index list, so `{0} < {0,1} < {0,2} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VSet(pub u64);

impl VSet {
    pub const EMPTY: VSet = VSet(0);

    pub fn full(n: usize) -> VSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VSet(u64::MAX)
        } else {
            VSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> VSet {
        VSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> VSet {
        VSet(it.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_VERTICES && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn union(self, o: VSet) -> VSet {
        VSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: VSet) -> VSet {
        VSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: VSet) -> VSet {
        VSet(self.0 & !o.0)
    }

    #[inline]
    pub fn symmetric_difference(self, o: VSet) -> VSet {
        VSet(self.0 ^ o.0)
    }

    #[inline]
    pub fn intersects(self, o: VSet) -> bool {
        self.0 & o.0 != 0
    }

    #[inline]
    pub fn is_subset(self, o: VSet) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, o: VSet) -> bool {
        self.is_subset(o) && self.0 != o.0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VSetIter {
        VSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sum of `w` over members.
    pub fn weight(self, w: &[u64]) -> u64 {
        self.iter().map(|i| w[i]).sum()
    }
}

pub struct VSetIter(u64);

impl Iterator for VSetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VSetIter {}

impl IntoIterator for VSet {
    type Item = usize;
    type IntoIter = VSetIter;
    fn into_iter(self) -> VSetIter {
        self.iter()
    }
}

impl FromIterator<usize> for VSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VSet::from_indices(it)
    }
}

impl Ord for VSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for VSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Inclusionwise-minimal members of `sets`, deduplicated and sorted.
pub fn minimal_sets(mut sets: Vec<VSet>) -> Vec<VSet> {
    sets.sort_unstable_by_key(|s| (s.len(), s.0));
    sets.dedup();
    let mut kept: Vec<VSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Minimal transversals of `edges` by incremental extension, one edge at a time.
///
/// An empty edge yields no transversal; no edges yields `[∅]`.
pub fn minimal_transversals(edges: &[VSet]) -> Vec<VSet> {
    let mut order: Vec<VSet> = edges.to_vec();
    order.sort_unstable_by_key(|e| e.len());
    let mut current = vec![VSet::EMPTY];
    for &e in &order {
        let mut hit = Vec::with_capacity(current.len());
        let mut grown = Vec::new();
        for &t in &current {
            if t.intersects(e) {
                hit.push(t);
            } else {
                for v in e {
                    let mut u = t;
                    u.insert(v);
                    grown.push(u);
                }
            }
        }
        // `hit` is already an antichain; a grown set survives unless it contains a kept one.
        grown.sort_unstable_by_key(|s| (s.len(), s.0));
        grown.dedup();
        let base = hit.len();
        for g in grown {
            if !hit.iter().any(|h| h.is_subset(g)) {
                hit.push(g);
            }
        }
        debug_assert!(hit[..base].iter().all(|h| h.intersects(e)));
        current = hit;
        if current.is_empty() {
            break;
        }
    }
    current.sort_unstable();
    current
}
