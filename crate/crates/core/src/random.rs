//! Seeded generators for test corpora. All draw from `ChaCha8Rng`, so a seed
//! fixes the corpus on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clutter::{Clutter, VertexUniverse};
use crate::polyhedron::is_ideal;
use crate::properties::TwoPartition;
use crate::vset::{minimal_sets, VSet};

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_edges` random nonempty subsets of `0..n`, minimalized.
pub fn random_clutter<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> Clutter {
    assert!(n >= 1, "needs at least one vertex");
    let k = rng.gen_range(1..=max_edges.max(1));
    let sets: Vec<VSet> = (0..k)
        .map(|_| loop {
            let s = VSet(rng.gen::<u64>() & VSet::full(n).bits());
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    let u = VertexUniverse::numbered(n).expect("n within limit");
    Clutter::new(u, minimal_sets(sets)).expect("minimal sets form a clutter")
}

/// Random clutter with `1 ≤ n ≤ max_n` vertices.
pub fn random_small_clutter<R: Rng>(rng: &mut R, max_n: usize, max_edges: usize) -> Clutter {
    let n = rng.gen_range(1..=max_n);
    random_clutter(rng, n, max_edges)
}

/// `count` distinct-seeded ideal clutters on `n` vertices, found by rejection.
pub fn ideal_corpus<R: Rng>(rng: &mut R, n: usize, max_edges: usize, count: usize) -> Vec<Clutter> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = random_clutter(rng, n, max_edges);
        if is_ideal(&c, n).map(|r| r.ideal).unwrap_or(false) {
            out.push(c);
        }
    }
    out
}

/// Random clutter on `2d` vertices whose every edge takes exactly one vertex
/// from each pair `{2i, 2i+1}`, with that partition.
pub fn random_two_partitionable<R: Rng>(rng: &mut R, d: usize, max_edges: usize) -> (Clutter, TwoPartition) {
    let k = rng.gen_range(1..=max_edges.max(1));
    let mut sets: Vec<VSet> = (0..k)
        .map(|_| (0..d).map(|i| 2 * i + rng.gen_range(0..2)).collect())
        .collect();
    sets.sort_unstable();
    sets.dedup();
    let u = VertexUniverse::numbered(2 * d).expect("n within limit");
    let c = Clutter::new(u, sets).expect("equal-size distinct sets form a clutter");
    let part = TwoPartition {
        blocks: (0..d).map(|i| (2 * i, 2 * i + 1)).collect(),
    };
    (c, part)
}

pub fn random_weights<R: Rng>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

/// Two-partitionable König clutter on pairs `{2i, 2i+1}` with a minimal cover
/// `{0, 2, …, 2d−2}` of size `d`.
///
/// Edges are `α_i = {2i} ∪ {2j+1 : j ≠ i}` for each `i`, plus the pairwise
/// complement of `α_0`, which is disjoint from `α_0`.
pub fn rank_witness_clutter(d: usize) -> (Clutter, TwoPartition) {
    assert!(d >= 2, "needs at least two pairs");
    let alpha = |i: usize| -> VSet {
        (0..d).map(|j| if j == i { 2 * j } else { 2 * j + 1 }).collect()
    };
    let mut edges: Vec<VSet> = (0..d).map(alpha).collect();
    edges.push(VSet::full(2 * d).difference(alpha(0)));
    let u = VertexUniverse::numbered(2 * d).expect("n within limit");
    let c = Clutter::new(u, edges).expect("distinct equal-size sets");
    let part = TwoPartition {
        blocks: (0..d).map(|i| (2 * i, 2 * i + 1)).collect(),
    };
    (c, part)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_clutter(&mut rng(7), 6, 5);
        let b = random_clutter(&mut rng(7), 6, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn two_partitionable_is_valid() {
        let mut r = rng(1);
        for d in 2..6 {
            let (c, p) = random_two_partitionable(&mut r, d, 8);
            assert!(p.is_valid_for(&c));
        }
    }

    #[test]
    fn witness_family_shape() {
        let (c, p) = rank_witness_clutter(4);
        assert!(p.is_valid_for(&c));
        assert_eq!(c.edge_count(), 5);
    }
}
