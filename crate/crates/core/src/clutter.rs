//! Vertices, hypergraphs, clutters, blockers and minors.
//!
//! Edges are stored as [`VSet`] masks over a [`VertexUniverse`]. A [`Clutter`]
//! keeps its edges in construction order (so generated families keep their
//! natural column order) while equality compares the canonical, sorted edge
//! lists. Blockers and minimalized families are returned sorted.
//!
//! Minors keep the original labels of surviving vertices and are re-indexed
//! compactly in universe order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::vset::{minimal_sets, minimal_transversals, VSet, MAX_VERTICES};

/// Ordered list of distinct vertex labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexUniverse {
    names: Vec<String>,
}

impl VertexUniverse {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                n: names.len(),
                limit: MAX_VERTICES,
            });
        }
        let mut seen = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(VertexUniverse { names })
    }

    /// Universe labelled `0..n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn all(&self) -> VSet {
        VSet::full(self.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VSet> {
        let mut s = VSet::EMPTY;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: VSet) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn format_set(&self, s: VSet) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    fn check(&self, s: VSet) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            let index = s.difference(self.all()).first().unwrap_or(0);
            Err(Error::IndexOutOfRange {
                index,
                n: self.len(),
            })
        }
    }

    /// Universe restricted to `keep`, with the map old index -> new index.
    fn restrict(&self, keep: VSet) -> (VertexUniverse, Vec<Option<usize>>) {
        let mut map = vec![None; self.len()];
        let mut names = Vec::with_capacity(keep.len());
        for i in keep {
            map[i] = Some(names.len());
            names.push(self.names[i].clone());
        }
        (VertexUniverse { names }, map)
    }
}

impl fmt::Debug for VertexUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

fn remap(s: VSet, map: &[Option<usize>]) -> VSet {
    s.iter().filter_map(|i| map[i]).collect()
}

/// A vertex universe with an arbitrary edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    universe: Arc<VertexUniverse>,
    edges: Vec<VSet>,
}

impl Hypergraph {
    pub fn new(universe: VertexUniverse, edges: Vec<VSet>) -> Result<Self> {
        Self::with_universe(Arc::new(universe), edges)
    }

    pub fn with_universe(universe: Arc<VertexUniverse>, edges: Vec<VSet>) -> Result<Self> {
        for &e in &edges {
            universe.check(e)?;
        }
        Ok(Hypergraph { universe, edges })
    }

    pub fn universe(&self) -> &VertexUniverse {
        &self.universe
    }

    pub fn edges(&self) -> &[VSet] {
        &self.edges
    }

    /// Keep the edges disjoint from `s`, drop `s` from the universe.
    pub fn delete(&self, s: VSet) -> Result<Hypergraph> {
        self.universe.check(s)?;
        let keep = self.universe.all().difference(s);
        let (u, map) = self.universe.restrict(keep);
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.intersects(s))
            .map(|&e| remap(e, &map))
            .collect();
        Ok(Hypergraph {
            universe: Arc::new(u),
            edges,
        })
    }

    /// Remove `s` from every edge and from the universe. No minimalization.
    pub fn contract(&self, s: VSet) -> Result<Hypergraph> {
        self.universe.check(s)?;
        let keep = self.universe.all().difference(s);
        let (u, map) = self.universe.restrict(keep);
        let edges = self.edges.iter().map(|&e| remap(e, &map)).collect();
        Ok(Hypergraph {
            universe: Arc::new(u),
            edges,
        })
    }

    /// `H^min`: inclusionwise-minimal edges, deduplicated and sorted.
    pub fn minimalize(&self) -> Clutter {
        Clutter {
            universe: self.universe.clone(),
            edges: minimal_sets(self.edges.clone()),
        }
    }
}

/// A hypergraph whose edges are pairwise incomparable and distinct.
#[derive(Clone)]
pub struct Clutter {
    universe: Arc<VertexUniverse>,
    edges: Vec<VSet>,
}

impl Clutter {
    /// Validates the clutter invariants; keeps the given edge order.
    pub fn new(universe: VertexUniverse, edges: Vec<VSet>) -> Result<Self> {
        Self::with_universe(Arc::new(universe), edges)
    }

    pub fn with_universe(universe: Arc<VertexUniverse>, edges: Vec<VSet>) -> Result<Self> {
        for &e in &edges {
            universe.check(e)?;
        }
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                if a == b {
                    return Err(Error::DuplicateEdge(universe.format_set(a)));
                }
                if a.is_subset(b) {
                    return Err(Error::InclusionViolation(
                        universe.format_set(a),
                        universe.format_set(b),
                    ));
                }
                if b.is_subset(a) {
                    return Err(Error::InclusionViolation(
                        universe.format_set(b),
                        universe.format_set(a),
                    ));
                }
            }
        }
        Ok(Clutter { universe, edges })
    }

    /// Builds a clutter from labelled edges.
    pub fn from_labels<S: AsRef<str>>(vertices: &[S], edges: &[&[S]]) -> Result<Self> {
        let u = VertexUniverse::new(vertices.iter().map(|s| s.as_ref().to_string()))?;
        let es = edges
            .iter()
            .map(|e| u.set_of(e))
            .collect::<Result<Vec<_>>>()?;
        Clutter::new(u, es)
    }

    /// Clutter on `0..n` from index lists.
    pub fn from_index_edges(n: usize, edges: &[&[usize]]) -> Result<Self> {
        let u = VertexUniverse::numbered(n)?;
        let es = edges
            .iter()
            .map(|e| VSet::from_indices(e.iter().copied()))
            .collect();
        Clutter::new(u, es)
    }

    /// Trusted constructor for internally produced antichains.
    pub(crate) fn from_parts(universe: Arc<VertexUniverse>, edges: Vec<VSet>) -> Self {
        Clutter { universe, edges }
    }

    /// Edgeless clutter on a universe.
    pub fn edgeless(universe: VertexUniverse) -> Self {
        Clutter {
            universe: Arc::new(universe),
            edges: Vec::new(),
        }
    }

    pub fn universe(&self) -> &VertexUniverse {
        &self.universe
    }

    pub fn universe_arc(&self) -> &Arc<VertexUniverse> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn edges(&self) -> &[VSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.iter().any(|e| e.is_empty())
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: VSet) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_index(&self, e: VSet) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }

    /// Same edges in lexicographic order.
    pub fn canonical(&self) -> Clutter {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        Clutter::from_parts(self.universe.clone(), edges)
    }

    pub fn sorted_edges(&self) -> Vec<VSet> {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        edges
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            universe: self.universe.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Whether `s` meets every edge.
    pub fn is_transversal(&self, s: VSet) -> bool {
        self.edges.iter().all(|e| e.intersects(s))
    }

    /// The clutter of minimal transversals, sorted.
    ///
    /// Fails with [`Error::EmptyEdge`] when `∅` is an edge; see
    /// [`Clutter::blocker_total`] for the convention covering that pole.
    /// The edgeless clutter has blocker `{∅}`.
    pub fn blocker(&self) -> Result<Clutter> {
        if self.has_empty_edge() {
            return Err(Error::EmptyEdge);
        }
        Ok(self.blocker_total())
    }

    /// Blocker with both poles defined: `b(no edges) = {∅}` and `b({∅}) = no edges`.
    pub fn blocker_total(&self) -> Clutter {
        Clutter::from_parts(self.universe.clone(), minimal_transversals(&self.edges))
    }

    /// Deletion `H \ s`: edges meeting `s` disappear.
    pub fn delete(&self, s: VSet) -> Result<Clutter> {
        let h = self.as_hypergraph().delete(s)?;
        Ok(Clutter::from_parts(h.universe, h.edges))
    }

    /// Contraction `H / s`, minimalized.
    pub fn contract(&self, s: VSet) -> Result<Clutter> {
        Ok(self.as_hypergraph().contract(s)?.minimalize())
    }

    /// The minor `H \ I_d / I_c` (contractions are applied first).
    pub fn minor(&self, spec: &MinorSpec) -> Result<Clutter> {
        spec.validate(self.n())?;
        let (u, map) = self
            .universe
            .restrict(self.universe.all().difference(spec.deletions.union(spec.contractions)));
        let edges = minor_edges(&self.edges, spec.deletions, spec.contractions)
            .into_iter()
            .map(|e| remap(e, &map))
            .collect();
        Ok(Clutter::from_parts(Arc::new(u), edges))
    }

    /// Every `(I_d, I_c)` pair, `3^n` of them, in [`MinorSpec::from_code`] order.
    pub fn enumerate_minors(&self, limit: usize) -> Result<MinorIter<'_>> {
        let n = self.n();
        if n > limit {
            return Err(Error::UniverseTooLarge { n, limit });
        }
        Ok(MinorIter {
            clutter: self,
            next: 0,
            total: 3u64.pow(n as u32),
        })
    }

    /// Incidence matrix: one row per vertex, one column per edge, in edge order.
    pub fn incidence(&self) -> IncidenceView {
        let n = self.n();
        let q = self.edges.len();
        let mut m = IntegerMatrix::zeros(n, q);
        for (k, e) in self.edges.iter().enumerate() {
            for i in *e {
                m.set(i, k, 1.into());
            }
        }
        IncidenceView { matrix: m }
    }

    /// `B`: the incidence matrix with an all-ones row appended.
    pub fn augmented_incidence(&self) -> IntegerMatrix {
        let n = self.n();
        let q = self.edges.len();
        let mut m = self.incidence().matrix.resized(n + 1, q);
        for k in 0..q {
            m.set(n, k, 1.into());
        }
        m
    }

    /// Same edges over a relabelled universe; `perm[i]` is the new index of vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Clutter> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::PreconditionViolated("permutation length".into()));
        }
        let mut names = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.universe.names[i].clone();
        }
        let u = VertexUniverse::new(names)?;
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|i| perm[i]).collect())
            .collect();
        Clutter::new(u, edges)
    }

    pub fn format_edges(&self) -> String {
        self.edges
            .iter()
            .map(|&e| self.universe.format_set(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for Clutter {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Clutter {}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clutter(V={:?}, E=[{}])", self.universe, self.format_edges())
    }
}

/// Edge masks of `H \ del / con` over the original indices.
pub fn minor_edges(edges: &[VSet], del: VSet, con: VSet) -> Vec<VSet> {
    let kept: Vec<VSet> = edges
        .iter()
        .filter(|e| !e.intersects(del))
        .map(|e| e.difference(con))
        .collect();
    minimal_sets(kept)
}

/// Deletion set `I_d` and contraction set `I_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MinorSpec {
    pub deletions: VSet,
    pub contractions: VSet,
}

impl MinorSpec {
    pub fn new(deletions: VSet, contractions: VSet) -> Result<Self> {
        if deletions.intersects(contractions) {
            return Err(Error::OverlappingSpec);
        }
        Ok(MinorSpec {
            deletions,
            contractions,
        })
    }

    pub fn is_proper(&self) -> bool {
        !(self.deletions.is_empty() && self.contractions.is_empty())
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.deletions.intersects(self.contractions) {
            return Err(Error::OverlappingSpec);
        }
        let all = VSet::full(n);
        for s in [self.deletions, self.contractions] {
            if !s.is_subset(all) {
                return Err(Error::IndexOutOfRange {
                    index: s.difference(all).first().unwrap_or(0),
                    n,
                });
            }
        }
        Ok(())
    }

    /// Decodes a base-3 code: digit `i` is 0 (keep), 1 (delete) or 2 (contract) for vertex `i`.
    pub fn from_code(mut code: u64, n: usize) -> MinorSpec {
        let mut spec = MinorSpec::default();
        for i in 0..n {
            match code % 3 {
                1 => spec.deletions.insert(i),
                2 => spec.contractions.insert(i),
                _ => {}
            }
            code /= 3;
        }
        spec
    }

    pub fn code(&self, n: usize) -> u64 {
        (0..n).rev().fold(0u64, |acc, i| {
            let d = if self.deletions.contains(i) {
                1
            } else if self.contractions.contains(i) {
                2
            } else {
                0
            };
            acc * 3 + d
        })
    }

    pub fn describe(&self, u: &VertexUniverse) -> String {
        format!(
            "delete {} contract {}",
            u.format_set(self.deletions),
            u.format_set(self.contractions)
        )
    }
}

pub struct MinorIter<'a> {
    clutter: &'a Clutter,
    next: u64,
    total: u64,
}

impl Iterator for MinorIter<'_> {
    type Item = (MinorSpec, Clutter);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let spec = MinorSpec::from_code(self.next, self.clutter.n());
        self.next += 1;
        let minor = self.clutter.minor(&spec).expect("generated spec is valid");
        Some((spec, minor))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.total - self.next) as usize;
        (r, Some(r))
    }
}

/// 0/1 incidence matrix, vertices × edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceView {
    pub matrix: IntegerMatrix,
}

impl IncidenceView {
    pub fn transpose(&self) -> IntegerMatrix {
        self.matrix.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(edges: &[&[&str]]) -> Clutter {
        Clutter::from_labels(&["a", "b", "c"], edges).unwrap()
    }

    #[test]
    fn rejects_inclusion_and_duplicates() {
        let u = VertexUniverse::new(["a", "b"]).unwrap();
        let err = Clutter::new(u.clone(), vec![VSet(1), VSet(3)]).unwrap_err();
        assert!(matches!(err, Error::InclusionViolation(..)));
        let err = Clutter::new(u, vec![VSet(1), VSet(1)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(..)));
    }

    #[test]
    fn minimalize_removes_superset() {
        let u = VertexUniverse::new(["a", "b"]).unwrap();
        let h = Hypergraph::new(u, vec![VSet(1), VSet(3)]).unwrap();
        assert_eq!(h.minimalize().edges(), &[VSet(1)]);
    }

    #[test]
    fn minimalize_with_empty_edge() {
        let u = VertexUniverse::new(["a", "b"]).unwrap();
        let h = Hypergraph::new(u, vec![VSet(3), VSet::EMPTY, VSet(1)]).unwrap();
        assert_eq!(h.minimalize().edges(), &[VSet::EMPTY]);
    }

    #[test]
    fn blocker_of_single_edge() {
        let c = Clutter::from_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        let b = c.blocker().unwrap();
        assert_eq!(b.edges(), &[VSet(1), VSet(2)]);
    }

    #[test]
    fn blocker_rejects_empty_edge() {
        let u = VertexUniverse::new(["a"]).unwrap();
        let c = Clutter::new(u, vec![VSet::EMPTY]).unwrap();
        assert_eq!(c.blocker().unwrap_err(), Error::EmptyEdge);
        assert!(c.blocker_total().is_edgeless());
    }

    #[test]
    fn contract_and_delete() {
        let c = abc(&[&["a", "b"], &["b", "c"]]);
        let b = c.universe().set_of(&["b"]).unwrap();
        let con = c.contract(b).unwrap();
        assert_eq!(con.universe().names(), &["a", "c"]);
        assert_eq!(con.edges(), &[VSet(1), VSet(2)]);
        let del = c.delete(b).unwrap();
        assert!(del.is_edgeless());
        assert_eq!(del.n(), 2);
    }

    #[test]
    fn minor_rejects_overlap() {
        assert_eq!(MinorSpec::new(VSet(1), VSet(3)).unwrap_err(), Error::OverlappingSpec);
        let c = abc(&[&["a", "b"]]);
        let bad = MinorSpec {
            deletions: VSet(1),
            contractions: VSet(1),
        };
        assert_eq!(c.minor(&bad).unwrap_err(), Error::OverlappingSpec);
    }

    #[test]
    fn minor_trivial_cases() {
        let c = abc(&[&["a", "b"], &["b", "c"]]);
        assert_eq!(c.minor(&MinorSpec::default()).unwrap(), c);
        let all = MinorSpec::new(VSet(1), VSet(6)).unwrap();
        let m = c.minor(&all).unwrap();
        assert_eq!(m.n(), 0);
        assert!(all.is_proper());
    }

    #[test]
    fn minor_counts() {
        let c1 = Clutter::from_index_edges(1, &[&[0]]).unwrap();
        assert_eq!(c1.enumerate_minors(16).unwrap().count(), 3);
        let c2 = Clutter::from_index_edges(2, &[&[0, 1]]).unwrap();
        assert_eq!(c2.enumerate_minors(16).unwrap().count(), 9);
        assert!(matches!(
            c2.enumerate_minors(1),
            Err(Error::UniverseTooLarge { n: 2, limit: 1 })
        ));
    }

    #[test]
    fn spec_code_round_trip() {
        for code in 0..3u64.pow(5) {
            let s = MinorSpec::from_code(code, 5);
            assert_eq!(s.code(5), code);
        }
    }

    #[test]
    fn incidence_single() {
        let c = Clutter::from_labels(&["a"], &[&["a"]]).unwrap();
        let m = c.incidence().matrix;
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), &1.into());
    }

    #[test]
    fn incidence_column_sums_are_edge_sizes() {
        let c = abc(&[&["a", "b"], &["c"]]);
        let m = c.incidence().matrix;
        for (k, e) in c.edges().iter().enumerate() {
            let sum: i64 = (0..m.rows()).map(|i| m.get_i64(i, k)).sum();
            assert_eq!(sum as usize, e.len());
        }
    }
}
