//! The `Q_pq` family of minimally non-packing clutters and its augmentations `Q_pq^F`.
//!
//! Vertices come in six blocks `P, P*, Q, Q*, {r}, {r*}` laid out as
//! `p1..pp, p1*..pp*, q1..qq, q1*..qq*, r, r*`. The star map pairs each vertex
//! with its partner; the pairs `{v, v*}` form a two-partition of every member
//! of the family.
//!
//! Edges of `Q_pq` come in four row blocks, each indexed by the nonempty
//! subsets `S` of `P` (or `Q`):
//!
//! ```text
//! S ∪ (P∖S)* ∪ Q ∪ {r}        (P∖S) ∪ S* ∪ Q* ∪ {r}
//! P ∪ (Q∖S) ∪ S* ∪ {r*}       P* ∪ S ∪ (Q∖S)* ∪ {r*}
//! ```
//!
//! Subsets are listed by descending bit pattern with `p1` as the most
//! significant bit, which reproduces the published `Q_{2,1}` incidence matrix
//! row for row.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clutter::{Clutter, VertexUniverse};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::vset::{minimal_sets, VSet};

/// Index layout of the `Q_pq` universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QpqDescriptor {
    pub p: usize,
    pub q: usize,
}

/// The six vertex blocks, as masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub p: VSet,
    pub p_star: VSet,
    pub q: VSet,
    pub q_star: VSet,
    pub r: usize,
    pub r_star: usize,
}

impl QpqDescriptor {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::PreconditionViolated("p and q must be at least 1".into()));
        }
        let d = QpqDescriptor { p, q };
        if d.n() > crate::vset::MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                n: d.n(),
                limit: crate::vset::MAX_VERTICES,
            });
        }
        Ok(d)
    }

    /// `|V| = 2(p + q + 1)`.
    pub fn n(&self) -> usize {
        2 * (self.p + self.q + 1)
    }

    pub fn p_idx(&self, i: usize) -> usize {
        i
    }
    pub fn p_star_idx(&self, i: usize) -> usize {
        self.p + i
    }
    pub fn q_idx(&self, i: usize) -> usize {
        2 * self.p + i
    }
    pub fn q_star_idx(&self, i: usize) -> usize {
        2 * self.p + self.q + i
    }
    pub fn r_idx(&self) -> usize {
        2 * (self.p + self.q)
    }
    pub fn r_star_idx(&self) -> usize {
        2 * (self.p + self.q) + 1
    }

    pub fn blocks(&self) -> Blocks {
        let range = |start: usize, len: usize| VSet::from_indices(start..start + len);
        Blocks {
            p: range(0, self.p),
            p_star: range(self.p, self.p),
            q: range(2 * self.p, self.q),
            q_star: range(2 * self.p + self.q, self.q),
            r: self.r_idx(),
            r_star: self.r_star_idx(),
        }
    }

    pub fn universe(&self) -> VertexUniverse {
        let mut names = Vec::with_capacity(self.n());
        names.extend((1..=self.p).map(|i| format!("p{i}")));
        names.extend((1..=self.p).map(|i| format!("p{i}*")));
        names.extend((1..=self.q).map(|i| format!("q{i}")));
        names.extend((1..=self.q).map(|i| format!("q{i}*")));
        names.push("r".into());
        names.push("r*".into());
        VertexUniverse::new(names).expect("generated labels are distinct")
    }

    /// Partner of a vertex under the star involution.
    pub fn star_vertex(&self, v: usize) -> usize {
        let (p, q) = (self.p, self.q);
        match v {
            _ if v < p => v + p,
            _ if v < 2 * p => v - p,
            _ if v < 2 * p + q => v + q,
            _ if v < 2 * p + 2 * q => v - q,
            _ if v == self.r_idx() => self.r_star_idx(),
            _ => self.r_idx(),
        }
    }

    /// `S*`.
    pub fn star(&self, s: VSet) -> VSet {
        s.iter().map(|v| self.star_vertex(v)).collect()
    }

    /// The pairs `{v, v*}` for `v ∈ P ∪ Q ∪ {r}`, in vertex order.
    pub fn star_pairs(&self) -> Vec<VSet> {
        let b = self.blocks();
        b.p.union(b.q)
            .iter()
            .chain(std::iter::once(self.r_idx()))
            .map(|v| VSet::from_indices([v, self.star_vertex(v)]))
            .collect()
    }

    /// Nonempty subsets of a block of `k` vertices starting at `start`, in
    /// descending bit-pattern order with the first vertex most significant.
    fn subsets(start: usize, k: usize) -> Vec<VSet> {
        (1u64..(1 << k))
            .rev()
            .map(|pattern| {
                (0..k)
                    .filter(|&i| pattern >> (k - 1 - i) & 1 == 1)
                    .map(|i| start + i)
                    .collect()
            })
            .collect()
    }

    /// `E_pq` in block-row order.
    pub fn base_edges(&self) -> Vec<VSet> {
        let b = self.blocks();
        let r = VSet::singleton(b.r);
        let rs = VSet::singleton(b.r_star);
        let mut edges = Vec::with_capacity(2 * ((1 << self.p) - 1) + 2 * ((1 << self.q) - 1));
        let ps = Self::subsets(0, self.p);
        let qs = Self::subsets(2 * self.p, self.q);
        for &s in &ps {
            edges.push(s.union(self.star(b.p.difference(s))).union(b.q).union(r));
        }
        for &s in &ps {
            edges.push(b.p.difference(s).union(self.star(s)).union(b.q_star).union(r));
        }
        for &s in &qs {
            edges.push(b.p.union(b.q.difference(s)).union(self.star(s)).union(rs));
        }
        for &s in &qs {
            edges.push(b.p_star.union(s).union(self.star(b.q.difference(s))).union(rs));
        }
        edges
    }

    /// `F_pq = {PQr, P*Q*r, PQ*r*, P*Qr*}`, in that order.
    pub fn f_pq(&self) -> [VSet; 4] {
        let b = self.blocks();
        let r = VSet::singleton(b.r);
        let rs = VSet::singleton(b.r_star);
        [
            b.p.union(b.q).union(r),
            b.p_star.union(b.q_star).union(r),
            b.p.union(b.q_star).union(rs),
            b.p_star.union(b.q).union(rs),
        ]
    }

    /// `(F_pq)*`, aligned with [`QpqDescriptor::f_pq`].
    pub fn f_pq_star(&self) -> [VSet; 4] {
        self.f_pq().map(|f| self.star(f))
    }

    pub fn vertex_type(&self, v: usize) -> VertexBlock {
        let (p, q) = (self.p, self.q);
        if v < p {
            VertexBlock::P
        } else if v < 2 * p {
            VertexBlock::PStar
        } else if v < 2 * p + q {
            VertexBlock::Q
        } else if v < 2 * (p + q) {
            VertexBlock::QStar
        } else if v == self.r_idx() {
            VertexBlock::R
        } else {
            VertexBlock::RStar
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexBlock {
    P,
    PStar,
    Q,
    QStar,
    R,
    RStar,
}

/// How the extra edges `F` are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FSpec {
    None,
    /// `F = {f* : f ∈ F'}` for the listed members of `F_pq` (0-based).
    CaseI(Vec<usize>),
    /// `F = (E_pq ∖ F')*` for the listed members `F'` of `F_pq` (0-based).
    CaseII(Vec<usize>),
    Custom(Vec<VSet>),
}

impl FSpec {
    pub fn case_i_all() -> FSpec {
        FSpec::CaseI(vec![0, 1, 2, 3])
    }

    pub fn case_ii_all() -> FSpec {
        FSpec::CaseII(vec![0, 1, 2, 3])
    }

    /// Every nonempty subset of the four `F_pq` members, for both cases.
    pub fn all_packing_specs() -> Vec<FSpec> {
        let subsets: Vec<Vec<usize>> = (1u8..16)
            .map(|m| (0..4).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        let case_i: Vec<FSpec> = subsets.iter().cloned().map(FSpec::CaseI).collect();
        case_i
            .into_iter()
            .chain(subsets.into_iter().map(FSpec::CaseII))
            .collect()
    }

    fn check_indices(idx: &[usize]) -> Result<()> {
        if idx.is_empty() {
            return Err(Error::UnsupportedFSpec("empty index list".into()));
        }
        if let Some(bad) = idx.iter().find(|&&i| i > 3) {
            return Err(Error::UnsupportedFSpec(format!("F_pq has 4 members, got index {}", bad + 1)));
        }
        Ok(())
    }

    /// The extra edge set `F`.
    pub fn resolve(&self, d: &QpqDescriptor) -> Result<Vec<VSet>> {
        match self {
            FSpec::None => Ok(Vec::new()),
            FSpec::CaseI(idx) => {
                Self::check_indices(idx)?;
                let stars = d.f_pq_star();
                let mut idx = idx.clone();
                idx.sort_unstable();
                idx.dedup();
                Ok(idx.iter().map(|&i| stars[i]).collect())
            }
            FSpec::CaseII(idx) => {
                Self::check_indices(idx)?;
                let f = d.f_pq();
                let removed: Vec<VSet> = idx.iter().map(|&i| f[i]).collect();
                Ok(d.base_edges()
                    .into_iter()
                    .filter(|e| !removed.contains(e))
                    .map(|e| d.star(e))
                    .collect())
            }
            FSpec::Custom(edges) => Ok(edges.clone()),
        }
    }

    pub fn is_full_star(&self) -> bool {
        match self {
            FSpec::CaseI(idx) => {
                let mut v = idx.clone();
                v.sort_unstable();
                v.dedup();
                v == [0, 1, 2, 3]
            }
            _ => false,
        }
    }
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |idx: &[usize]| {
            idx.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FSpec::None => write!(f, "none"),
            FSpec::CaseI(idx) if self.is_full_star() && idx.len() == 4 => write!(f, "caseI:all"),
            FSpec::CaseI(idx) => write!(f, "caseI:{}", list(idx)),
            FSpec::CaseII(idx) if idx.len() == 4 => write!(f, "caseII:all"),
            FSpec::CaseII(idx) => write!(f, "caseII:{}", list(idx)),
            FSpec::Custom(_) => write!(f, "custom"),
        }
    }
}

impl FromStr for FSpec {
    type Err = Error;

    /// `none`, `caseI:all`, `caseI:<1-based indices>`, `caseII:all`, `caseII:<indices>`.
    /// `custom:` needs a file and is handled by callers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") {
            return Ok(FSpec::None);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::UnsupportedFSpec(format!("cannot parse `{s}`")))?;
        let idx = if rest.trim() == "all" {
            vec![0, 1, 2, 3]
        } else {
            rest.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&i| (1..=4).contains(&i))
                        .map(|i| i - 1)
                        .ok_or_else(|| Error::UnsupportedFSpec(format!("bad index `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        match kind {
            "caseI" | "casei" | "case1" => Ok(FSpec::CaseI(idx)),
            "caseII" | "caseii" | "case2" => Ok(FSpec::CaseII(idx)),
            _ => Err(Error::UnsupportedFSpec(format!("unknown kind `{kind}`"))),
        }
    }
}

/// A generated family member with its descriptor.
#[derive(Clone, Debug)]
pub struct QpqClutter {
    pub descriptor: QpqDescriptor,
    pub fspec: FSpec,
    pub clutter: Clutter,
}

/// `Q_pq`.
pub fn generate_qpq(p: usize, q: usize) -> Result<QpqClutter> {
    generate_qpq_f(p, q, &FSpec::None)
}

/// `Q_pq^F = (V_pq, E_pq ∪ F)`.
pub fn generate_qpq_f(p: usize, q: usize, f: &FSpec) -> Result<QpqClutter> {
    let d = QpqDescriptor::new(p, q)?;
    let u = Arc::new(d.universe());
    let base = d.base_edges();
    let extra = f.resolve(&d)?;
    let all = VSet::full(d.n());
    let mut edges = base.clone();
    for &e in &extra {
        if !e.is_subset(all) {
            return Err(Error::IndexOutOfRange {
                index: e.difference(all).first().unwrap_or(0),
                n: d.n(),
            });
        }
        if edges.contains(&e) {
            continue;
        }
        if let Some(&b) = base.iter().find(|&&b| b.is_subset(e) || e.is_subset(b)) {
            return Err(Error::InclusionConflict(format!(
                "{} vs {}",
                u.format_set(e),
                u.format_set(b)
            )));
        }
        edges.push(e);
    }
    // custom F may be internally comparable
    if minimal_sets(edges.clone()).len() != edges.len() {
        edges = minimal_sets(edges);
    }
    let clutter = Clutter::with_universe(u, edges)?;
    Ok(QpqClutter {
        descriptor: d,
        fspec: f.clone(),
        clutter,
    })
}

/// Transversal families of `Q_pq`, labelled (a)–(h).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TransversalType {
    /// `vv*`, `v ∈ P ∪ Q ∪ {r}`
    A,
    /// `p_i p_j* q_k q_l*`, `i ≠ j`, `k ≠ l`
    B,
    /// `p_i p_j* r`, `i ≠ j`
    C,
    /// `q_i q_j* r*`, `i ≠ j`
    D,
    /// `P q_i* r*`
    E,
    /// `P* q_i r*`
    F,
    /// `p_i Q r`
    G,
    /// `p_i* Q* r`
    H,
}

/// The families (a)–(h), each member tagged.
pub fn transversal_families(d: &QpqDescriptor) -> Vec<(TransversalType, VSet)> {
    use TransversalType::*;
    let b = d.blocks();
    let (p, q) = (d.p, d.q);
    let mut out = Vec::new();
    for v in b.p.union(b.q).iter().chain([b.r]) {
        out.push((A, VSet::from_indices([v, d.star_vertex(v)])));
    }
    for i in 0..p {
        for j in (0..p).filter(|&j| j != i) {
            for k in 0..q {
                for l in (0..q).filter(|&l| l != k) {
                    out.push((
                        B,
                        VSet::from_indices([d.p_idx(i), d.p_star_idx(j), d.q_idx(k), d.q_star_idx(l)]),
                    ));
                }
            }
        }
    }
    for i in 0..p {
        for j in (0..p).filter(|&j| j != i) {
            out.push((C, VSet::from_indices([d.p_idx(i), d.p_star_idx(j), b.r])));
        }
    }
    for i in 0..q {
        for j in (0..q).filter(|&j| j != i) {
            out.push((D, VSet::from_indices([d.q_idx(i), d.q_star_idx(j), b.r_star])));
        }
    }
    for i in 0..q {
        out.push((E, b.p.union(VSet::from_indices([d.q_star_idx(i), b.r_star]))));
    }
    for i in 0..q {
        out.push((F, b.p_star.union(VSet::from_indices([d.q_idx(i), b.r_star]))));
    }
    for i in 0..p {
        out.push((G, b.q.union(VSet::from_indices([d.p_idx(i), b.r]))));
    }
    for i in 0..p {
        out.push((H, b.q_star.union(VSet::from_indices([d.p_star_idx(i), b.r]))));
    }
    out
}

/// For a transversal of type (e)–(h), the member of `(F_pq)*` it misses.
pub fn missed_star_edge(d: &QpqDescriptor, t: TransversalType) -> Option<VSet> {
    let [pqr, psqsr, pqsrs, psqrs] = d.f_pq();
    match t {
        TransversalType::E => Some(d.star(pqsrs)), // P*Qr
        TransversalType::F => Some(d.star(psqrs)), // PQ*r
        TransversalType::G => Some(d.star(pqr)),   // P*Q*r*
        TransversalType::H => Some(d.star(psqsr)), // PQr*
        _ => None,
    }
}

/// `b(Q_pq)` assembled from the closed-form families (a)–(h).
pub fn blocker_formula_qpq(p: usize, q: usize) -> Result<Clutter> {
    let d = QpqDescriptor::new(p, q)?;
    let sets = transversal_families(&d).into_iter().map(|(_, t)| t).collect();
    formula_clutter(&d, sets)
}

fn formula_clutter(d: &QpqDescriptor, mut sets: Vec<VSet>) -> Result<Clutter> {
    sets.sort_unstable();
    sets.dedup();
    Clutter::new(d.universe(), sets)
}

/// `b(Q_pq^F)` for Case I and Case II specifications, from the closed form.
///
/// Case I keeps (a)–(d) and each (e)–(h) member whose missed `(F_pq)*` edge
/// is absent from `F`. Case II keeps (a), (b) and the members of `F'`: each
/// `f ∈ F_pq` has complement `f*`, so `f` misses `g* ∈ F` only when `g = f`,
/// and `f` is a transversal exactly when `f ∉ E_pq ∖ F'`.
pub fn blocker_formula_qpq_f(p: usize, q: usize, f: &FSpec) -> Result<Clutter> {
    use TransversalType::*;
    let d = QpqDescriptor::new(p, q)?;
    let fam = transversal_families(&d);
    let sets: Vec<VSet> = match f {
        FSpec::None => fam.into_iter().map(|(_, t)| t).collect(),
        FSpec::CaseI(_) => {
            let extra = f.resolve(&d)?;
            fam.into_iter()
                .filter(|(ty, _)| match missed_star_edge(&d, *ty) {
                    Some(edge) => !extra.contains(&edge),
                    None => true,
                })
                .map(|(_, t)| t)
                .collect()
        }
        FSpec::CaseII(idx) => {
            FSpec::check_indices(idx)?;
            let fpq = d.f_pq();
            fam.into_iter()
                .filter(|(ty, _)| matches!(ty, A | B))
                .map(|(_, t)| t)
                .chain((0..4).filter(|i| idx.contains(i)).map(|i| fpq[i]))
                .collect()
        }
        FSpec::Custom(_) => {
            return Err(Error::UnsupportedFSpec(
                "closed-form blocker covers Case I and Case II only".into(),
            ))
        }
    };
    formula_clutter(&d, sets)
}

/// The square submatrix `L` of `B(Q_pq^F)` whose determinant certifies `Δ_r = 1`.
///
/// Rows are the edges `P(Q∖q_i)q_i*r*` (i = 1..q), `PQr`, `(P∖p_i)p_i*Qr`
/// (i = 1..p) and `P*Qr*`; columns are the vertex rows `P*, Q*, r*, r` of `B`.
/// Returns `None` if one of these edges is missing from the clutter.
pub fn l_submatrix(d: &QpqDescriptor, c: &Clutter) -> Option<IntegerMatrix> {
    let b = d.blocks();
    let r = VSet::singleton(b.r);
    let rs = VSet::singleton(b.r_star);
    let mut rows = Vec::new();
    for i in 0..d.q {
        rows.push(
            b.p.union(b.q)
                .difference(VSet::singleton(d.q_idx(i)))
                .union(VSet::from_indices([d.q_star_idx(i)]))
                .union(rs),
        );
    }
    rows.push(b.p.union(b.q).union(r));
    for i in 0..d.p {
        rows.push(
            b.p.difference(VSet::singleton(d.p_idx(i)))
                .union(VSet::singleton(d.p_star_idx(i)))
                .union(b.q)
                .union(r),
        );
    }
    rows.push(b.p_star.union(b.q).union(rs));
    let cols: Vec<usize> = b
        .p_star
        .iter()
        .chain(b.q_star.iter())
        .chain([b.r_star, b.r])
        .collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (a, &e) in rows.iter().enumerate() {
        if !c.contains_edge(e) {
            return None;
        }
        for (k, &v) in cols.iter().enumerate() {
            if e.contains(v) {
                m.set(a, k, 1.into());
            }
        }
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
            let g = generate_qpq(p, q).unwrap();
            assert_eq!(g.clutter.n(), 2 * (p + q + 1));
            assert_eq!(g.clutter.edge_count(), 2 * ((1 << p) - 1) + 2 * ((1 << q) - 1));
        }
    }

    #[test]
    fn q11_edges() {
        let g = generate_qpq(1, 1).unwrap();
        let u = g.clutter.universe();
        let want = [
            vec!["p1", "q1", "r"],
            vec!["p1*", "q1*", "r"],
            vec!["p1", "q1*", "r*"],
            vec!["p1*", "q1", "r*"],
        ];
        let want: Vec<VSet> = want.iter().map(|e| u.set_of(e).unwrap()).collect();
        assert_eq!(g.clutter.edges(), want.as_slice());
    }

    #[test]
    fn f_pq_instance() {
        let d = QpqDescriptor::new(1, 1).unwrap();
        let u = d.universe();
        assert_eq!(d.f_pq()[0], u.set_of(&["p1", "q1", "r"]).unwrap());
        for f in d.f_pq() {
            assert_eq!(d.star(d.star(f)), f);
            assert!(d.f_pq_star().contains(&d.star(f)));
        }
    }

    #[test]
    fn star_is_fixed_point_free_involution() {
        let d = QpqDescriptor::new(2, 3).unwrap();
        for v in 0..d.n() {
            assert_ne!(d.star_vertex(v), v);
            assert_eq!(d.star_vertex(d.star_vertex(v)), v);
        }
    }

    #[test]
    fn fspec_parse_and_display() {
        assert_eq!("none".parse::<FSpec>().unwrap(), FSpec::None);
        assert_eq!("caseI:all".parse::<FSpec>().unwrap(), FSpec::case_i_all());
        assert_eq!("caseII:1".parse::<FSpec>().unwrap(), FSpec::CaseII(vec![0]));
        assert_eq!("caseI:2,4".parse::<FSpec>().unwrap(), FSpec::CaseI(vec![1, 3]));
        assert!("caseI:5".parse::<FSpec>().is_err());
        assert!("bogus".parse::<FSpec>().is_err());
        assert_eq!(FSpec::case_i_all().to_string(), "caseI:all");
        assert_eq!(FSpec::CaseII(vec![0]).to_string(), "caseII:1");
    }

    #[test]
    fn full_star_adds_four_edges() {
        let g = generate_qpq_f(2, 1, &FSpec::case_i_all()).unwrap();
        assert_eq!(g.clutter.edge_count(), 8 + 4);
        let none = generate_qpq_f(2, 1, &FSpec::None).unwrap();
        assert_eq!(none.clutter, generate_qpq(2, 1).unwrap().clutter);
    }

    #[test]
    fn inclusion_conflict_rejected() {
        let d = QpqDescriptor::new(1, 1).unwrap();
        let sub = VSet::from_indices([d.p_idx(0), d.q_idx(0)]);
        let err = generate_qpq_f(1, 1, &FSpec::Custom(vec![sub])).unwrap_err();
        assert!(matches!(err, Error::InclusionConflict(_)));
    }

    #[test]
    fn custom_formula_unsupported() {
        assert!(matches!(
            blocker_formula_qpq_f(1, 1, &FSpec::Custom(vec![])),
            Err(Error::UnsupportedFSpec(_))
        ));
    }

    #[test]
    fn formula_contains_r_pair() {
        let d = QpqDescriptor::new(2, 2).unwrap();
        let b = blocker_formula_qpq(2, 2).unwrap();
        assert!(b.contains_edge(VSet::from_indices([d.r_idx(), d.r_star_idx()])));
    }
}
