//! Decision procedures: König, packing, bounded mengerian, two-partitions,
//! the rank and minor propositions for two-partitionable clutters, and the
//! binary / dyadic / balanced classification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clutter::{minor_edges, Clutter, MinorSpec};
use crate::covering::{max_matching, max_weighted_packing, min_transversal, CoverSolver, WeightVector};
use crate::error::{Error, Result};
use crate::lattice::rank_rational;
use crate::polyhedron::{is_ideal, DEFAULT_VERTEX_LIMIT};
use crate::vset::VSet;

/// Minor enumeration visits `3^n` specs; refuse beyond this many vertices.
pub const DEFAULT_MINOR_LIMIT: usize = 16;
/// Largest ω-box `(W_max + 1)^n` the bounded mengerian check will scan.
pub const DEFAULT_WEIGHT_BUDGET: u128 = 20_000_000;
pub const DEFAULT_BALANCED_LIMIT: usize = 7;

/// `(τ, ν)` of an edge family, with the conventions for `∅ ∈ E` and `E = ∅`.
fn tau_nu(edges: &[VSet]) -> (u64, u64) {
    if edges.is_empty() {
        return (0, 0);
    }
    match min_transversal(edges) {
        None => (0, 0),
        Some(t) => (t.len() as u64, max_matching(edges).len() as u64),
    }
}

/// `τ(c) = ν(c)`; a clutter with an empty edge, or with no edges, counts as König.
pub fn has_konig(c: &Clutter) -> bool {
    let (t, n) = tau_nu(c.edges());
    t == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub spec: MinorSpec,
    pub tau: u64,
    pub nu: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingReport {
    pub packs: bool,
    /// Failing minor with the smallest base-3 code.
    pub failing: Option<MinorRecord>,
    pub checked: u64,
    /// One record per minor, in code order, when requested.
    pub ledger: Option<Vec<MinorRecord>>,
}

/// Checks König on all `3^n` minors.
pub fn has_packing_property(c: &Clutter) -> Result<PackingReport> {
    packing_report(c, DEFAULT_MINOR_LIMIT, false)
}

pub fn packing_report(c: &Clutter, limit: usize, with_ledger: bool) -> Result<PackingReport> {
    let n = c.n();
    if n > limit {
        return Err(Error::UniverseTooLarge { n, limit });
    }
    let total = 3u64.pow(n as u32);
    let edges = c.edges();
    let record = |code: u64| {
        let spec = MinorSpec::from_code(code, n);
        let (tau, nu) = tau_nu(&minor_edges(edges, spec.deletions, spec.contractions));
        MinorRecord { spec, tau, nu }
    };
    if with_ledger {
        let ledger: Vec<MinorRecord> = (0..total).into_par_iter().map(record).collect();
        let failing = ledger.iter().find(|r| r.tau != r.nu).cloned();
        return Ok(PackingReport {
            packs: failing.is_none(),
            failing,
            checked: total,
            ledger: Some(ledger),
        });
    }
    let first_bad = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let r = record(code);
            r.tau != r.nu
        })
        .min();
    Ok(PackingReport {
        packs: first_bad.is_none(),
        failing: first_bad.map(record),
        checked: total,
        ledger: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MengerianVerdict {
    /// No counterexample in `{0..W_max}^n`; not a proof.
    PassBounded,
    Fail { w: Vec<u64>, reason: String },
    NotIdeal { fractional_vertex: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerianReport {
    pub ideal: bool,
    pub w_max: u64,
    pub checked: u64,
    pub verdict: MengerianVerdict,
    /// `(ω, witness edge index)` for every ω with `τ^ω > 0`, when requested.
    pub witnesses: Option<Vec<(Vec<u64>, usize)>>,
}

impl MengerianReport {
    pub fn passed(&self) -> bool {
        self.verdict == MengerianVerdict::PassBounded
    }
}

#[derive(Clone, Debug)]
pub struct MengerianOptions {
    pub w_max: u64,
    pub budget: u128,
    pub record_witnesses: bool,
    /// Run the ω scan even when `Q(A)` has a fractional vertex.
    pub skip_ideal_gate: bool,
    pub vertex_limit: usize,
}

impl MengerianOptions {
    pub fn new(w_max: u64) -> Self {
        MengerianOptions {
            w_max,
            budget: DEFAULT_WEIGHT_BUDGET,
            record_witnesses: false,
            skip_ideal_gate: false,
            vertex_limit: DEFAULT_VERTEX_LIMIT,
        }
    }
}

/// Mixed-radix view of the box `{0..W_max}^n`.
struct WeightBox {
    n: usize,
    base: u64,
    size: u64,
}

impl WeightBox {
    fn new(n: usize, w_max: u64, budget: u128) -> Result<Self> {
        let base = w_max + 1;
        let size = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > budget {
            return Err(Error::BoundTooLarge { count: size, budget });
        }
        Ok(WeightBox {
            n,
            base,
            size: size as u64,
        })
    }

    fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut w = vec![0; self.n];
        for x in w.iter_mut() {
            *x = idx % self.base;
            idx /= self.base;
        }
        w
    }

    fn stride(&self, v: usize) -> u64 {
        self.base.pow(v as u32)
    }
}

/// Witness check on the box: every ω with `τ^ω > 0` needs an edge `e`
/// with `ω − χ_e ≥ 0` and `τ^ω = τ^{ω−e} + 1`.
pub fn is_mengerian_bounded(c: &Clutter, w_max: u64) -> Result<MengerianReport> {
    is_mengerian_bounded_with(c, &MengerianOptions::new(w_max))
}

pub fn is_mengerian_bounded_with(c: &Clutter, opts: &MengerianOptions) -> Result<MengerianReport> {
    if c.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    let bx = WeightBox::new(c.n(), opts.w_max, opts.budget)?;
    let ideal = is_ideal(c, opts.vertex_limit)?;
    if !ideal.ideal && !opts.skip_ideal_gate {
        return Ok(MengerianReport {
            ideal: false,
            w_max: opts.w_max,
            checked: 0,
            verdict: MengerianVerdict::NotIdeal {
                fractional_vertex: ideal
                    .fractional_vertex
                    .map(|p| p.0.iter().map(|x| x.to_string()).collect())
                    .unwrap_or_default(),
            },
            witnesses: None,
        });
    }
    let solver = CoverSolver::new(c)?;
    let taus: Vec<u64> = (0..bx.size)
        .into_par_iter()
        .map(|i| solver.tau_w_value(&bx.decode(i)))
        .collect();
    let edge_offsets: Vec<u64> = c
        .edges()
        .iter()
        .map(|e| e.iter().map(|v| bx.stride(v)).sum())
        .collect();
    let witness_at = |i: u64, w: &[u64]| -> Option<usize> {
        let t = taus[i as usize];
        c.edges().iter().enumerate().find_map(|(k, e)| {
            let fits = e.iter().all(|v| w[v] > 0);
            (fits && taus[(i - edge_offsets[k]) as usize] + 1 == t).then_some(k)
        })
    };
    let results: Vec<(u64, Option<usize>)> = (0..bx.size)
        .into_par_iter()
        .filter(|&i| taus[i as usize] > 0)
        .map(|i| (i, witness_at(i, &bx.decode(i))))
        .collect();
    let checked = bx.size;
    if let Some(&(i, _)) = results.iter().find(|(_, wit)| wit.is_none()) {
        let w = bx.decode(i);
        let reason = format!(
            "τ^ω = {} and no edge e with ω − e ≥ 0 has τ^(ω−e) = τ^ω − 1",
            taus[i as usize]
        );
        return Ok(MengerianReport {
            ideal: ideal.ideal,
            w_max: opts.w_max,
            checked,
            verdict: MengerianVerdict::Fail { w, reason },
            witnesses: None,
        });
    }
    let witnesses = opts.record_witnesses.then(|| {
        results
            .iter()
            .map(|&(i, k)| (bx.decode(i), k.expect("checked above")))
            .collect()
    });
    Ok(MengerianReport {
        ideal: ideal.ideal,
        w_max: opts.w_max,
        checked,
        verdict: MengerianVerdict::PassBounded,
        witnesses,
    })
}

/// Smallest edge index `e` with `w − χ_e ≥ 0` and `τ^w = τ^{w−e} + 1`.
pub fn mengerian_witness_edge(c: &Clutter, w: &WeightVector) -> Result<Option<usize>> {
    if w.len() != c.n() {
        return Err(Error::WeightLength {
            expected: c.n(),
            got: w.len(),
        });
    }
    let solver = CoverSolver::new(c)?;
    let t = solver.tau_w_value(w.as_slice());
    if t == 0 {
        return Ok(None);
    }
    Ok(c.edges().iter().position(|&e| {
        w.minus_edge(e)
            .is_some_and(|w2| solver.tau_w_value(w2.as_slice()) + 1 == t)
    }))
}

/// First ω in the box (code order) with `τ^ω ≠ ν^ω`, by direct evaluation of both sides.
pub fn direct_mengerian_counterexample(c: &Clutter, w_max: u64, budget: u128) -> Result<Option<Vec<u64>>> {
    if c.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    let bx = WeightBox::new(c.n(), w_max, budget)?;
    let solver = CoverSolver::new(c)?;
    let bad = (0..bx.size)
        .into_par_iter()
        .filter(|&i| {
            let w = bx.decode(i);
            let nu = max_weighted_packing(c.edges(), &w).map(|(v, _)| v).unwrap_or(0);
            solver.tau_w_value(&w) != nu
        })
        .min();
    Ok(bad.map(|i| bx.decode(i)))
}

/// Blocks `X_1, …, X_d` of size two, each met exactly once by every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPartition {
    pub blocks: Vec<(usize, usize)>,
}

impl TwoPartition {
    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_set(&self, i: usize) -> VSet {
        let (a, b) = self.blocks[i];
        VSet::from_indices([a, b])
    }

    pub fn is_valid_for(&self, c: &Clutter) -> bool {
        let mut seen = VSet::EMPTY;
        for i in 0..self.d() {
            let x = self.block_set(i);
            if x.len() != 2 || seen.intersects(x) {
                return false;
            }
            seen = seen.union(x);
            if !c.edges().iter().all(|e| e.intersection(x).len() == 1) {
                return false;
            }
        }
        seen == VSet::full(c.n())
    }
}

/// The lexicographically smallest two-partition, if any.
pub fn find_2partition(c: &Clutter) -> Option<TwoPartition> {
    let n = c.n();
    if n < 2 || n % 2 == 1 {
        return None;
    }
    let valid = |u: usize, v: usize| {
        let x = VSet::from_indices([u, v]);
        c.edges().iter().all(|e| e.intersection(x).len() == 1)
    };
    fn go(
        n: usize,
        used: VSet,
        valid: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(u) = (0..n).find(|&u| !used.contains(u)) else {
            return true;
        };
        for v in u + 1..n {
            if used.contains(v) || !valid(u, v) {
                continue;
            }
            out.push((u, v));
            let mut next = used;
            next.insert(u);
            next.insert(v);
            if go(n, next, valid, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut blocks = Vec::new();
    go(n, VSet::EMPTY, &valid, &mut blocks).then_some(TwoPartition { blocks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub d: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    /// `rank(A) ≤ d + 1`, from the paired-rows identity.
    pub bound_holds: bool,
    /// A minimal cover of size `d ≥ 3` exists and the clutter is König.
    pub hypothesis: bool,
    /// Under the hypothesis, whether `rank(A) = d + 1`.
    pub maximal_rank: Option<bool>,
}

/// Rank facts for a two-partitionable clutter.
pub fn check_rank_prop(c: &Clutter, part: &TwoPartition) -> Result<RankReport> {
    if !part.is_valid_for(c) {
        return Err(Error::NotTwoPartitionable(format!("{:?}", part.blocks)));
    }
    let d = part.d();
    let rank_a = rank_rational(&c.incidence().matrix);
    let rank_b = rank_rational(&c.augmented_incidence());
    let hypothesis = d >= 3
        && c.blocker_total().edges().iter().any(|t| t.len() == d)
        && has_konig(c);
    Ok(RankReport {
        d,
        rank_a,
        rank_b,
        bound_holds: rank_a <= d + 1,
        hypothesis,
        maximal_rank: hypothesis.then_some(rank_a == d + 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    /// Blocks `X_i` with `Z ∩ X_i = ∅`.
    pub blocks: Vec<usize>,
    pub konig: bool,
    /// König, or `W ∩ X_i = ∅` for every listed block.
    pub holds: bool,
}

/// For a proper minor `H \ W / Z`: König, or `W` misses each block that `Z` misses.
pub fn check_minor_dichotomy(c: &Clutter, part: &TwoPartition, spec: &MinorSpec) -> Result<DichotomyReport> {
    if !part.is_valid_for(c) {
        return Err(Error::NotTwoPartitionable(format!("{:?}", part.blocks)));
    }
    let (w, z) = (spec.deletions, spec.contractions);
    if w.intersects(z) {
        return Err(Error::OverlappingSpec);
    }
    if !spec.is_proper() {
        return Err(Error::PreconditionViolated("minor must be proper".into()));
    }
    let blocks: Vec<usize> = (0..part.d())
        .filter(|&i| !part.block_set(i).intersects(z))
        .collect();
    if blocks.is_empty() {
        return Err(Error::PreconditionViolated("Z meets every block".into()));
    }
    let minor = c.minor(spec)?;
    let konig = has_konig(&minor);
    let holds = konig || blocks.iter().all(|&i| !part.block_set(i).intersects(w));
    Ok(DichotomyReport { blocks, konig, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub binary: bool,
    /// Edge indices `e1, e2, e3` whose symmetric difference contains no edge.
    pub binary_witness: Option<[usize; 3]>,
    pub dyadic: bool,
    /// Edge index and blocker member meeting it in three or more vertices.
    pub dyadic_witness: Option<(usize, Vec<usize>)>,
    pub balanced: bool,
    /// False when odd submatrices larger than the limit could exist.
    pub balanced_exhaustive: bool,
    pub balanced_limit: usize,
    /// Rows (vertices) and columns (edges) of an odd cycle submatrix.
    pub balanced_witness: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn classify(c: &Clutter) -> Result<Classification> {
    classify_with_limit(c, DEFAULT_BALANCED_LIMIT)
}

pub fn classify_with_limit(c: &Clutter, limit: usize) -> Result<Classification> {
    let e = c.edges();
    let binary_witness = find_nonbinary_triple(e);
    let b = c.blocker()?;
    let dyadic_witness = e.iter().enumerate().find_map(|(k, &edge)| {
        b.edges()
            .iter()
            .find(|t| t.intersection(edge).len() > 2)
            .map(|t| (k, t.to_vec()))
    });
    let balanced_witness = find_odd_cycle_submatrix(c.n(), e, limit);
    Ok(Classification {
        binary: binary_witness.is_none(),
        binary_witness,
        dyadic: dyadic_witness.is_none(),
        dyadic_witness,
        balanced: balanced_witness.is_none(),
        balanced_exhaustive: limit >= c.n().min(e.len()),
        balanced_limit: limit,
        balanced_witness,
    })
}

fn find_nonbinary_triple(e: &[VSet]) -> Option<[usize; 3]> {
    let q = e.len();
    (0..q)
        .into_par_iter()
        .flat_map_iter(|a| (a..q).flat_map(move |b| (b..q).map(move |c| [a, b, c])))
        .find_first(|&[a, b, c]| {
            let s = e[a].symmetric_difference(e[b]).symmetric_difference(e[c]);
            !e.iter().any(|f| f.is_subset(s))
        })
}

/// An odd `k × k` submatrix (`3 ≤ k ≤ limit`) of the incidence matrix with
/// exactly two ones per row and column.
///
/// Any such submatrix contains an odd cycle submatrix, so it suffices to search
/// for cyclic sequences `v_1 e_1 v_2 e_2 … v_k e_k` with `e_i ∩ R = {v_i, v_{i+1}}`
/// where `R = {v_1, …, v_k}`.
pub fn find_odd_cycle_submatrix(n: usize, edges: &[VSet], limit: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    struct Search<'a> {
        edges: &'a [VSet],
        k: usize,
        verts: Vec<usize>,
        cols: Vec<usize>,
    }
    impl Search<'_> {
        fn r(&self) -> VSet {
            self.verts.iter().copied().collect()
        }
        // every chosen column meets R only in its two cycle neighbours
        fn consistent(&self) -> bool {
            let r = self.r();
            let m = self.verts.len();
            self.cols.iter().enumerate().all(|(i, &col)| {
                let mut allowed = VSet::singleton(self.verts[i]);
                if i + 1 < m {
                    allowed.insert(self.verts[i + 1]);
                } else {
                    allowed.insert(self.verts[0]);
                }
                self.edges[col].intersection(r).is_subset(allowed)
            })
        }
        fn go(&mut self) -> bool {
            let m = self.verts.len();
            let last = self.verts[m - 1];
            if m == self.k {
                let first = self.verts[0];
                for (col, e) in self.edges.iter().enumerate() {
                    if self.cols.contains(&col) || !e.contains(last) || !e.contains(first) {
                        continue;
                    }
                    self.cols.push(col);
                    if self.consistent() {
                        return true;
                    }
                    self.cols.pop();
                }
                return false;
            }
            for (col, e) in self.edges.iter().enumerate() {
                if self.cols.contains(&col) || !e.contains(last) {
                    continue;
                }
                for v in e.iter() {
                    // v_1 is the smallest vertex of the cycle
                    if v <= self.verts[0] || self.verts.contains(&v) {
                        continue;
                    }
                    self.verts.push(v);
                    self.cols.push(col);
                    if self.consistent() && self.go() {
                        return true;
                    }
                    self.cols.pop();
                    self.verts.pop();
                }
            }
            false
        }
    }
    let top = limit.min(n).min(edges.len());
    (3..=top).step_by(2).find_map(|k| {
        (0..n).into_par_iter().find_map_first(|start| {
            let mut s = Search {
                edges,
                k,
                verts: vec![start],
                cols: Vec::new(),
            };
            s.go().then_some((s.verts, s.cols))
        })
    })
}
