//! Greedy edge decomposition of a weight vector on `Q_pq^F`, `F = (F_pq)*`.
//!
//! Each round picks an edge `e` with `w − χ_e ≥ 0` and `τ^{w−e} = τ^w − 1`
//! from one of two fixed tables, so the loop runs exactly `τ^w` times and the
//! chosen edges form an integral packing of value `τ^w`.
//!
//! Table A (used when one block pair is saturated by the selector sets):
//!
//! ```text
//! row1  𝒫 Q r     |𝒫| = p, q_min > 0
//! row2  𝒫 Q* r    |𝒫| = p, q*_min > 0
//! row3  P 𝒬 r*    |𝒬| = q, p_min > 0
//! row4  P* 𝒬 r*   |𝒬| = q, p*_min > 0
//! ```
//!
//! Table B (edges of `F_pq ∪ F_pq*`), with `c*` the partner of the `r`-vertex
//! of a minimum transversal:
//!
//! ```text
//! row1  P Q c*     p_min, q_min > 0
//! row2  P Q* c*    p_min, q*_min > 0
//! row3  P* Q c*    p*_min, q_min > 0
//! row4  P* Q* c*   p*_min, q*_min > 0
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covering::CoverSolver;
use crate::error::{Error, Result};
use crate::qpq::{transversal_families, QpqClutter, QpqDescriptor, TransversalType};
use crate::vset::VSet;

/// Block minima of `w` and the strict exceeders `P_> = {p : w(p) > p_min}` etc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinStats {
    pub p_min: u64,
    pub p_star_min: u64,
    pub q_min: u64,
    pub q_star_min: u64,
    pub p_argmin: Vec<usize>,
    pub p_star_argmin: Vec<usize>,
    pub q_argmin: Vec<usize>,
    pub q_star_argmin: Vec<usize>,
    pub p_gt: VSet,
    pub p_star_gt: VSet,
    pub q_gt: VSet,
    pub q_star_gt: VSet,
}

fn block_stats(block: VSet, w: &[u64]) -> (u64, Vec<usize>, VSet) {
    let min = block.iter().map(|v| w[v]).min().unwrap_or(0);
    let argmin = block.iter().filter(|&v| w[v] == min).collect();
    let gt = block.iter().filter(|&v| w[v] > min).collect();
    (min, argmin, gt)
}

pub fn min_stats(d: &QpqDescriptor, w: &[u64]) -> MinStats {
    let b = d.blocks();
    let (p_min, p_argmin, p_gt) = block_stats(b.p, w);
    let (p_star_min, p_star_argmin, p_star_gt) = block_stats(b.p_star, w);
    let (q_min, q_argmin, q_gt) = block_stats(b.q, w);
    let (q_star_min, q_star_argmin, q_star_gt) = block_stats(b.q_star, w);
    MinStats {
        p_min,
        p_star_min,
        q_min,
        q_star_min,
        p_argmin,
        p_star_argmin,
        q_argmin,
        q_star_argmin,
        p_gt,
        p_star_gt,
        q_gt,
        q_star_gt,
    }
}

/// `𝒫 ⊆ P_> ∪ P*_>` and `𝒬 ⊆ Q_> ∪ Q*_>`, at most one of each pair, of maximum size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectorSets {
    pub pp: VSet,
    pub qq: VSet,
}

/// Takes `p_i` when it exceeds `p_min`, else `p_i*` when it exceeds `p*_min`.
pub fn build_selectors(d: &QpqDescriptor, s: &MinStats) -> SelectorSets {
    let pick = |k: usize, a: &dyn Fn(usize) -> usize, b: &dyn Fn(usize) -> usize, ga: VSet, gb: VSet| {
        (0..k)
            .filter_map(|i| {
                if ga.contains(a(i)) {
                    Some(a(i))
                } else if gb.contains(b(i)) {
                    Some(b(i))
                } else {
                    None
                }
            })
            .collect::<VSet>()
    };
    SelectorSets {
        pp: pick(d.p, &|i| d.p_idx(i), &|i| d.p_star_idx(i), s.p_gt, s.p_star_gt),
        qq: pick(d.q, &|i| d.q_idx(i), &|i| d.q_star_idx(i), s.q_gt, s.q_star_gt),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "A-row1")]
    TableARow1,
    #[serde(rename = "A-row2")]
    TableARow2,
    #[serde(rename = "A-row3")]
    TableARow3,
    #[serde(rename = "A-row4")]
    TableARow4,
    #[serde(rename = "B-row1")]
    TableBRow1,
    #[serde(rename = "B-row2")]
    TableBRow2,
    #[serde(rename = "B-row3")]
    TableBRow3,
    #[serde(rename = "B-row4")]
    TableBRow4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::TableARow1 => "A-row1",
            Rule::TableARow2 => "A-row2",
            Rule::TableARow3 => "A-row3",
            Rule::TableARow4 => "A-row4",
            Rule::TableBRow1 => "B-row1",
            Rule::TableBRow2 => "B-row2",
            Rule::TableBRow3 => "B-row3",
            Rule::TableBRow4 => "B-row4",
        };
        f.write_str(s)
    }
}

/// Which branch of the loop body fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Some block pair has both minima zero; table A.
    ZeroPair,
    /// Minimum transversal of type (b), or of both types (c) and (d); table A.
    Saturated,
    /// Otherwise; table B.
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub edge: VSet,
    pub rule: Rule,
    pub branch: Branch,
}

/// Classifies blocker members of `Q_pq^{F*}` by family.
pub struct TypeIndex {
    types: HashMap<VSet, TransversalType>,
}

impl TypeIndex {
    pub fn new(d: &QpqDescriptor) -> Self {
        TypeIndex {
            types: transversal_families(d).into_iter().map(|(t, s)| (s, t)).collect(),
        }
    }

    pub fn type_of(&self, t: VSet) -> Option<TransversalType> {
        self.types.get(&t).copied()
    }
}

fn no_rule(iteration: usize, w: &[u64], why: &str) -> Error {
    Error::NoRuleApplies {
        iteration,
        reason: format!("{why} at w = {w:?}"),
    }
}

/// One step of the loop body for `τ^w > 0`.
pub fn select_edge(
    d: &QpqDescriptor,
    w: &[u64],
    tau: u64,
    minimizers: &[VSet],
    types: &TypeIndex,
    iteration: usize,
) -> Result<Selection> {
    let s = min_stats(d, w);
    let sel = build_selectors(d, &s);
    let b = d.blocks();
    let r = VSet::singleton(b.r);
    let rs = VSet::singleton(b.r_star);
    let pp_full = sel.pp.len() == d.p;
    let qq_full = sel.qq.len() == d.q;

    let table_a = |branch: Branch| -> Result<Selection> {
        let rows = [
            (pp_full && s.q_min > 0, Rule::TableARow1, sel.pp.union(b.q).union(r)),
            (pp_full && s.q_star_min > 0, Rule::TableARow2, sel.pp.union(b.q_star).union(r)),
            (qq_full && s.p_min > 0, Rule::TableARow3, b.p.union(sel.qq).union(rs)),
            (qq_full && s.p_star_min > 0, Rule::TableARow4, b.p_star.union(sel.qq).union(rs)),
        ];
        rows.into_iter()
            .find(|(ok, _, _)| *ok)
            .map(|(_, rule, edge)| Selection { edge, rule, branch })
            .ok_or_else(|| no_rule(iteration, w, "no row of table A applies"))
    };

    let p_zero = s.p_min == 0 && s.p_star_min == 0;
    let q_zero = s.q_min == 0 && s.q_star_min == 0;
    if p_zero || q_zero {
        // both minima of a pair vanish: the selector of that pair is full and
        // the opposite pair and r carry at least τ^w
        if p_zero && !(pp_full && (s.q_min + s.q_star_min).min(w[b.r]) >= tau) {
            return Err(no_rule(iteration, w, "zero P-minima without a full selector"));
        }
        if q_zero && !(qq_full && (s.p_min + s.p_star_min).min(w[b.r_star]) >= tau) {
            return Err(no_rule(iteration, w, "zero Q-minima without a full selector"));
        }
        return table_a(Branch::ZeroPair);
    }

    let kinds: Vec<TransversalType> = minimizers.iter().filter_map(|&t| types.type_of(t)).collect();
    let has = |k: TransversalType| kinds.contains(&k);
    if has(TransversalType::B) || (has(TransversalType::C) && has(TransversalType::D)) {
        if !(pp_full || qq_full) {
            return Err(no_rule(iteration, w, "saturated branch without a full selector"));
        }
        return table_a(Branch::Saturated);
    }

    let c_star = if has(TransversalType::C) {
        b.r_star
    } else if has(TransversalType::D) || w[b.r] > 0 {
        b.r
    } else {
        b.r_star
    };
    let cs = VSet::singleton(c_star);
    let rows = [
        (s.p_min > 0 && s.q_min > 0, Rule::TableBRow1, b.p.union(b.q)),
        (s.p_min > 0 && s.q_star_min > 0, Rule::TableBRow2, b.p.union(b.q_star)),
        (s.p_star_min > 0 && s.q_min > 0, Rule::TableBRow3, b.p_star.union(b.q)),
        (s.p_star_min > 0 && s.q_star_min > 0, Rule::TableBRow4, b.p_star.union(b.q_star)),
    ];
    rows.into_iter()
        .find(|(ok, _, _)| *ok)
        .map(|(_, rule, e)| Selection {
            edge: e.union(cs),
            rule,
            branch: Branch::Special,
        })
        .ok_or_else(|| no_rule(iteration, w, "no row of table B applies"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub iteration: usize,
    /// Weight vector before the step.
    pub w: Vec<u64>,
    /// `τ^w` before the step.
    pub tau: u64,
    pub edge: Vec<usize>,
    pub edge_labels: Vec<String>,
    pub edge_index: usize,
    pub rule: Rule,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    pub p: usize,
    pub q: usize,
    pub w: Vec<u64>,
    pub tau: u64,
    pub steps: Vec<TraceStep>,
    /// Chosen edges, as indices into the clutter's edge list, in order.
    pub edges: Vec<usize>,
}

impl DecompositionTrace {
    pub fn edge_sets(&self, g: &QpqClutter) -> Vec<VSet> {
        self.edges.iter().map(|&k| g.clutter.edges()[k]).collect()
    }
}

/// Runs the loop until `τ^{w_i} = 0`. Requires `F = (F_pq)*`.
pub fn decompose(g: &QpqClutter, w: &[u64]) -> Result<DecompositionTrace> {
    let mut solver_cache = None;
    decompose_with(g, w, &mut solver_cache)
}

/// As [`decompose`], reusing a blocker across calls.
pub fn decompose_with(
    g: &QpqClutter,
    w: &[u64],
    cache: &mut Option<(CoverSolver, TypeIndex)>,
) -> Result<DecompositionTrace> {
    if !g.fspec.is_full_star() {
        return Err(Error::UnsupportedFSpec(format!(
            "decomposition needs F = (F_pq)*, got {}",
            g.fspec
        )));
    }
    let c = &g.clutter;
    if w.len() != c.n() {
        return Err(Error::WeightLength {
            expected: c.n(),
            got: w.len(),
        });
    }
    let d = &g.descriptor;
    if cache.is_none() {
        *cache = Some((CoverSolver::new(c)?, TypeIndex::new(d)));
    }
    let (solver, types) = cache.as_ref().expect("filled above");
    let tau0 = solver.tau_w_value(w);
    let mut cur = w.to_vec();
    let mut tau = tau0;
    let mut steps = Vec::new();
    let mut edges = Vec::new();
    let mut i = 0;
    while tau != 0 {
        let minimizers = solver.minimizers(&cur);
        let sel = select_edge(d, &cur, tau, &minimizers, types, i)?;
        let k = c
            .edge_index(sel.edge)
            .ok_or_else(|| no_rule(i, &cur, "selected set is not an edge"))?;
        if sel.edge.iter().any(|v| cur[v] == 0) {
            return Err(no_rule(i, &cur, &format!("{} would go negative", sel.rule)));
        }
        let mut next = cur.clone();
        for v in sel.edge {
            next[v] -= 1;
        }
        let next_tau = solver.tau_w_value(&next);
        if next_tau + 1 != tau {
            return Err(no_rule(
                i,
                &cur,
                &format!("{} drops τ from {tau} to {next_tau}", sel.rule),
            ));
        }
        steps.push(TraceStep {
            iteration: i,
            w: cur,
            tau,
            edge: sel.edge.to_vec(),
            edge_labels: c.universe().labels_of(sel.edge),
            edge_index: k,
            rule: sel.rule,
            branch: sel.branch,
        });
        edges.push(k);
        cur = next;
        tau = next_tau;
        i += 1;
    }
    Ok(DecompositionTrace {
        p: d.p,
        q: d.q,
        w: w.to_vec(),
        tau: tau0,
        steps,
        edges,
    })
}

/// Independent certificate check: `|m| = τ^w` (recomputed from a fresh
/// blocker), `Σ_{e∈m} χ_e ≤ w`, and every member of `m` is an edge.
pub fn verify_decomposition(g: &QpqClutter, w: &[u64], m: &[VSet]) -> bool {
    let c = &g.clutter;
    if w.len() != c.n() || !m.iter().all(|&e| c.contains_edge(e)) {
        return false;
    }
    let Ok(b) = c.blocker() else {
        return false;
    };
    let tau = b.edges().iter().map(|t| t.weight(w)).min().unwrap_or(0);
    if m.len() as u64 != tau {
        return false;
    }
    let mut load = vec![0u64; c.n()];
    for e in m {
        for v in *e {
            load[v] += 1;
        }
    }
    load.iter().zip(w).all(|(l, cap)| l <= cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpq::{generate_qpq_f, FSpec};

    fn fstar(p: usize, q: usize) -> QpqClutter {
        generate_qpq_f(p, q, &FSpec::case_i_all()).unwrap()
    }

    #[test]
    fn stats_constant() {
        let d = QpqDescriptor::new(2, 1).unwrap();
        let s = min_stats(&d, &[1; 8]);
        assert_eq!((s.p_min, s.p_star_min, s.q_min, s.q_star_min), (1, 1, 1, 1));
        assert!(s.p_gt.is_empty() && s.q_star_gt.is_empty());
        let mut w = vec![1; 8];
        w[0] = 0;
        let s = min_stats(&d, &w);
        assert_eq!(s.p_min, 0);
        assert_eq!(s.p_gt, VSet::singleton(1));
    }

    #[test]
    fn selector_tie_break() {
        let d = QpqDescriptor::new(2, 1).unwrap();
        let mut s = min_stats(&d, &[1; 8]);
        s.p_gt = VSet::singleton(d.p_idx(0));
        s.p_star_gt = VSet::singleton(d.p_star_idx(0));
        assert_eq!(build_selectors(&d, &s).pp, VSet::singleton(d.p_idx(0)));
        s.p_star_gt = VSet::singleton(d.p_star_idx(1));
        assert_eq!(
            build_selectors(&d, &s).pp,
            VSet::from_indices([d.p_idx(0), d.p_star_idx(1)])
        );
    }

    #[test]
    fn zero_and_ones() {
        let g = fstar(1, 1);
        let t = decompose(&g, &[0; 6]).unwrap();
        assert!(t.edges.is_empty());
        let t = decompose(&g, &[1; 6]).unwrap();
        assert_eq!(t.edges.len(), 2);
        assert!(verify_decomposition(&g, &[1; 6], &t.edge_sets(&g)));
    }

    #[test]
    fn worked_example_picks_pq_star_r() {
        // minimum transversal q1 q2* r*, with p_min, q*_min > 0 and q_min = 0
        let g = fstar(1, 2);
        let d = g.descriptor;
        let mut w = vec![3u64; d.n()];
        w[d.q_idx(0)] = 0;
        w[d.q_star_idx(1)] = 1;
        w[d.r_star_idx()] = 1;
        let solver = CoverSolver::new(&g.clutter).unwrap();
        let tau = solver.tau_w_value(&w);
        let mins = solver.minimizers(&w);
        let types = TypeIndex::new(&d);
        let sel = select_edge(&d, &w, tau, &mins, &types, 0).unwrap();
        let b = d.blocks();
        assert_eq!(sel.edge, b.p.union(b.q_star).union(VSet::singleton(b.r)));
        assert_eq!(sel.rule, Rule::TableBRow2);
    }

    #[test]
    fn rejects_other_f() {
        let g = generate_qpq_f(1, 1, &FSpec::CaseI(vec![0])).unwrap();
        assert!(matches!(decompose(&g, &[1; 6]), Err(Error::UnsupportedFSpec(_))));
    }

    #[test]
    fn verify_catches_tampering() {
        let g = fstar(1, 1);
        let w = [1; 6];
        let mut m = decompose(&g, &w).unwrap().edge_sets(&g);
        m.pop();
        assert!(!verify_decomposition(&g, &w, &m));
        let doubled = vec![g.clutter.edges()[0]; 2];
        assert!(!verify_decomposition(&g, &w, &doubled));
    }
}
