//! Covering and packing numbers, cardinality and weighted.
//!
//! `τ^w` is the integer program `min { Σ_{v∈t} w(v) : t transversal }`, attained
//! on a member of the blocker. `ν^w` is `max { Σ y : y ≥ 0 integral, Ay ≤ w }`.
//! The LP relaxations live in [`crate::polyhedron`].

use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::vset::VSet;

/// Nonnegative integer weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(n: usize, w: Vec<u64>) -> Result<Self> {
        if w.len() != n {
            return Err(Error::WeightLength {
                expected: n,
                got: w.len(),
            });
        }
        Ok(WeightVector(w))
    }

    pub fn constant(n: usize, value: u64) -> Self {
        WeightVector(vec![value; n])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `w − χ_e`, or `None` if some coordinate would go negative.
    pub fn minus_edge(&self, e: VSet) -> Option<WeightVector> {
        let mut w = self.0.clone();
        for v in e {
            w[v] = w[v].checked_sub(1)?;
        }
        Some(WeightVector(w))
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptValue {
    Integer(u64),
    Rational(BigRational),
}

impl OptValue {
    pub fn as_integer(&self) -> Option<u64> {
        match self {
            OptValue::Integer(v) => Some(*v),
            OptValue::Rational(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A vertex set meeting every edge.
    Transversal(Vec<usize>),
    /// Indices of pairwise-disjoint edges.
    Matching(Vec<usize>),
    /// Multiplicity per edge with `Ay ≤ w`.
    Packing(Vec<u64>),
    Point(Vec<BigRational>),
}

/// An optimum value together with a re-checkable certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptReport {
    pub value: OptValue,
    pub witness: Witness,
    pub method: String,
}

impl OptReport {
    pub fn integer(&self) -> u64 {
        self.value.as_integer().expect("integer-valued report")
    }

    /// Checks that the witness is feasible and attains the value.
    pub fn verify(&self, c: &Clutter, w: Option<&WeightVector>) -> bool {
        let ones;
        let w = match w {
            Some(w) => w.as_slice(),
            None => {
                ones = vec![1u64; c.n()];
                &ones
            }
        };
        match (&self.witness, &self.value) {
            (Witness::Transversal(t), OptValue::Integer(v)) => {
                let t = VSet::from_indices(t.iter().copied());
                c.is_transversal(t) && t.weight(w) == *v
            }
            (Witness::Matching(idx), OptValue::Integer(v)) => {
                let mut used = VSet::EMPTY;
                for &k in idx {
                    let Some(&e) = c.edges().get(k) else {
                        return false;
                    };
                    if e.intersects(used) {
                        return false;
                    }
                    used = used.union(e);
                }
                idx.len() as u64 == *v
            }
            (Witness::Packing(y), OptValue::Integer(v)) => {
                if y.len() != c.edge_count() {
                    return false;
                }
                let mut load = vec![0u64; c.n()];
                for (k, &yk) in y.iter().enumerate() {
                    for i in c.edges()[k] {
                        load[i] += yk;
                    }
                }
                load.iter().zip(w).all(|(l, cap)| l <= cap) && y.iter().sum::<u64>() == *v
            }
            _ => false,
        }
    }
}

/// Minimum-cardinality transversal by branch and bound. `None` if an edge is empty.
pub fn min_transversal(edges: &[VSet]) -> Option<VSet> {
    if edges.iter().any(|e| e.is_empty()) {
        return None;
    }
    let mut best = edges.iter().fold(VSet::EMPTY, |a, &e| a.union(e));
    if edges.is_empty() {
        return Some(VSet::EMPTY);
    }
    // one vertex per edge is always a transversal
    let greedy: VSet = edges.iter().map(|e| e.first().unwrap()).collect();
    if greedy.len() < best.len() {
        best = greedy;
    }
    fn lower_bound(edges: &[VSet], chosen: VSet) -> usize {
        let mut used = VSet::EMPTY;
        let mut count = 0;
        for &e in edges {
            if !e.intersects(chosen) && !e.intersects(used) {
                used = used.union(e);
                count += 1;
            }
        }
        count
    }
    fn go(edges: &[VSet], chosen: VSet, best: &mut VSet) {
        let unhit = edges
            .iter()
            .filter(|e| !e.intersects(chosen))
            .min_by_key(|e| e.len());
        let Some(&e) = unhit else {
            if chosen.len() < best.len() {
                *best = chosen;
            }
            return;
        };
        if chosen.len() + lower_bound(edges, chosen).max(1) >= best.len() {
            return;
        }
        for v in e {
            let mut next = chosen;
            next.insert(v);
            go(edges, next, best);
        }
    }
    go(edges, VSet::EMPTY, &mut best);
    Some(best)
}

/// Maximum family of pairwise-disjoint edges, as edge indices.
pub fn max_matching(edges: &[VSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&k| edges[k].len());
    let mut best = Vec::new();
    let mut cur = Vec::new();
    fn go(
        edges: &[VSet],
        order: &[usize],
        pos: usize,
        used: VSet,
        cur: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        let remaining = order[pos..]
            .iter()
            .filter(|&&k| !edges[k].intersects(used))
            .count();
        if cur.len() + remaining <= best.len() {
            return;
        }
        for (off, &k) in order[pos..].iter().enumerate() {
            let e = edges[k];
            if e.intersects(used) {
                continue;
            }
            cur.push(k);
            go(edges, order, pos + off + 1, used.union(e), cur, best);
            cur.pop();
            if cur.len() + order[pos + off + 1..]
                .iter()
                .filter(|&&j| !edges[j].intersects(used))
                .count()
                <= best.len()
            {
                return;
            }
        }
    }
    go(edges, &order, 0, VSet::EMPTY, &mut cur, &mut best);
    best.sort_unstable();
    best
}

/// `τ(c)`: minimum transversal size.
pub fn tau(c: &Clutter) -> Result<OptReport> {
    let t = min_transversal(c.edges()).ok_or(Error::EmptyEdge)?;
    Ok(OptReport {
        value: OptValue::Integer(t.len() as u64),
        witness: Witness::Transversal(t.to_vec()),
        method: "branch-and-bound hitting set".into(),
    })
}

/// `ν(c)`: maximum number of pairwise-disjoint edges.
pub fn nu(c: &Clutter) -> OptReport {
    let m = max_matching(c.edges());
    OptReport {
        value: OptValue::Integer(m.len() as u64),
        witness: Witness::Matching(m),
        method: "exhaustive matching search".into(),
    }
}

/// Weighted covering number evaluated against a precomputed blocker.
///
/// Build once per clutter, then query many weight vectors.
#[derive(Clone, Debug)]
pub struct CoverSolver {
    n: usize,
    transversals: Vec<VSet>,
}

impl CoverSolver {
    pub fn new(c: &Clutter) -> Result<Self> {
        let b = c.blocker()?;
        Ok(CoverSolver {
            n: c.n(),
            transversals: b.edges().to_vec(),
        })
    }

    pub fn transversals(&self) -> &[VSet] {
        &self.transversals
    }

    /// `τ^w` and the first minimum-weight blocker member.
    pub fn tau_w_raw(&self, w: &[u64]) -> (u64, VSet) {
        debug_assert_eq!(w.len(), self.n);
        let mut best = (u64::MAX, VSet::EMPTY);
        for &t in &self.transversals {
            let v = t.weight(w);
            if v < best.0 {
                best = (v, t);
            }
        }
        best
    }

    pub fn tau_w_value(&self, w: &[u64]) -> u64 {
        self.transversals
            .iter()
            .map(|t| t.weight(w))
            .min()
            .unwrap_or(u64::MAX)
    }

    /// All blocker members of minimum weight.
    pub fn minimizers(&self, w: &[u64]) -> Vec<VSet> {
        let best = self.tau_w_value(w);
        self.transversals
            .iter()
            .copied()
            .filter(|t| t.weight(w) == best)
            .collect()
    }
}

/// `τ^w(c)` as an integer program over the blocker.
pub fn tau_w(c: &Clutter, w: &WeightVector) -> Result<OptReport> {
    check_len(c, w)?;
    let solver = CoverSolver::new(c)?;
    let (v, t) = solver.tau_w_raw(w.as_slice());
    Ok(OptReport {
        value: OptValue::Integer(v),
        witness: Witness::Transversal(t.to_vec()),
        method: "minimum over blocker".into(),
    })
}

fn check_len(c: &Clutter, w: &WeightVector) -> Result<()> {
    if w.len() != c.n() {
        return Err(Error::WeightLength {
            expected: c.n(),
            got: w.len(),
        });
    }
    Ok(())
}

/// Maximum integral packing `y ≥ 0`, `Ay ≤ w`, over raw edge masks.
///
/// Exhaustive over edges with memoisation on the residual capacity. Each `y_k`
/// is bounded by `min_{v∈S_k} w(v)`.
pub fn max_weighted_packing(edges: &[VSet], w: &[u64]) -> Option<(u64, Vec<u64>)> {
    if edges.iter().any(|e| e.is_empty()) {
        return None;
    }
    let m = edges.len();
    let mut memo: HashMap<(usize, Vec<u64>), u64> = HashMap::new();

    fn cap(e: VSet, r: &[u64]) -> u64 {
        e.iter().map(|v| r[v]).min().unwrap_or(0)
    }

    fn best(
        edges: &[VSet],
        k: usize,
        r: &mut Vec<u64>,
        memo: &mut HashMap<(usize, Vec<u64>), u64>,
    ) -> u64 {
        if k == edges.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(k, r.clone())) {
            return v;
        }
        let e = edges[k];
        let c = cap(e, r);
        let mut out = 0;
        for y in 0..=c {
            for v in e {
                r[v] -= y;
            }
            out = out.max(y + best(edges, k + 1, r, memo));
            for v in e {
                r[v] += y;
            }
        }
        memo.insert((k, r.clone()), out);
        out
    }

    let mut r = w.to_vec();
    let value = best(edges, 0, &mut r, &mut memo);
    let mut y = vec![0u64; m];
    let mut remaining = value;
    for k in 0..m {
        let e = edges[k];
        let c = cap(e, &r);
        for yk in (0..=c).rev() {
            for v in e {
                r[v] -= yk;
            }
            let rest = best(edges, k + 1, &mut r, &mut memo);
            if yk + rest == remaining {
                y[k] = yk;
                remaining = rest;
                break;
            }
            for v in e {
                r[v] += yk;
            }
        }
    }
    Some((value, y))
}

/// `ν^w(c)`.
pub fn nu_w(c: &Clutter, w: &WeightVector) -> Result<OptReport> {
    check_len(c, w)?;
    let (v, y) = max_weighted_packing(c.edges(), w.as_slice()).ok_or(Error::EmptyEdge)?;
    Ok(OptReport {
        value: OptValue::Integer(v),
        witness: Witness::Packing(y),
        method: "memoised exhaustive packing".into(),
    })
}
