//! Exact integer linear algebra: rank, Smith normal form and `Δ_r`.
//!
//! `Δ_k(M)` is the gcd of all nonzero `k × k` minors of `M`. With Smith
//! invariant factors `d_1 | d_2 | … | d_r` it equals `d_1 ⋯ d_k`, so
//! `Δ_r = 1` for `r = rank(M)` exactly when every invariant factor is 1,
//! i.e. when the quotient of `ℤ^rows` by the column lattice is free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Invariant factors `d_1 | … | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `Δ_k = d_1 ⋯ d_k`; `None` when `k` exceeds the rank (all `k × k` minors vanish).
    pub fn delta(&self, k: usize) -> Option<BigInt> {
        (k <= self.factors.len()).then(|| self.factors[..k].iter().product())
    }

    pub fn is_unimodular_lattice(&self) -> bool {
        self.factors.iter().all(One::is_one)
    }
}

/// Rank over `ℚ` by fraction-free elimination.
pub fn rank_rational(m: &IntegerMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, rank);
        let pivot = a.get(rank, c).clone();
        for i in rank + 1..rows {
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let mut g = BigInt::zero();
            for j in c..cols {
                let v = &pivot * a.get(i, j) - &f * a.get(rank, j);
                g = g.gcd(&v);
                a.set(i, j, v);
            }
            if !g.is_zero() && !g.is_one() {
                for j in c..cols {
                    let v = a.get(i, j) / &g;
                    a.set(i, j, v);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Position of the smallest nonzero `|entry|` in the lower-right block from `t`, row-major ties.
fn smallest_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form by integer elimination, pivoting on the smallest nonzero `|entry|`.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let mut clean = true;
        let pivot = a.get(t, t).clone();
        for i in t + 1..rows {
            let f = a.get(i, t).div_floor(&pivot);
            if !f.is_zero() {
                for j in t..cols {
                    let v = a.get(i, j) - &f * a.get(t, j);
                    a.set(i, j, v);
                }
            }
            clean &= a.get(i, t).is_zero();
        }
        for j in t + 1..cols {
            let f = a.get(t, j).div_floor(&pivot);
            if !f.is_zero() {
                for i in t..rows {
                    let v = a.get(i, j) - &f * a.get(i, t);
                    a.set(i, j, v);
                }
            }
            clean &= a.get(t, j).is_zero();
        }
        if !clean {
            // a remainder is now smaller than the pivot; re-pivot
            continue;
        }
        let bad = (t + 1..rows).find(|&i| {
            (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot))
        });
        if let Some(i) = bad {
            for j in t..cols {
                let v = a.get(t, j) + a.get(i, j);
                a.set(t, j, v);
            }
            continue;
        }
        factors.push(pivot.abs());
        t += 1;
    }
    SmithForm { factors }
}

/// `Δ_r` for `r = rank(m)`.
pub fn delta_r(m: &IntegerMatrix) -> Result<BigInt> {
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok(smith_normal_form(m).factors.iter().product())
}

/// Whether `ℤ^d / ⟨columns⟩` is free, i.e. every invariant factor is 1.
pub fn group_is_free(columns: &IntegerMatrix) -> bool {
    smith_normal_form(columns).is_unimodular_lattice()
}

/// Column vectors `(v_i, 1)` for the given vectors, as a matrix.
pub fn lift_with_ones(vectors: &[Vec<i64>]) -> IntegerMatrix {
    let cols: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().copied().chain(std::iter::once(1)).collect())
        .collect();
    IntegerMatrix::from_columns(&cols)
}
