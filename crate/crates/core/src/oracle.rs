//! Brute-force reference implementations.
//!
//! Each routine here is written from the definition alone and shares no code
//! with the production algorithms beyond the `VSet` bit container, so that
//! agreement between the two is meaningful.

use num_integer::Integer;

/// Subsets of `0..n` as raw masks.
fn masks(n: usize) -> impl Iterator<Item = u64> {
    assert!(n < 32, "brute-force oracle limited to n < 32");
    0u64..(1u64 << n)
}

fn hits_all(t: u64, edges: &[u64]) -> bool {
    edges.iter().all(|&e| t & e != 0)
}

fn pairwise_minimal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&o| o != s && o & s == o))
        .collect();
    keep
}

/// All minimal transversals, by scanning every subset of `0..n`.
pub fn blocker(n: usize, edges: &[u64]) -> Vec<u64> {
    let ts: Vec<u64> = masks(n).filter(|&t| hits_all(t, edges)).collect();
    let mut out: Vec<u64> = ts
        .iter()
        .copied()
        .filter(|&t| (0..n).all(|v| t >> v & 1 == 0 || !hits_all(t & !(1 << v), edges)))
        .collect();
    out.sort_unstable();
    out
}

/// Minimum `Σ w(v)` over all transversals; `None` if none exists.
pub fn tau_w(n: usize, edges: &[u64], w: &[u64]) -> Option<u64> {
    masks(n)
        .filter(|&t| hits_all(t, edges))
        .map(|t| (0..n).filter(|&v| t >> v & 1 == 1).map(|v| w[v]).sum())
        .min()
}

/// Maximum number of pairwise-disjoint edges, by subset scan over edges.
pub fn nu(edges: &[u64]) -> usize {
    let q = edges.len();
    assert!(q < 26, "matching oracle limited to 25 edges");
    (0u32..(1 << q))
        .filter(|&sel| {
            let mut used = 0u64;
            for (k, &e) in edges.iter().enumerate() {
                if sel >> k & 1 == 1 {
                    if used & e != 0 {
                        return false;
                    }
                    used |= e;
                }
            }
            true
        })
        .map(|sel| sel.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Maximum `Σ y_k` with `Σ y_k χ_{S_k} ≤ w`, by plain recursion over edges.
pub fn nu_w(edges: &[u64], w: &[u64]) -> u64 {
    fn go(k: usize, edges: &[u64], rem: &mut Vec<u64>) -> u64 {
        if k == edges.len() {
            return 0;
        }
        let e = edges[k];
        let verts: Vec<usize> = (0..64).filter(|&v| e >> v & 1 == 1).collect();
        let cap = verts.iter().map(|&v| rem[v]).min().unwrap_or(0);
        let mut best = 0;
        for y in 0..=cap {
            for &v in &verts {
                rem[v] -= y;
            }
            best = best.max(y + go(k + 1, edges, rem));
            for &v in &verts {
                rem[v] += y;
            }
        }
        best
    }
    if edges.contains(&0) {
        return u64::MAX;
    }
    go(0, edges, &mut w.to_vec())
}

/// `H∖del/con` by definition: drop edges meeting `del`, strip `con`, keep minimal sets.
pub fn minor(edges: &[u64], del: u64, con: u64) -> Vec<u64> {
    pairwise_minimal(
        edges
            .iter()
            .filter(|&&e| e & del == 0)
            .map(|&e| e & !con)
            .collect(),
    )
}

/// Cofactor-expansion determinant.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let sub: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&sub)
            })
            .sum(),
    }
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k × k` minors; 0 when every such minor vanishes.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k > rows.min(cols) {
        return 0;
    }
    let mut g: i128 = 0;
    for rs in combos(rows, k) {
        for cs in combos(cols, k) {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// Largest `k` with a nonzero `k × k` minor.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (1..=rows.min(cols)).rev().find(|&k| minor_gcd(m, k) != 0).unwrap_or(0)
}

/// Maximum size of a selection taking at most one of each pair `(a_i, b_i)`
/// where only flagged members may be taken, over all `2^(2k)` choices.
pub fn max_pair_selection(a: &[bool], b: &[bool]) -> usize {
    let k = a.len();
    (0u64..(1 << (2 * k)))
        .filter(|&m| {
            (0..k).all(|i| {
                let ta = m >> i & 1 == 1;
                let tb = m >> (k + i) & 1 == 1;
                !(ta && tb) && (!ta || a[i]) && (!tb || b[i])
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let e = [0b011, 0b110, 0b101];
        assert_eq!(blocker(3, &e), vec![0b011, 0b101, 0b110]);
        assert_eq!(tau_w(3, &e, &[1, 1, 1]), Some(2));
        assert_eq!(nu(&e), 1);
        assert_eq!(nu_w(&e, &[2, 2, 2]), 3);
    }

    #[test]
    fn minors_of_path() {
        let e = [0b011, 0b110];
        assert_eq!(minor(&e, 0b010, 0), Vec::<u64>::new());
        assert_eq!(minor(&e, 0, 0b010), vec![0b001, 0b100]);
    }

    #[test]
    fn minor_gcd_small() {
        let m = vec![vec![2, 0], vec![0, 4]];
        assert_eq!(minor_gcd(&m, 1), 2);
        assert_eq!(minor_gcd(&m, 2), 8);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn pair_selection() {
        assert_eq!(max_pair_selection(&[true, false], &[true, true]), 2);
        assert_eq!(max_pair_selection(&[true], &[true]), 1);
        assert_eq!(max_pair_selection(&[false], &[false]), 0);
    }
}
