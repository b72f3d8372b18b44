//! Vertices of the set covering polyhedron `Q(A) = {x ≥ 0 : xA ≥ 1}` and of
//! the packing polytope `{y ≥ 0 : Ay ≤ w}`, by exact basis enumeration.
//!
//! A vertex is a feasible point where some `dim` linearly independent
//! constraints are tight. Every `dim`-subset of constraints is solved exactly
//! (fraction-free elimination, `i128` when the Hadamard bound allows it and
//! `BigInt` otherwise), infeasible or singular systems are dropped, and the
//! survivors deduplicated.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::covering::WeightVector;
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_LIMIT: usize = 12;
/// Largest number of candidate bases examined before giving up.
pub const BASIS_BUDGET: u128 = 60_000_000;

/// Exact rational point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn dot(&self, w: &[u64]) -> BigRational {
        self.0
            .iter()
            .zip(w)
            .map(|(x, &wi)| x * BigRational::from_integer(BigInt::from(wi)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

trait ExactInt: Clone + Send + Sync + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero_(&self) -> bool;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn div_(&self, o: &Self) -> Option<Self>;
    fn neg_(&self) -> Option<Self>;
    fn is_negative_(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero_(&self) -> bool {
        *self == 0
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn neg_(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative_(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg_(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative_(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Solve<T> {
    Singular,
    /// numerators and a positive common denominator
    Point(Vec<T>, T),
}

/// Solves `M x = b` by Bareiss elimination; `None` on arithmetic overflow.
fn bareiss_solve<T: ExactInt>(rows: &[&[i64]], rhs: &[i64]) -> Option<Solve<T>> {
    let n = rows.len();
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| r.iter().map(|&x| T::from_i64(x)).chain(std::iter::once(T::from_i64(b))).collect())
        .collect();
    let mut prev = T::from_i64(1);
    for k in 0..n {
        if a[k][k].is_zero_() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_()) {
                Some(i) => a.swap(i, k),
                None => return Some(Solve::Singular),
            }
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = a[k][k].mul_(&a[i][j])?.sub_(&a[i][k].mul_(&a[k][j])?)?.div_(&prev)?;
                a[i][j] = v;
            }
            a[i][k] = T::from_i64(0);
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Some(Solve::Point(Vec::new(), T::from_i64(1)));
    }
    // after the row swaps a[n-1][n-1] is ± det; x_i * det is integral
    let det = a[n - 1][n - 1].clone();
    let mut num: Vec<T> = vec![T::from_i64(0); n];
    for i in (0..n).rev() {
        let mut acc = det.mul_(&a[i][n])?;
        for j in i + 1..n {
            acc = acc.sub_(&a[i][j].mul_(&num[j])?)?;
        }
        num[i] = acc.div_(&a[i][i])?;
    }
    if det.is_negative_() {
        let num = num.iter().map(|x| x.neg_()).collect::<Option<Vec<_>>>()?;
        Some(Solve::Point(num, det.neg_()?))
    } else {
        Some(Solve::Point(num, det))
    }
}

/// Whether the squared Hadamard bound of the augmented rows stays well inside `i128`.
fn fits_i128(rows: &[Vec<i64>], rhs: &[i64]) -> bool {
    let mut bound_sq: u128 = 1;
    for (r, &b) in rows.iter().zip(rhs) {
        let norm2 = r
            .iter()
            .chain(std::iter::once(&b))
            .fold(0u128, |acc, &x| acc.saturating_add((x.unsigned_abs() as u128).pow(2)));
        bound_sq = bound_sq.saturating_mul(norm2.max(1));
    }
    // Bareiss multiplies two minors before dividing
    bound_sq < 1u128 << 120
}

struct System {
    dim: usize,
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl System {
    fn enumerate<F>(&self, feasible: F) -> Result<Vec<RationalPoint>>
    where
        F: Fn(&[BigInt], &BigInt) -> bool + Sync,
    {
        let count = binomial(self.rows.len(), self.dim);
        if count > BASIS_BUDGET {
            return Err(Error::BoundTooLarge {
                count,
                budget: BASIS_BUDGET,
            });
        }
        let small = fits_i128(&self.rows, &self.rhs);
        let found: BTreeSet<RationalPoint> = (0..self.rows.len())
            .combinations(self.dim)
            .par_bridge()
            .filter_map(|combo| {
                let rows: Vec<&[i64]> = combo.iter().map(|&i| self.rows[i].as_slice()).collect();
                let rhs: Vec<i64> = combo.iter().map(|&i| self.rhs[i]).collect();
                let solved = if small {
                    bareiss_solve::<i128>(&rows, &rhs).map(|s| match s {
                        Solve::Singular => Solve::Singular,
                        Solve::Point(n, d) => Solve::Point(
                            n.iter().map(|x| x.to_big()).collect(),
                            d.to_big(),
                        ),
                    })
                } else {
                    None
                };
                let solved = solved
                    .or_else(|| bareiss_solve::<BigInt>(&rows, &rhs))
                    .expect("BigInt elimination cannot overflow");
                match solved {
                    Solve::Singular => None,
                    Solve::Point(num, den) => feasible(&num, &den).then(|| {
                        RationalPoint(
                            num.into_iter()
                                .map(|x| BigRational::new(x, den.clone()))
                                .collect(),
                        )
                    }),
                }
            })
            .collect();
        Ok(found.into_iter().collect())
    }
}

/// All vertices of `Q(A)`, sorted.
pub fn polyhedron_vertices(c: &Clutter, limit: usize) -> Result<Vec<RationalPoint>> {
    let n = c.n();
    if n > limit {
        return Err(Error::UniverseTooLarge { n, limit });
    }
    if c.has_empty_edge() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        let mut r = vec![0i64; n];
        r[i] = 1;
        rows.push(r);
        rhs.push(0);
    }
    for e in c.edges() {
        let mut r = vec![0i64; n];
        for i in *e {
            r[i] = 1;
        }
        rows.push(r);
        rhs.push(1);
    }
    let edges = c.edges().to_vec();
    let sys = System { dim: n, rows, rhs };
    sys.enumerate(|num, den| {
        num.iter().all(|x| !x.is_negative())
            && edges.iter().all(|e| {
                let s: BigInt = e.iter().map(|i| &num[i]).sum();
                s >= *den
            })
    })
}

/// Integrality verdict for `Q(A)` with a fractional vertex when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub ideal: bool,
    pub vertex_count: usize,
    pub fractional_vertex: Option<RationalPoint>,
}

pub fn is_ideal(c: &Clutter, limit: usize) -> Result<IdealReport> {
    let vs = polyhedron_vertices(c, limit)?;
    let frac = vs.iter().find(|v| !v.is_integral()).cloned();
    Ok(IdealReport {
        ideal: frac.is_none(),
        vertex_count: vs.len(),
        fractional_vertex: frac,
    })
}

/// Both sides of the covering LP duality for weight `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpValues {
    /// `min { ⟨w,x⟩ : x ∈ Q(A) }`
    pub min_side: BigRational,
    pub min_point: RationalPoint,
    /// `max { ⟨1,y⟩ : y ≥ 0, Ay ≤ w }`
    pub max_side: BigRational,
    pub max_point: RationalPoint,
}

/// Vertices of `{y ≥ 0 : Ay ≤ w}`.
pub fn packing_polytope_vertices(c: &Clutter, w: &WeightVector) -> Result<Vec<RationalPoint>> {
    if c.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    let n = c.n();
    let m = c.edge_count();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..m {
        let mut r = vec![0i64; m];
        r[k] = 1;
        rows.push(r);
        rhs.push(0);
    }
    for i in 0..n {
        let r: Vec<i64> = c.edges().iter().map(|e| e.contains(i) as i64).collect();
        rows.push(r);
        rhs.push(w[i] as i64);
    }
    let edges = c.edges().to_vec();
    let wv = w.as_slice().to_vec();
    let sys = System { dim: m, rows, rhs };
    sys.enumerate(|num, den| {
        num.iter().all(|x| !x.is_negative())
            && (0..n).all(|i| {
                let load: BigInt = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.contains(i))
                    .map(|(k, _)| &num[k])
                    .sum();
                load <= den * BigInt::from(wv[i])
            })
    })
}

/// Optimal values of both LPs, each from its own vertex enumeration.
pub fn lp_values(c: &Clutter, w: &WeightVector, limit: usize) -> Result<LpValues> {
    if w.len() != c.n() {
        return Err(Error::WeightLength {
            expected: c.n(),
            got: w.len(),
        });
    }
    if c.has_empty_edge() {
        return Err(Error::EmptyEdge);
    }
    let primal = polyhedron_vertices(c, limit)?;
    let (min_point, min_side) = primal
        .into_iter()
        .map(|p| {
            let v = p.dot(w.as_slice());
            (p, v)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("Q(A) is nonempty and pointed");
    let dual = packing_polytope_vertices(c, w)?;
    let (max_point, max_side) = dual
        .into_iter()
        .map(|p| {
            let v = p.sum();
            (p, v)
        })
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("packing polytope contains 0");
    Ok(LpValues {
        min_side,
        min_point,
        max_side,
        max_point,
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one_half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Clutter {
        Clutter::from_index_edges(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    #[test]
    fn single_vertex_single_edge() {
        let c = Clutter::from_index_edges(1, &[&[0]]).unwrap();
        let vs = polyhedron_vertices(&c, 12).unwrap();
        assert_eq!(vs, vec![RationalPoint(vec![rational(1, 1)])]);
    }

    #[test]
    fn triangle_has_half_vertex() {
        let vs = polyhedron_vertices(&triangle(), 12).unwrap();
        let half = RationalPoint(vec![one_half(); 3]);
        assert!(vs.contains(&half));
        let r = is_ideal(&triangle(), 12).unwrap();
        assert!(!r.ideal);
        assert_eq!(r.fractional_vertex, Some(half));
    }

    #[test]
    fn triangle_lp_value() {
        let lp = lp_values(&triangle(), &WeightVector::constant(3, 1), 12).unwrap();
        assert_eq!(lp.min_side, rational(3, 2));
        assert_eq!(lp.max_side, rational(3, 2));
        let lp0 = lp_values(&triangle(), &WeightVector::constant(3, 0), 12).unwrap();
        assert_eq!(lp0.min_side, rational(0, 1));
        assert_eq!(lp0.max_side, rational(0, 1));
    }

    #[test]
    fn single_edge_is_ideal() {
        let c = Clutter::from_index_edges(2, &[&[0, 1]]).unwrap();
        assert!(is_ideal(&c, 12).unwrap().ideal);
    }

    #[test]
    fn limit_enforced() {
        let c = Clutter::from_index_edges(3, &[&[0, 1, 2]]).unwrap();
        assert!(matches!(
            polyhedron_vertices(&c, 2),
            Err(Error::UniverseTooLarge { n: 3, limit: 2 })
        ));
    }

    #[test]
    fn i128_and_bigint_paths_agree() {
        let rows: Vec<&[i64]> = vec![&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]];
        let rhs = [1, 2, 3];
        let (Some(Solve::Point(a, da)), Some(Solve::Point(b, db))) = (
            bareiss_solve::<i128>(&rows, &rhs),
            bareiss_solve::<BigInt>(&rows, &rhs),
        ) else {
            panic!("nonsingular system");
        };
        let a: Vec<BigRational> = a.iter().map(|x| BigRational::new(x.to_big(), da.to_big())).collect();
        let b: Vec<BigRational> = b.iter().map(|x| BigRational::new(x.clone(), db.clone())).collect();
        assert_eq!(a, b);
        // 2x+y=1, x+3y+z=2, y+4z=3  =>  x = 1/18 * ... check by substitution
        let x = &a;
        let two = BigRational::from_integer(2.into());
        assert_eq!(&two * &x[0] + &x[1], BigRational::one());
    }
}
