//! Vertex enumeration for tiny polyhedra `{x : A x <= b}`.
//!
//! Works over any [`Scalar`]: `f64` with a feasibility tolerance, or
//! `BigRational` with exact comparisons.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone + Debug + PartialOrd + num_traits::Num + std::ops::Neg<Output = Self>
{
    /// Slack allowed in feasibility checks; zero for exact arithmetic.
    fn tolerance() -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn magnitude(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-12
    }
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `coeffs · x <= bound`
#[derive(Debug, Clone)]
pub struct Constraint<T> {
    pub label: &'static str,
    pub coeffs: Vec<T>,
    pub bound: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(label: &'static str, coeffs: Vec<T>, bound: T) -> Self {
        Constraint {
            label,
            coeffs,
            bound,
        }
    }

    /// `bound - coeffs · x`; nonnegative when satisfied.
    pub fn slack(&self, x: &[T]) -> T {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, xi)| acc + a.clone() * xi.clone());
        self.bound.clone() - lhs
    }

    pub fn satisfied(&self, x: &[T]) -> bool {
        self.slack(x) >= -T::tolerance()
    }

    pub fn active(&self, x: &[T]) -> bool {
        self.slack(x).magnitude() <= T::tolerance()
    }
}

/// Solves the square system `rows · x = rhs`; `None` when singular.
fn solve<T: Scalar>(mut rows: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let dim = rhs.len();
    for col in 0..dim {
        let pivot = (col..dim)
            .filter(|&r| rows[r][col].magnitude() > T::tolerance())
            .max_by(|&a, &b| {
                rows[a][col]
                    .magnitude()
                    .partial_cmp(&rows[b][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
        rows.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..dim {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / rows[col][col].clone();
            #[allow(clippy::needless_range_loop)]
            for k in col..dim {
                let delta = factor.clone() * rows[col][k].clone();
                rows[r][k] = rows[r][k].clone() - delta;
            }
            rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
        }
    }
    Some(
        (0..dim)
            .map(|i| rhs[i].clone() / rows[i][i].clone())
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn same_point<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x.clone() - y.clone()).magnitude() <= T::tolerance())
}

/// All vertices of `{x in R^dim : constraints}`, deduplicated, in the order
/// they are first found.
pub fn vertices<T: Scalar>(constraints: &[Constraint<T>], dim: usize) -> Vec<Vec<T>> {
    let mut found: Vec<Vec<T>> = Vec::new();
    for combo in combinations(constraints.len(), dim) {
        let rows = combo
            .iter()
            .map(|&i| constraints[i].coeffs.clone())
            .collect();
        let rhs = combo
            .iter()
            .map(|&i| constraints[i].bound.clone())
            .collect();
        let Some(x) = solve(rows, rhs) else {
            continue;
        };
        if constraints.iter().all(|c| c.satisfied(&x)) && !found.iter().any(|v| same_point(v, &x)) {
            found.push(x);
        }
    }
    found
}

/// Minimizes `objective · x` over a pointed polyhedron whose objective is
/// bounded below. Ties resolve to the first vertex found.
pub fn minimize<T: Scalar>(objective: &[T], constraints: &[Constraint<T>]) -> Option<(T, Vec<T>)> {
    let mut best: Option<(T, Vec<T>)> = None;
    for v in vertices(constraints, objective.len()) {
        let value = objective
            .iter()
            .zip(&v)
            .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        let better = match &best {
            None => true,
            Some((b, _)) => value < b.clone() - T::tolerance(),
        };
        if better {
            best = Some((value, v));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn unit_square_vertices() {
        let cs = vec![
            Constraint::new("x<=1", vec![q(1, 1), q(0, 1)], q(1, 1)),
            Constraint::new("y<=1", vec![q(0, 1), q(1, 1)], q(1, 1)),
            Constraint::new("x>=0", vec![q(-1, 1), q(0, 1)], q(0, 1)),
            Constraint::new("y>=0", vec![q(0, 1), q(-1, 1)], q(0, 1)),
        ];
        assert_eq!(vertices(&cs, 2).len(), 4);
        let (val, at) = minimize(&[q(-1, 1), q(-2, 1)], &cs).unwrap();
        assert_eq!(val, q(-3, 1));
        assert_eq!(at, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn float_and_exact_agree() {
        let cs_f = vec![
            Constraint::new("a", vec![1.0, 1.0], 1.0),
            Constraint::new("b", vec![-1.0, 0.0], 0.0),
            Constraint::new("c", vec![0.0, -1.0], 0.0),
        ];
        let (v, x) = minimize(&[-3.0, -1.0], &cs_f).unwrap();
        assert!((v + 3.0).abs() < 1e-15 && (x[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_systems_are_skipped() {
        let cs = vec![
            Constraint::new("a", vec![1.0, 1.0], 1.0),
            Constraint::new("b", vec![2.0, 2.0], 2.0),
        ];
        assert!(vertices(&cs, 2).is_empty());
    }
}
