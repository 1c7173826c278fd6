//! Square matrices over `ℤ[k]` and their characteristic polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zk::{PolyZk, Zk};
use crate::error::PolyError;

/// Largest dimension accepted by [`charpoly`].
pub const MAX_CHARPOLY_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixZk {
    rows: Vec<Vec<Zk>>,
}

impl MatrixZk {
    pub fn new(rows: Vec<Vec<Zk>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(PolyError::NotSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        Ok(MatrixZk { rows })
    }

    /// From `(a, b)` entries meaning `a·k + b`.
    pub fn from_affine(rows: &[Vec<(i64, i64)>]) -> Result<Self, PolyError> {
        MatrixZk::new(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| Zk::affine(a, b)).collect())
                .collect(),
        )
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self, PolyError> {
        MatrixZk::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| Zk::constant(c)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Zk {
        &self.rows[i][j]
    }

    pub fn eval_at(&self, k: i64) -> Vec<Vec<BigInt>> {
        let kb = BigInt::from(k);
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.eval(&kb)).collect())
            .collect()
    }
}

/// `det(xI − M)`, by cofactor expansion memoized on column subsets. The
/// expansion never divides, so it stays inside `ℤ[k][x]`.
pub fn charpoly(m: &MatrixZk) -> Result<PolyZk, PolyError> {
    let n = m.dim();
    if n > MAX_CHARPOLY_DIM {
        return Err(PolyError::TooLarge(n));
    }
    let entry = |i: usize, j: usize| -> PolyZk {
        let c = PolyZk::constant(-m.entry(i, j));
        if i == j {
            &c + &PolyZk::x()
        } else {
            c
        }
    };
    let mut memo: HashMap<u32, PolyZk> = HashMap::new();
    Ok(minor(n, (1u32 << n) - 1, &entry, &mut memo))
}

// Determinant of rows n-|cols|..n against the column set `cols`.
fn minor(
    n: usize,
    cols: u32,
    entry: &dyn Fn(usize, usize) -> PolyZk,
    memo: &mut HashMap<u32, PolyZk>,
) -> PolyZk {
    if cols == 0 {
        return PolyZk::constant(Zk::one());
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = n - cols.count_ones() as usize;
    let mut acc = PolyZk::zero();
    let mut pos = 0;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let a = entry(row, j);
        if !a.is_zero() {
            let term = &a * &minor(n, cols & !(1 << j), entry, memo);
            acc = if pos % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}
