//! Exact eigenvalue counting for `Q(G)` by Sylvester's law of inertia.
//!
//! The number of eigenvalues of `Q` below `t` equals the number of sign
//! changes in the leading principal minors of `Q − tI`. The minors come
//! from fraction-free Bareiss elimination on the integer matrix
//! `den·Q − num·I`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::charpoly;
use super::quotient::QuotientMatrix;
use super::sturm::{from_integers, isolate_real_roots};
use crate::graph::Graph;

/// Eigenvalues of `Q(g)` strictly below `t`, or `None` when a leading
/// principal minor of `Q − tI` vanishes.
pub fn count_below_exact(g: &Graph, t: &BigRational) -> Option<usize> {
    let n = g.n();
    let (num, den) = (t.numer().clone(), t.denom().clone());
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for (v, row) in a.iter_mut().enumerate() {
        for &u in g.neighbors(v) {
            row[u] = den.clone();
        }
        row[v] = &den * BigInt::from(g.degree(v)) - &num;
    }
    let mut prev = BigInt::one();
    let mut prev_sign = 1i8;
    let mut changes = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            return None;
        }
        let s = if a[k][k].is_positive() { 1 } else { -1 };
        if s != prev_sign {
            changes += 1;
        }
        prev_sign = s;
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Some(changes)
}

fn nudge() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 60)
}

/// Eigenvalues of `Q(g)` below `t`, shifting `t` by `2^-60` steps in the
/// direction `down` until no minor vanishes.
fn count_below_shifted(g: &Graph, t: &BigRational, down: bool) -> usize {
    let step = nudge();
    let mut t = t.clone();
    loop {
        if let Some(c) = count_below_exact(g, &t) {
            return c;
        }
        if down {
            t -= &step;
        } else {
            t += &step;
        }
    }
}

/// Eigenvalues of `Q(g)` in the open interval `(lo, hi)`, with multiplicity,
/// up to the `2^-60` endpoint adjustment.
pub fn eigenvalues_between(g: &Graph, lo: &BigRational, hi: &BigRational) -> usize {
    count_below_shifted(g, hi, true).saturating_sub(count_below_shifted(g, lo, false))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentReport {
    /// Distinct real roots of the quotient characteristic polynomial.
    pub quotient_roots: Vec<f64>,
    /// Whether each root has an eigenvalue of `Q(G)` within the tolerance.
    pub contained: Vec<bool>,
}

impl ContainmentReport {
    pub fn all_contained(&self) -> bool {
        self.contained.iter().all(|&c| c)
    }

    pub fn max_root(&self) -> Option<f64> {
        self.quotient_roots.last().copied()
    }
}

/// Checks that every eigenvalue of the quotient is, within `tol`, an
/// eigenvalue of `Q(g)`. The check is exact apart from `tol` itself.
pub fn quotient_spectrum_containment(
    g: &Graph,
    quotient: &QuotientMatrix,
    tol: f64,
) -> ContainmentReport {
    let p = charpoly(&quotient.to_zk()).expect("quotient dimension within the charpoly limit");
    let q = from_integers(&p.at_k(0));
    let slack = BigRational::from_float(tol).expect("finite tolerance");
    let roots = isolate_real_roots(&q, tol / 4.0);
    let contained = roots
        .iter()
        .map(|iv| eigenvalues_between(g, &(&iv.lo - &slack), &(&iv.hi + &slack)) >= 1)
        .collect();
    ContainmentReport {
        quotient_roots: roots.iter().map(|r| r.midpoint()).collect(),
        contained,
    }
}
