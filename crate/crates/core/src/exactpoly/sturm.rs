//! Real root isolation by Sturm sequences over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zk::PolyZk;
use crate::error::PolyError;
use crate::spectral::MIN_TOL;

/// Rational polynomial, lowest power first, no trailing zeros.
pub type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn from_integers(p: &[BigInt]) -> RatPoly {
    trim(p.iter().cloned().map(BigRational::from_integer).collect())
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

// (quotient, remainder) of a / b, b nonzero.
fn div_rem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let f = &r[i] / &lead;
        for (j, c) in b.iter().enumerate() {
            let d = &f * c;
            r[i - db + j] -= d;
        }
        q[i - db] = f;
    }
    (trim(q), trim(r))
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn square_free(p: &[BigRational]) -> RatPoly {
    let g = gcd(p, &derivative(p));
    if g.len() <= 1 {
        return p.to_vec();
    }
    div_rem(p, &g).0
}

/// Sturm chain of the square-free part of `p`.
pub fn sturm_chain(p: &[BigRational]) -> Vec<RatPoly> {
    let p0 = square_free(p);
    let mut chain = vec![p0.clone(), derivative(&p0)];
    while chain.last().is_some_and(|q| !q.is_empty()) {
        let n = chain.len();
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| {
            let v = eval(q, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots(chain: &[RatPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

/// Every real root lies in `(-B, B)` with `B = 1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &[BigRational]) -> BigRational {
    let lead = p.last().expect("nonzero polynomial").abs();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    max + BigRational::one()
}

/// Half-open isolating interval `(lo, hi]` holding exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .expect("finite rational")
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn rational_tol(tol: f64) -> BigRational {
    BigRational::from_float(tol).expect("finite tolerance")
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

// Shrinks an isolating interval of the square-free `p` to width <= tol.
fn refine(
    p: &[BigRational],
    mut lo: BigRational,
    mut hi: BigRational,
    tol: &BigRational,
) -> RootInterval {
    if eval(p, &hi).is_zero() {
        return RootInterval { lo: hi.clone(), hi };
    }
    let hi_pos = eval(p, &hi).is_positive();
    while &hi - &lo > *tol {
        let mid = half(&lo, &hi);
        let v = eval(p, &mid);
        if v.is_zero() {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if v.is_positive() == hi_pos {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Isolating intervals of width at most `tol` for every distinct real root,
/// in increasing order.
pub fn isolate_real_roots(p: &[BigRational], tol: f64) -> Vec<RootInterval> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let sf = square_free(&p);
    let chain = sturm_chain(&p);
    let b = cauchy_bound(&p);
    let tol = rational_tol(tol);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => out.push(refine(&sf, lo, hi, &tol)),
            _ => {
                let mid = half(&lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn at_k_checked(p: &PolyZk, k: i64, tol: f64) -> Result<RatPoly, PolyError> {
    if tol.is_nan() || tol < MIN_TOL {
        return Err(PolyError::Tolerance(tol));
    }
    Ok(from_integers(&p.at_k(k)))
}

/// Largest real root of `p(·, k)`, as the midpoint of an isolating
/// interval of width at most `tol`.
pub fn largest_real_root(p: &PolyZk, k: i64, tol: f64) -> Result<f64, PolyError> {
    let q = at_k_checked(p, k, tol)?;
    largest_root_interval(&q, tol)
        .map(|r| r.midpoint())
        .ok_or(PolyError::NoRealRoot(k))
}

/// Isolating interval of the largest real root of a rational polynomial.
pub fn largest_root_interval(p: &[BigRational], tol: f64) -> Option<RootInterval> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return None;
    }
    let sf = square_free(&p);
    let chain = sturm_chain(&p);
    let (mut lo, hi) = {
        let b = cauchy_bound(&p);
        (-b.clone(), b)
    };
    if count_roots(&chain, &lo, &hi) == 0 {
        return None;
    }
    // move lo up while the largest root stays above it
    let mut hi = hi;
    loop {
        let c = count_roots(&chain, &lo, &hi);
        if c == 1 {
            return Some(refine(&sf, lo, hi, &rational_tol(tol)));
        }
        let mid = half(&lo, &hi);
        if count_roots(&chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// All distinct real roots of `p(·, k)`, increasing.
pub fn real_roots(p: &PolyZk, k: i64, tol: f64) -> Result<Vec<f64>, PolyError> {
    let q = at_k_checked(p, k, tol)?;
    Ok(isolate_real_roots(&q, tol)
        .iter()
        .map(RootInterval::midpoint)
        .collect())
}

/// Distinct real roots of `p(·, k)` in `(lo, hi]`.
pub fn count_roots_between(p: &PolyZk, k: i64, lo: &BigRational, hi: &BigRational) -> usize {
    let q = from_integers(&p.at_k(k));
    if q.len() <= 1 {
        return 0;
    }
    count_roots(&sturm_chain(&q), lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_poly(c: &[i64]) -> RatPoly {
        from_integers(&c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
    }

    #[test]
    fn linear() {
        let p = PolyZk::from_affine(&[(0, -4), (0, 1)]);
        assert!((largest_real_root(&p, 0, 1e-12).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_cubic() {
        // (x-2)(x^2-(2k+3)x+2k) at k=2
        let g = PolyZk::from_affine(&[(-4, 0), (6, 6), (-2, -5), (0, 1)]);
        let r = largest_real_root(&g, 2, 1e-12).unwrap();
        assert!((r - (7.0 + 33f64.sqrt()) / 2.0).abs() < 1e-11);
        assert!((r - 6.372_281_3).abs() < 1e-7);
        let roots = real_roots(&g, 2, 1e-12).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[1] - 2.0).abs() < 1e-11);
    }

    #[test]
    fn no_real_root() {
        let p = PolyZk::from_affine(&[(0, 1), (0, 0), (0, 1)]);
        assert_eq!(
            largest_real_root(&p, 3, 1e-9),
            Err(PolyError::NoRealRoot(3))
        );
        assert_eq!(
            largest_real_root(&p, 3, 1e-14),
            Err(PolyError::Tolerance(1e-14))
        );
        let c = PolyZk::from_affine(&[(0, 5)]);
        assert_eq!(
            largest_real_root(&c, 1, 1e-9),
            Err(PolyError::NoRealRoot(1))
        );
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x-1)^2 (x+3)
        let p = int_poly(&[3, -5, 1, 1]);
        let roots = isolate_real_roots(&p, 1e-10);
        assert_eq!(roots.len(), 2);
        let top = largest_root_interval(&p, 1e-12).unwrap();
        assert!((top.midpoint() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn exact_root_on_a_bisection_point() {
        let p = int_poly(&[0, 0, 1]);
        let r = isolate_real_roots(&p, 1e-12);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].midpoint(), 0.0);
    }

    proptest! {
        #[test]
        fn recovers_integer_roots(mut roots in proptest::collection::vec(-30i64..30, 1..6)) {
            let mut p = int_poly(&[1]);
            for &r in &roots {
                let lin = int_poly(&[-r, 1]);
                let mut out = vec![BigRational::zero(); p.len() + 1];
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in lin.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                p = out;
            }
            roots.sort_unstable();
            roots.dedup();
            let found = isolate_real_roots(&p, 1e-9);
            prop_assert_eq!(found.len(), roots.len());
            for (iv, r) in found.iter().zip(&roots) {
                prop_assert!((iv.midpoint() - *r as f64).abs() < 1e-9);
            }
            let top = largest_root_interval(&p, 1e-12).unwrap().midpoint();
            prop_assert!((top - *roots.last().unwrap() as f64).abs() < 1e-11);
        }
    }
}
