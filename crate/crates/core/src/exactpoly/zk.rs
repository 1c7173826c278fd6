//! Exact polynomials over `ℤ[k]` and `ℤ[k][x]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in the family parameter `k`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Zk {
    coeffs: Vec<BigInt>,
}

impl Zk {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Zk { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Zk::new(vec![BigInt::from(c)])
    }

    /// `a·k + b`.
    pub fn affine(a: i64, b: i64) -> Self {
        Zk::new(vec![BigInt::from(b), BigInt::from(a)])
    }

    pub fn zero() -> Self {
        Zk { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Zk::constant(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `k`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_i64(&self, k: i64) -> BigInt {
        self.eval(&BigInt::from(k))
    }

    fn leading_negative(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_negative())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl fmt::Display for Zk {
    /// Descending powers of `k` with explicit signs, e.g. `16k-15`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "k".to_string(),
                _ => format!("k^{i}"),
            };
            if i > 0 && mag.is_one() {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{mag}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Zk {
    type Output = Zk;
    fn add(self, o: &Zk) -> Zk {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        Zk::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &Zk {
    type Output = Zk;
    fn neg(self) -> Zk {
        Zk::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Zk {
    type Output = Zk;
    fn sub(self, o: &Zk) -> Zk {
        self + &(-o)
    }
}

impl Mul for &Zk {
    type Output = Zk;
    fn mul(self, o: &Zk) -> Zk {
        if self.is_zero() || o.is_zero() {
            return Zk::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Zk::new(out)
    }
}

/// Polynomial in `x` whose coefficients lie in `ℤ[k]`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZk {
    coeffs: Vec<Zk>,
}

impl PolyZk {
    pub fn new(mut coeffs: Vec<Zk>) -> Self {
        while coeffs.last().is_some_and(Zk::is_zero) {
            coeffs.pop();
        }
        PolyZk { coeffs }
    }

    /// From `(a, b)` pairs meaning `a·k + b`, lowest power of `x` first.
    pub fn from_affine(pairs: &[(i64, i64)]) -> Self {
        PolyZk::new(pairs.iter().map(|&(a, b)| Zk::affine(a, b)).collect())
    }

    pub fn constant(c: Zk) -> Self {
        PolyZk::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolyZk::new(vec![Zk::zero(), Zk::one()])
    }

    pub fn zero() -> Self {
        PolyZk { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest degree in `k` over all coefficients.
    pub fn degree_k(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Zk::degree).max()
    }

    pub fn coeffs(&self) -> &[Zk] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Zk {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Integer polynomial in `x` at a fixed `k`, lowest power first.
    pub fn at_k(&self, k: i64) -> Vec<BigInt> {
        let kb = BigInt::from(k);
        let mut v: Vec<BigInt> = self.coeffs.iter().map(|c| c.eval(&kb)).collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn eval(&self, x: &BigRational, k: &BigInt) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.eval(k))
            })
    }
}

impl fmt::Display for PolyZk {
    /// Descending powers of `x`; multi-term coefficients in parentheses,
    /// each signed by its leading `k` coefficient, e.g.
    /// `x^4 - (2k+7)x^3 + (10k+15)x^2 - (14k+9)x + 4k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.leading_negative();
            let mag = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let body = if i > 0 && mag.is_one() {
                String::new()
            } else if mag.term_count() > 1 {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            write!(f, "{sign}{body}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &PolyZk {
    type Output = PolyZk;
    fn add(self, o: &PolyZk) -> PolyZk {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyZk::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Neg for &PolyZk {
    type Output = PolyZk;
    fn neg(self) -> PolyZk {
        PolyZk::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &PolyZk {
    type Output = PolyZk;
    fn sub(self, o: &PolyZk) -> PolyZk {
        self + &(-o)
    }
}

impl Mul for &PolyZk {
    type Output = PolyZk;
    fn mul(self, o: &PolyZk) -> PolyZk {
        if self.is_zero() || o.is_zero() {
            return PolyZk::zero();
        }
        let mut out = vec![Zk::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyZk::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn render() {
        let f = PolyZk::from_affine(&[(4, 0), (-14, -9), (10, 15), (-2, -7), (0, 1)]);
        assert_eq!(
            f.to_string(),
            "x^4 - (2k+7)x^3 + (10k+15)x^2 - (14k+9)x + 4k"
        );
        let g = PolyZk::from_affine(&[(-16, 8), (44, 4)]);
        assert_eq!(g.to_string(), "(44k+4)x - (16k-8)");
        assert_eq!(PolyZk::from_affine(&[(0, -4), (0, 1)]).to_string(), "x - 4");
        assert_eq!(PolyZk::zero().to_string(), "0");
        assert_eq!(Zk::affine(-1, 0).to_string(), "-k");
    }

    #[test]
    fn product_expands() {
        // (x-2)(x^2-(2k+3)x+2k) = x^3-(2k+5)x^2+(6k+6)x-4k
        let a = PolyZk::from_affine(&[(0, -2), (0, 1)]);
        let b = PolyZk::from_affine(&[(2, 0), (-2, -3), (0, 1)]);
        let expect = PolyZk::from_affine(&[(-4, 0), (6, 6), (-2, -5), (0, 1)]);
        assert_eq!(&a * &b, expect);
        assert_eq!((&a * &b).degree(), Some(3));
        assert_eq!((&a * &b).degree_k(), Some(1));
    }

    fn arb_zk() -> impl Strategy<Value = Zk> {
        proptest::collection::vec(-50i64..50, 0..4)
            .prop_map(|v| Zk::new(v.into_iter().map(BigInt::from).collect()))
    }

    fn arb_poly() -> impl Strategy<Value = PolyZk> {
        proptest::collection::vec(arb_zk(), 0..5).prop_map(PolyZk::new)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -20i64..20, k in -20i64..20) {
            let xr = BigRational::from_integer(BigInt::from(x));
            let kb = BigInt::from(k);
            prop_assert_eq!((&a * &b).eval(&xr, &kb), a.eval(&xr, &kb) * b.eval(&xr, &kb));
        }
    }
}
