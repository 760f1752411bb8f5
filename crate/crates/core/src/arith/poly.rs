use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Commutative ring with an embedding of the integers.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<Rational>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r * self.clone();
        }
        r
    }

    /// Substitute `g` for the variable.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * g.clone() + Self::constant(c.clone());
        }
        acc
    }

    /// Keep terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn mul_trunc(&self, o: &Self, n: usize) -> Self {
        let mut out = vec![T::zero(); n.min(self.coeffs.len() + o.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Ring + Div<Output = T>> Poly<T> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![T::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = r[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Self::new(quo), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Power series inverse to `n` terms; the constant term must be invertible.
    pub fn series_inverse(&self, n: usize) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series with zero constant term is not invertible");
        let inv0 = T::one() / c0;
        let mut out = vec![T::zero(); n];
        if n == 0 {
            return Self::zero();
        }
        out[0] = inv0.clone();
        for k in 1..n {
            let mut s = T::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = s + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -(s * inv0.clone());
        }
        Self::new(out)
    }
}

impl QPoly {
    /// Termwise antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut v = vec![Rational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v.push(c / Rational::from_integer(BigInt::from(i as i64 + 1)));
        }
        Self::new(v)
    }

    /// Clear denominators: returns an integer polynomial proportional to `self`.
    pub fn primitive_integer(&self) -> Poly<BigInt> {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return Poly::zero();
        }
        Poly::new(ints.into_iter().map(|c| c / &g).collect())
    }
}

impl Poly<BigInt> {
    pub fn to_q(&self) -> QPoly {
        self.map(|c| Rational::from_integer(c.clone()))
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        self.mul_trunc(&o, n)
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn from_i64(n: i64) -> Self {
        Self::constant(T::from_i64(n))
    }
}

impl<'a, T: Ring> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        self.clone() + o.clone()
    }
}

impl<'a, T: Ring> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        self.clone() - o.clone()
    }
}

impl<'a, T: Ring> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        self.clone() * o.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn arithmetic_and_division() {
        let f = QPoly::from_i64s(&[-1, 0, 1]);
        let g = QPoly::from_i64s(&[1, 1]);
        let (qt, r) = f.div_rem(&g);
        assert_eq!(qt, QPoly::from_i64s(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&QPoly::from_i64s(&[-1, 1]).pow(2)), QPoly::from_i64s(&[-1, 1]));
        assert_eq!(f.derivative(), QPoly::from_i64s(&[0, 2]));
        assert_eq!(f.eval(&q(1, 2)), q(-3, 4));
    }

    #[test]
    fn series_inverse_of_geometric() {
        let f = QPoly::from_i64s(&[1, -1]);
        let inv = f.series_inverse(6);
        assert_eq!(inv, QPoly::from_i64s(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn compose_and_integrate() {
        let f = QPoly::from_i64s(&[0, 0, 1]);
        let g = QPoly::from_i64s(&[1, 1]);
        assert_eq!(f.compose(&g), QPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(QPoly::from_i64s(&[1, 1]).integrate(), QPoly::new(vec![q(0, 1), q(1, 1), q(1, 2)]));
    }
}
