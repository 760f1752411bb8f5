use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::WeierstrassModel;
use crate::arith::{Padic, Rational};

/// Field elements the group law can run over: exact rationals or truncated l-adics.
pub trait FieldElem:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// Embed a rational constant into the same field as `self`.
    fn lift(&self, q: &Rational) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl FieldElem for Rational {
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl FieldElem for Padic {
    fn lift(&self, q: &Rational) -> Self {
        let n = self.abs_prec().unwrap_or(0).max(0) as u32 + self.prec() + 16;
        Padic::from_rational(q, self.ell(), n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero_at_prec()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllPoint<T> {
    Infinity,
    Affine(T, T),
}

fn coeffs<T: FieldElem>(m: &WeierstrassModel, like: &T) -> [T; 5] {
    m.a_invariants().map(|a| like.lift(&a))
}

impl<T: FieldElem> EllPoint<T> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EllPoint::Infinity)
    }
}

pub fn point_neg<T: FieldElem>(m: &WeierstrassModel, p: &EllPoint<T>) -> EllPoint<T> {
    match p {
        EllPoint::Infinity => EllPoint::Infinity,
        EllPoint::Affine(x, y) => {
            let [a1, _, a3, _, _] = coeffs(m, x);
            EllPoint::Affine(x.clone(), -y.clone() - a1 * x.clone() - a3)
        }
    }
}

pub fn point_add<T: FieldElem>(m: &WeierstrassModel, p: &EllPoint<T>, q: &EllPoint<T>) -> EllPoint<T> {
    let (x1, y1, x2, y2) = match (p, q) {
        (EllPoint::Infinity, _) => return q.clone(),
        (_, EllPoint::Infinity) => return p.clone(),
        (EllPoint::Affine(x1, y1), EllPoint::Affine(x2, y2)) => (x1.clone(), y1.clone(), x2.clone(), y2.clone()),
    };
    let [a1, a2, a3, a4, a6] = coeffs(m, &x1);
    let c = |k: i64| x1.lift(&Rational::from_integer(k.into()));
    let (lambda, nu) = if (x1.clone() - x2.clone()).is_zero_elem() {
        let den = y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone();
        if den.is_zero_elem() {
            return EllPoint::Infinity;
        }
        let den = c(2) * y1.clone() + a1.clone() * x1.clone() + a3.clone();
        let lam = (c(3) * x1.clone() * x1.clone() + c(2) * a2.clone() * x1.clone() + a4.clone() - a1.clone() * y1.clone())
            / den.clone();
        let nu = (-(x1.clone() * x1.clone() * x1.clone()) + a4.clone() * x1.clone() + c(2) * a6 - a3.clone() * y1.clone())
            / den;
        (lam, nu)
    } else {
        let dx = x2.clone() - x1.clone();
        let lam = (y2.clone() - y1.clone()) / dx.clone();
        let nu = (y1.clone() * x2.clone() - y2.clone() * x1.clone()) / dx;
        (lam, nu)
    };
    let x3 = lambda.clone() * lambda.clone() + a1.clone() * lambda.clone() - a2 - x1 - x2;
    let y3 = -(lambda + a1) * x3.clone() - nu - a3;
    EllPoint::Affine(x3, y3)
}

pub fn point_mul<T: FieldElem>(m: &WeierstrassModel, k: i64, p: &EllPoint<T>) -> EllPoint<T> {
    let mut base = if k < 0 { point_neg(m, p) } else { p.clone() };
    let mut n = k.unsigned_abs();
    let mut acc = EllPoint::Infinity;
    while n > 0 {
        if n & 1 == 1 {
            acc = point_add(m, &acc, &base);
        }
        base = point_add(m, &base, &base);
        n >>= 1;
    }
    acc
}

impl EllPoint<Rational> {
    pub fn on(&self, m: &WeierstrassModel) -> bool {
        match self {
            EllPoint::Infinity => true,
            EllPoint::Affine(x, y) => m.is_on_curve(x, y),
        }
    }
}
