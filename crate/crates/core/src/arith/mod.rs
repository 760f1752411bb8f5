//! Exact integers, rationals, residues, truncated l-adic numbers and polynomials.

mod newton;
mod padic;
mod poly;
mod roots;

pub use newton::{gauss_valuation, newton_polygon, NewtonPolygon, PadicPoly, Segment};
pub use padic::{default_precision, padic_from_rational, Padic};
pub use poly::{Poly, QPoly, Ring};
pub use roots::{hensel_lift, is_power_unit, padic_roots_in_zl, padic_roots, squarefree_part};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qbig(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// l-adic valuation of a nonzero integer; `None` for zero.
pub fn val_int(n: &BigInt, ell: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let l = BigInt::from(ell);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (qt, r) = m.div_rem(&l);
        if !r.is_zero() {
            return Some(v);
        }
        m = qt;
        v += 1;
    }
}

pub fn val_i64(n: i64, ell: u64) -> Option<i64> {
    val_int(&BigInt::from(n), ell)
}

pub fn val_rat(x: &Rational, ell: u64) -> Option<i64> {
    let vn = val_int(x.numer(), ell)?;
    Some(vn - val_int(x.denom(), ell).unwrap_or(0))
}

/// Strip all factors of `ell` from `n`, returning (valuation, cofactor).
pub fn split_int(n: &BigInt, ell: u64) -> (i64, BigInt) {
    let l = BigInt::from(ell);
    let mut m = n.clone();
    let mut v = 0;
    if m.is_zero() {
        return (0, m);
    }
    loop {
        let (qt, r) = m.div_rem(&l);
        if !r.is_zero() {
            return (v, m);
        }
        m = qt;
        v += 1;
    }
}

pub fn pow_big(ell: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(ell), e as usize)
}

pub fn rat_pow(ell: u64, e: i64) -> Rational {
    if e >= 0 {
        qbig(pow_big(ell, e as u32))
    } else {
        Rational::new(BigInt::one(), pow_big(ell, (-e) as u32))
    }
}

/// Least nonnegative residue of `a` modulo `m`.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduce a rational with denominator prime to `m` into Z/m.
pub fn rat_mod(x: &Rational, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

pub fn pow_mod_u64(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r = 1u128 % m;
    let mut bb = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    r as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareClass {
    Square,
    NonSquare,
    Zero,
}

/// Euler criterion classification of `u` modulo the odd prime `p`.
pub fn square_class(u: i64, p: u64) -> SquareClass {
    let r = u.rem_euclid(p as i64) as u64;
    if r == 0 {
        return SquareClass::Zero;
    }
    if pow_mod_u64(r, (p - 1) / 2, p) == 1 {
        SquareClass::Square
    } else {
        SquareClass::NonSquare
    }
}

pub fn square_class_big(u: &BigInt, p: u64) -> SquareClass {
    let r = u.mod_floor(&BigInt::from(p)).to_i64().unwrap();
    square_class(r, p)
}

/// Legendre symbol (u/p) as -1, 0, 1.
pub fn legendre(u: i64, p: u64) -> i32 {
    match square_class(u, p) {
        SquareClass::Square => 1,
        SquareClass::NonSquare => -1,
        SquareClass::Zero => 0,
    }
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// A rational is a square in Q iff numerator and denominator are squares.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(Rational::new(n, d))
}

/// Cube root in Q, if any.
pub fn rational_cbrt(x: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| {
        let r = n.cbrt();
        (&r * &r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

pub fn squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub fn rat_to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        Some(qbig(s.parse().ok()?))
    }
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_classes_from_examples() {
        assert_eq!(square_class(-2, 11), SquareClass::Square);
        assert_eq!(square_class(2, 11), SquareClass::NonSquare);
        assert_eq!(square_class(1, 7), SquareClass::Square);
        assert_eq!(square_class(22, 11), SquareClass::Zero);
    }

    #[test]
    fn valuations() {
        assert_eq!(val_i64(-13824, 2), Some(9));
        assert_eq!(val_rat(&q(1, 24), 2), Some(-3));
        assert_eq!(val_i64(0, 3), None);
    }

    #[test]
    fn rational_roundtrip_strings() {
        for s in ["5/4", "-2", "0", "-1728/7"] {
            assert_eq!(rat_to_string(&parse_rational(s).unwrap()), s);
        }
    }
}
