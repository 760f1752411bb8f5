use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{mod_inverse, pow_big, qbig, rat_pow, split_int, Rational};
use crate::error::{GfeError, Result};

/// Working precision in l-adic digits; `GFE_PRECISION` overrides the default of 64.
pub fn default_precision() -> u32 {
    static PREC: OnceLock<u32> = OnceLock::new();
    *PREC.get_or_init(|| {
        std::env::var("GFE_PRECISION")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n: &u32| n >= 1)
            .unwrap_or(64)
    })
}

/// Truncated l-adic number `ell^val * (unit + O(ell^prec))`.
///
/// `val == None` is the exact zero. An element with `prec == 0` is only known
/// to be divisible by `ell^val`: it is zero at the available precision.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Padic {
    ell: u64,
    val: Option<i64>,
    unit: BigInt,
    prec: u32,
}

pub fn padic_from_rational(x: &Rational, ell: u64, n: u32) -> Padic {
    Padic::from_rational(x, ell, n)
}

impl Padic {
    pub fn exact_zero(ell: u64) -> Self {
        Padic { ell, val: None, unit: BigInt::zero(), prec: 0 }
    }

    /// Zero known only modulo `ell^abs`.
    pub fn big_o(ell: u64, abs: i64) -> Self {
        Padic { ell, val: Some(abs), unit: BigInt::zero(), prec: 0 }
    }

    pub fn from_rational(x: &Rational, ell: u64, n: u32) -> Self {
        if x.is_zero() {
            return Self::exact_zero(ell);
        }
        let (vn, un) = split_int(x.numer(), ell);
        let (vd, ud) = split_int(x.denom(), ell);
        let m = pow_big(ell, n);
        let inv = mod_inverse(&ud, &m).expect("cofactor coprime to ell");
        Padic { ell, val: Some(vn - vd), unit: (un * inv).mod_floor(&m), prec: n }
    }

    pub fn from_int(n: &BigInt, ell: u64, prec: u32) -> Self {
        Self::from_rational(&qbig(n.clone()), ell, prec)
    }

    pub fn from_i64(n: i64, ell: u64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), ell, prec)
    }

    /// Normalise `ell^v * s + O(ell^abs)`.
    fn normalize(ell: u64, v: i64, s: BigInt, abs: i64) -> Self {
        if abs <= v {
            return Self::big_o(ell, abs);
        }
        let m = pow_big(ell, (abs - v) as u32);
        let s = s.mod_floor(&m);
        if s.is_zero() {
            return Self::big_o(ell, abs);
        }
        let (k, u) = split_int(&s, ell);
        let prec = (abs - v - k) as u32;
        let u = u.mod_floor(&pow_big(ell, prec));
        Padic { ell, val: Some(v + k), unit: u, prec }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_exact_zero(&self) -> bool {
        self.val.is_none()
    }

    /// True when the element is zero at the available precision (exactly or `O(ell^k)`).
    pub fn is_zero_at_prec(&self) -> bool {
        self.val.is_none() || self.prec == 0
    }

    /// Exact valuation, `Ok(None)` for the exact zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match self.val {
            None => Ok(None),
            Some(v) if self.prec > 0 => Ok(Some(v)),
            Some(v) => Err(GfeError::InsufficientPrecision(format!(
                "element is O({}^{}), valuation undetermined",
                self.ell, v
            ))),
        }
    }

    /// A lower bound for the valuation (`i64::MAX` for exact zero).
    pub fn val_lower(&self) -> i64 {
        self.val.unwrap_or(i64::MAX)
    }

    /// Absolute precision: the element is known modulo `ell^abs_prec`.
    pub fn abs_prec(&self) -> Option<i64> {
        self.val.map(|v| v + self.prec as i64)
    }

    /// The rational `ell^val * unit` representing this element.
    pub fn to_rational(&self) -> Rational {
        match self.val {
            None => Rational::zero(),
            Some(v) => qbig(self.unit.clone()) * rat_pow(self.ell, v),
        }
    }

    /// Representative of an integral element modulo `ell^k`.
    pub fn residue(&self, k: u32) -> Result<BigInt> {
        let m = pow_big(self.ell, k);
        match self.val {
            None => Ok(BigInt::zero()),
            Some(v) if v >= k as i64 => Ok(BigInt::zero()),
            Some(v) if v < 0 => Err(GfeError::PreconditionFailed("element not integral".into())),
            Some(v) => {
                if self.abs_prec().unwrap() < k as i64 {
                    return Err(GfeError::InsufficientPrecision(format!(
                        "need {} digits, have {}",
                        k,
                        self.abs_prec().unwrap()
                    )));
                }
                Ok((&self.unit * pow_big(self.ell, v as u32)).mod_floor(&m))
            }
        }
    }

    /// Lower the absolute precision to at most `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        match self.val {
            None => Self::big_o(self.ell, abs),
            Some(v) => {
                let cur = v + self.prec as i64;
                if cur <= abs {
                    self.clone()
                } else {
                    Self::normalize(self.ell, v, self.unit.clone(), abs)
                }
            }
        }
    }

    /// Same value with the relative precision reset to `n`; used only after a
    /// self-correcting iteration whose result is verified independently.
    pub fn lift_to(&self, n: u32) -> Self {
        match self.val {
            None => self.clone(),
            Some(_) => Self::from_rational(&self.to_rational(), self.ell, n),
        }
    }

    pub fn neg_ref(&self) -> Self {
        match self.val {
            None => self.clone(),
            Some(v) if self.prec == 0 => Self::big_o(self.ell, v),
            Some(v) => {
                let m = pow_big(self.ell, self.prec);
                Padic { ell: self.ell, val: Some(v), unit: (-&self.unit).mod_floor(&m), prec: self.prec }
            }
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        assert_eq!(self.ell, o.ell, "mixed primes");
        let (Some(va), Some(vb)) = (self.val, o.val) else {
            return if self.val.is_none() { o.clone() } else { self.clone() };
        };
        let abs = self.abs_prec().unwrap().min(o.abs_prec().unwrap());
        let v = va.min(vb);
        let s = &self.unit * pow_big(self.ell, (va - v) as u32) + &o.unit * pow_big(self.ell, (vb - v) as u32);
        Self::normalize(self.ell, v, s, abs)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.ell, o.ell, "mixed primes");
        let (Some(va), Some(vb)) = (self.val, o.val) else {
            return Self::exact_zero(self.ell);
        };
        let prec = self.prec.min(o.prec);
        if prec == 0 {
            return Self::big_o(self.ell, va + vb);
        }
        let m = pow_big(self.ell, prec);
        Padic { ell: self.ell, val: Some(va + vb), unit: (&self.unit * &o.unit).mod_floor(&m), prec }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.val {
            None => Err(GfeError::DivisionByZero),
            Some(_) if self.prec == 0 => Err(GfeError::InsufficientPrecision("inverse of O(l^k)".into())),
            Some(v) => {
                let m = pow_big(self.ell, self.prec);
                let u = mod_inverse(&self.unit, &m).expect("unit");
                Ok(Padic { ell: self.ell, val: Some(-v), unit: u, prec: self.prec })
            }
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Padic::from_i64(1, self.ell, self.prec.max(1));
        if self.val.is_none() {
            return if e == 0 { r } else { self.clone() };
        }
        for _ in 0..e {
            r = r.mul_ref(self);
        }
        r
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul_ref(&Padic::from_i64(k, self.ell, self.prec.max(1) + 64))
    }

    /// Whether the element is a square in Q_ell. Exact zero counts as a square.
    pub fn is_square(&self) -> Result<bool> {
        let Some(v) = self.valuation()? else { return Ok(true) };
        if v.rem_euclid(2) != 0 {
            return Ok(false);
        }
        super::is_power_unit(&self.unit, self.prec, 2, self.ell)
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.val {
            None => write!(f, "0"),
            Some(v) if self.prec == 0 => write!(f, "O({}^{})", self.ell, v),
            Some(v) => write!(f, "{}^{}*{} + O({}^{})", self.ell, v, self.unit, self.ell, v + self.prec as i64),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $m(self, o: &Padic) -> Padic {
                self.$inner(o)
            }
        }
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $m(self, o: Padic) -> Padic {
                (&self).$inner(&o)
            }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $m(self, o: &Padic) -> Padic {
                (&self).$inner(o)
            }
        }
    };
}

fn div_or_panic(a: &Padic, b: &Padic) -> Padic {
    a.checked_div(b).expect("l-adic division by an element that is zero at working precision")
}

impl Padic {
    fn div_ref(&self, o: &Self) -> Self {
        div_or_panic(self, o)
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_ref()
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};
    use num_traits::One;

    #[test]
    fn from_rational_examples() {
        let x = Padic::from_rational(&qi(-13824), 2, 20);
        assert_eq!(x.valuation().unwrap(), Some(9));
        let m = pow_big(2, 20);
        assert_eq!(x.unit(), &BigInt::from(-27).mod_floor(&m));

        let z = Padic::from_rational(&qi(0), 2, 20);
        assert!(z.is_exact_zero());
        assert_eq!(z.valuation().unwrap(), None);

        let t = Padic::from_rational(&q(1, 3), 2, 20);
        assert_eq!(t.valuation().unwrap(), Some(0));
        assert_eq!((t.unit() * BigInt::from(3)).mod_floor(&m), BigInt::one());
    }

    #[test]
    fn cancellation_reduces_precision() {
        let a = Padic::from_rational(&qi(1), 2, 10);
        let b = Padic::from_rational(&qi(1 + 1024 * 3), 2, 20);
        let d = &b - &a;
        assert!(d.is_zero_at_prec());
        assert!(d.valuation().is_err());
        assert_eq!(d.abs_prec(), Some(10));
        let c = Padic::from_rational(&qi(9), 2, 10);
        let e = &c - &a;
        assert_eq!(e.valuation().unwrap(), Some(3));
        assert_eq!(e.prec(), 7);
    }

    #[test]
    fn inverse_and_division() {
        let a = Padic::from_rational(&q(12, 7), 3, 30);
        let b = a.inv().unwrap();
        let one = &a * &b;
        assert_eq!(one.valuation().unwrap(), Some(0));
        assert_eq!(one.residue(30).unwrap(), BigInt::one());
        assert!(Padic::exact_zero(3).inv().is_err());
    }

    #[test]
    fn squares_in_q2_and_q3() {
        assert!(Padic::from_rational(&qi(17), 2, 20).is_square().unwrap());
        assert!(!Padic::from_rational(&qi(5), 2, 20).is_square().unwrap());
        assert!(Padic::from_rational(&qi(-7 * 4), 2, 20).is_square().unwrap());
        assert!(!Padic::from_rational(&qi(3), 3, 20).is_square().unwrap());
        assert!(Padic::from_rational(&qi(7), 3, 20).is_square().unwrap());
    }
}
