use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::pow_mod_u64;

/// Invertible 2x2 matrix over F_p, entries stored row-major in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatGL2 {
    pub p: u64,
    pub e: [u64; 4],
}

impl fmt::Debug for MatGL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.p)
    }
}

fn red(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl MatGL2 {
    /// Reduce integer entries mod p; `None` if the determinant vanishes.
    pub fn new(p: u64, e: [i64; 4]) -> Option<Self> {
        let m = MatGL2 { p, e: e.map(|x| red(x, p)) };
        (m.det() != 0).then_some(m)
    }

    pub fn identity(p: u64) -> Self {
        MatGL2 { p, e: [1, 0, 0, 1] }
    }

    pub fn scalar(p: u64, c: u64) -> Self {
        MatGL2 { p, e: [c % p, 0, 0, c % p] }
    }

    pub fn diag(p: u64, a: i64, d: i64) -> Option<Self> {
        Self::new(p, [a, 0, 0, d])
    }

    pub fn det(&self) -> u64 {
        let p = self.p;
        let [a, b, c, d] = self.e;
        (a * d % p + p - b * c % p) % p
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let p = self.p;
        let [a, b, c, d] = self.e;
        let [w, x, y, z] = o.e;
        MatGL2 { p, e: [(a * w + b * y) % p, (a * x + b * z) % p, (c * w + d * y) % p, (c * x + d * z) % p] }
    }

    pub fn inv(&self) -> Self {
        let p = self.p;
        let di = pow_mod_u64(self.det(), p - 2, p);
        let [a, b, c, d] = self.e;
        MatGL2 { p, e: [d * di % p, (p - b) % p * di % p, (p - c) % p * di % p, a * di % p] }
    }

    pub fn conj(&self, h: &Self) -> Self {
        self.mul(h).mul(&self.inv())
    }

    pub fn is_scalar(&self) -> bool {
        let [a, b, c, d] = self.e;
        b == 0 && c == 0 && a == d
    }

    pub fn order(&self) -> u64 {
        let id = Self::identity(self.p);
        let mut g = *self;
        let mut k = 1;
        while g != id {
            g = g.mul(self);
            k += 1;
        }
        k
    }

    /// All of GL_2(F_p), in lexicographic order of entries.
    pub fn all(p: u64) -> impl Iterator<Item = MatGL2> {
        (0..p.pow(4)).filter_map(move |i| {
            let e = [i / (p * p * p), i / (p * p) % p, i / p % p, i % p];
            let m = MatGL2 { p, e };
            (m.det() != 0).then_some(m)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_f3_has_48_elements() {
        assert_eq!(MatGL2::all(3).count(), 48);
        assert_eq!(MatGL2::all(5).count(), 480);
    }

    #[test]
    fn inverse_and_det() {
        let m = MatGL2::new(7, [1, -1, 1, 1]).unwrap();
        assert_eq!(m.det(), 2);
        assert_eq!(m.mul(&m.inv()), MatGL2::identity(7));
        assert!(MatGL2::new(5, [1, 2, 2, 4]).is_none());
    }
}
