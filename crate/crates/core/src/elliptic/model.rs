use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{qi, QPoly, Rational};
use crate::error::{GfeError, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over Q with nonzero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

fn b_invariants(a: &[Rational; 5]) -> (Rational, Rational, Rational, Rational) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + qi(4) * a2;
    let b4 = qi(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + qi(4) * a6;
    let b8 = a1 * a1 * a6 + qi(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    (b2, b4, b6, b8)
}

fn discriminant(b2: &Rational, b4: &Rational, b6: &Rational, b8: &Rational) -> Rational {
    -(b2 * b2 * b8) - qi(8) * b4 * b4 * b4 - qi(27) * b6 * b6 + qi(9) * b2 * b4 * b6
}

impl WeierstrassModel {
    pub fn new(a: [Rational; 5]) -> Result<Self> {
        let (b2, b4, b6, b8) = b_invariants(&a);
        if discriminant(&b2, &b4, &b6, &b8).is_zero() {
            return Err(GfeError::SingularCurve);
        }
        let [a1, a2, a3, a4, a6] = a;
        Ok(WeierstrassModel { a1, a2, a3, a4, a6 })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(qi))
    }

    pub fn a_invariants(&self) -> [Rational; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn invariants(&self) -> Invariants {
        let (b2, b4, b6, b8) = b_invariants(&self.a_invariants());
        let c4 = &b2 * &b2 - qi(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + qi(36) * &b2 * &b4 - qi(216) * &b6;
        let disc = discriminant(&b2, &b4, &b6, &b8);
        let j = &c4 * &c4 * &c4 / &disc;
        Invariants { b2, b4, b6, b8, c4, c6, disc, j }
    }

    pub fn j_invariant(&self) -> Rational {
        self.invariants().j
    }

    /// Quadratic twist with `c4 -> d^2 c4`, `c6 -> d^3 c6`, `disc -> d^6 disc`.
    ///
    /// The model is `y^2 = x^3 + d b2/4 x^2 + d^2 b4/2 x + d^3 b6/4`.
    pub fn quadratic_twist(&self, d: i64) -> Result<Self> {
        if !crate::arith::squarefree(d) {
            return Err(GfeError::PreconditionFailed(format!("twist parameter {d} is not squarefree")));
        }
        if d == 1 {
            return Ok(self.clone());
        }
        let (b2, b4, b6, _) = b_invariants(&self.a_invariants());
        let d = qi(d);
        let z = Rational::zero();
        Self::new([
            z.clone(),
            &d * &b2 / qi(4),
            z,
            &d * &d * &b4 / qi(2),
            &d * &d * &d * &b6 / qi(4),
        ])
    }

    /// Change of coordinates `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
    pub fn transform(&self, u: &Rational, r: &Rational, s: &Rational, t: &Rational) -> Self {
        let [a1, a2, a3, a4, a6] = self.a_invariants();
        let n1 = &a1 + qi(2) * s;
        let n2 = &a2 - s * &a1 + qi(3) * r - s * s;
        let n3 = &a3 + r * &a1 + qi(2) * t;
        let n4 = &a4 - s * &a3 + qi(2) * r * &a2 - (t + r * s) * &a1 + qi(3) * r * r - qi(2) * s * t;
        let n6 = &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        WeierstrassModel { a1: n1 / u, a2: n2 / u2, a3: n3 / u3, a4: n4 / u4, a6: n6 / u6 }
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, whose roots are the x-coordinates of 2-torsion.
    pub fn division_poly_2(&self) -> QPoly {
        let (b2, b4, b6, _) = b_invariants(&self.a_invariants());
        QPoly::new(vec![b6, qi(2) * b4, b2, qi(4)])
    }

    pub fn is_on_curve(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    /// Isomorphic over Q: `c4' = u^4 c4` and `c6' = u^6 c6` for some rational u.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        use crate::arith::rational_sqrt;
        let (a, b) = (self.invariants(), other.invariants());
        if a.j != b.j {
            return false;
        }
        let u2 = match (a.c4.is_zero(), a.c6.is_zero()) {
            // u^2 = (c6'/c6) / (c4'/c4)
            (false, false) => Some((&b.c6 / &a.c6) / (&b.c4 / &a.c4)),
            (false, true) => rational_sqrt(&(&b.c4 / &a.c4)),
            (true, _) => {
                let r = &b.c6 / &a.c6;
                // u^2 is the cube root of r
                crate::arith::rational_cbrt(&r)
            }
        };
        let Some(u2) = u2 else { return false };
        rational_sqrt(&u2).is_some() && &u2 * &u2 * &a.c4 == b.c4 && &u2 * &u2 * &u2 * &a.c6 == b.c6
    }

    pub fn is_integral(&self) -> bool {
        self.a_invariants().iter().all(|a| a.denom().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn frey_type_invariants_at_catalan() {
        // y^2 = x^3 + 3(-2)x - 2*3
        let m = WeierstrassModel::from_ints([0, 0, 0, -6, -6]).unwrap();
        let inv = m.invariants();
        assert_eq!(inv.c4, qi(288));
        assert_eq!(inv.c6, qi(5184));
        assert_eq!(inv.disc, qi(-1728));
        assert_eq!(inv.j, qi(-13824));
        assert_eq!(qi(1728) * &inv.disc, &inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6);
    }

    #[test]
    fn j_of_cm_curves() {
        assert_eq!(WeierstrassModel::from_ints([0, 0, 1, 0, -7]).unwrap().j_invariant(), qi(0));
        assert_eq!(WeierstrassModel::from_ints([0, 0, 0, 3, 0]).unwrap().j_invariant(), qi(1728));
    }

    #[test]
    fn twist_scales_invariants() {
        let m = WeierstrassModel::from_ints([1, -1, 0, 12, 8]).unwrap();
        let i0 = m.invariants();
        for d in [-1i64, 2, -3, 6, 7] {
            let t = m.quadratic_twist(d).unwrap().invariants();
            let dq = qi(d);
            assert_eq!(t.c4, &i0.c4 * &dq * &dq);
            assert_eq!(t.c6, &i0.c6 * &dq * &dq * &dq);
            assert_eq!(t.disc, &i0.disc * dq.pow(6));
            assert_eq!(t.j, i0.j);
        }
        assert_eq!(m.quadratic_twist(1).unwrap().invariants(), i0);
        assert!(m.quadratic_twist(12).is_err());
    }

    #[test]
    fn transform_preserves_j() {
        let m = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap();
        let t = m.transform(&q(1, 2), &qi(3), &q(-1, 3), &qi(5));
        assert_eq!(t.j_invariant(), m.j_invariant());
        assert_eq!(t.invariants().disc, m.invariants().disc * qi(4096));
    }

    #[test]
    fn two_division_polynomials() {
        let x011 = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(x011.division_poly_2(), QPoly::from_i64s(&[-79, -40, -4, 4]));
        let m = WeierstrassModel::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(m.division_poly_2(), QPoly::from_i64s(&[0, -4, 0, 4]));
        let m = WeierstrassModel::from_ints([0, 0, 0, 3, 0]).unwrap();
        assert_eq!(m.division_poly_2(), QPoly::from_i64s(&[0, 12, 0, 4]));
        assert!(x011.is_on_curve(&qi(16), &qi(60)));
    }
}
