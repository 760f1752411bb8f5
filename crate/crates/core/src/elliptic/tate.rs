use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::WeierstrassModel;
use crate::arith::{pow_big, split_int, val_int, val_rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionClass {
    Good,
    MultSplit,
    MultNonSplit,
    Additive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub ell: u64,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    pub v_min_disc: i64,
    pub reduction_class: ReductionClass,
}

/// Integral a-invariants at `ell`: scale by `u = L' * ell^k` where `L'` is the
/// prime-to-`ell` part of the common denominator and `k` is minimal.
fn integral_at(m: &WeierstrassModel, ell: u64) -> [BigInt; 5] {
    let a = m.a_invariants();
    let weights = [1i64, 2, 3, 4, 6];
    let mut lcm = BigInt::one();
    let mut k = 0i64;
    for (ai, w) in a.iter().zip(weights) {
        lcm = lcm.lcm(ai.denom());
        if let Some(v) = val_rat(ai, ell) {
            if v < 0 {
                k = k.max((-v + w - 1) / w);
            }
        }
    }
    let (_, lprime) = split_int(&lcm, ell);
    let u = Rational::from_integer(lprime * pow_big(ell, k as u32));
    let mut out = a.clone();
    let mut up = Rational::one();
    let mut i = 0;
    for pw in 1..=6 {
        up = &up * &u;
        if weights.contains(&pw) {
            out[i] = &a[i] * &up;
            i += 1;
        }
    }
    out.map(|x| {
        debug_assert!(x.denom().is_one());
        x.to_integer()
    })
}

struct Curve {
    a: [BigInt; 5],
}

impl Curve {
    fn b(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    fn disc(&self) -> BigInt {
        let (b2, b4, b6, b8) = self.b();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// x = x' + r, y = y' + s x' + t (u = 1).
    fn rst(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let [a1, a2, a3, a4, a6] = self.a.clone();
        self.a = [
            &a1 + 2 * s,
            &a2 - s * &a1 + 3 * r - s * s,
            &a3 + r * &a1 + 2 * t,
            &a4 - s * &a3 + 2 * r * &a2 - (t + r * s) * &a1 + 3 * r * r - 2 * s * t,
            &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1,
        ];
    }
}

fn v(x: &BigInt, p: u64) -> i64 {
    val_int(x, p).unwrap_or(i64::MAX)
}

fn divisible(x: &BigInt, p: &BigInt) -> bool {
    x.mod_floor(p).is_zero()
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Does `a T^2 + b T + c` have a root in F_p?
fn quad_has_root(a: &BigInt, b: &BigInt, c: &BigInt, p: u64) -> bool {
    let pb = big(p);
    (0..p).any(|t| {
        let t = big(t);
        divisible(&(a * &t * &t + b * &t + c), &pb)
    })
}

/// Tate's algorithm at `ell`, valid for every prime; residue searches are brute force.
pub fn tate_algorithm(m: &WeierstrassModel, ell: u64) -> ReductionData {
    if ell >= 5 {
        return tate_large_prime(m, ell);
    }
    tate_generic(m, ell)
}

/// Step-by-step Tate's algorithm with residue searches over F_p. Used for
/// p = 2, 3 and, as a cross-check, for small p >= 5.
pub fn tate_generic(m: &WeierstrassModel, p: u64) -> ReductionData {
    let pb = big(p);
    let p2 = &pb * &pb;
    let p3 = &p2 * &pb;
    let p4 = &p2 * &p2;
    let p6 = &p3 * &p3;
    let mut c = Curve { a: integral_at(m, p) };
    loop {
        let n = v(&c.disc(), p);
        if n == 0 {
            return ReductionData { ell: p, kodaira: Kodaira::I0, conductor_exponent: 0, v_min_disc: 0, reduction_class: ReductionClass::Good };
        }
        // move the singular point of the reduction to (0, 0)
        let (r0, t0) = singular_point(&c, p);
        c.rst(&r0, &BigInt::zero(), &t0);
        let (b2, _, b6, b8) = c.b();
        if !divisible(&b2, &pb) {
            let [a1, a2, ..] = &c.a;
            let split = quad_has_root(&BigInt::one(), a1, &(-a2), p);
            let class = if split { ReductionClass::MultSplit } else { ReductionClass::MultNonSplit };
            return ReductionData { ell: p, kodaira: Kodaira::I(n as u32), conductor_exponent: 1, v_min_disc: n, reduction_class: class };
        }
        let additive = |k: Kodaira, f: i64| ReductionData {
            ell: p,
            kodaira: k,
            conductor_exponent: f as u32,
            v_min_disc: n,
            reduction_class: ReductionClass::Additive,
        };
        if v(&c.a[4], p) < 2 {
            return additive(Kodaira::II, n);
        }
        if v(&b8, p) < 3 {
            return additive(Kodaira::III, n - 1);
        }
        if v(&b6, p) < 3 {
            return additive(Kodaira::IV, n - 2);
        }
        // arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        let mut found = false;
        'search: for s in 0..p {
            for t1 in 0..p {
                let mut trial = Curve { a: c.a.clone() };
                trial.rst(&BigInt::zero(), &big(s), &(big(t1) * &pb));
                let [a1, a2, a3, a4, a6] = &trial.a;
                if divisible(a1, &pb) && divisible(a2, &pb) && divisible(a3, &p2) && divisible(a4, &p2) && divisible(a6, &p3) {
                    c = trial;
                    found = true;
                    break 'search;
                }
            }
        }
        assert!(found, "Tate step 6 change of coordinates not found");
        let [_, a2, _, a4, a6] = &c.a;
        let pb1 = a2 / &pb;
        let pc = a4 / &p2;
        let pd = a6 / &p3;
        let cubic = |x: &BigInt| x * x * x + &pb1 * x * x + &pc * x + &pd;
        let dcubic = |x: &BigInt| 3 * x * x + 2 * &pb1 * x + &pc;
        // triple root?  (T - r)^3 = T^3 - 3r T^2 + 3 r^2 T - r^3
        let triple = (0..p).map(big).find(|r| {
            divisible(&(&pb1 + 3 * r), &pb) && divisible(&(&pc - 3 * r * r), &pb) && divisible(&(&pd + r * r * r), &pb)
        });
        let double = (0..p).map(big).find(|r| divisible(&cubic(r), &pb) && divisible(&dcubic(r), &pb));
        match (triple, double) {
            (None, None) => return additive(Kodaira::I0Star, n - 4),
            (None, Some(r)) => {
                c.rst(&(&r * &pb), &BigInt::zero(), &BigInt::zero());
                let mut ix = 3u32;
                let mut iy = 3u32;
                let mut mx = p2.clone();
                let mut my = p2.clone();
                loop {
                    let [_, a2, a3, _, a6] = &c.a;
                    let a2t = a2 / &pb;
                    let a3t = a3 / &my;
                    let a6t = a6 / (&mx * &my);
                    if !divisible(&(&a3t * &a3t + 4 * &a6t), &pb) {
                        break;
                    }
                    let t0 = (0..p)
                        .map(big)
                        .find(|t| divisible(&(t * t + &a3t * t - &a6t), &pb) && divisible(&(2 * t + &a3t), &pb))
                        .expect("double root of the y-quadratic");
                    c.rst(&BigInt::zero(), &BigInt::zero(), &(&my * t0));
                    my *= &pb;
                    iy += 1;
                    let [_, a2, _, a4, a6] = &c.a;
                    debug_assert!(a2 / &pb == a2t);
                    let a4t = a4 / &pb / &mx;
                    let a6t = a6 / &mx / &my;
                    if !divisible(&(&a4t * &a4t - 4 * &a2t * &a6t), &pb) {
                        break;
                    }
                    let r0 = (0..p)
                        .map(big)
                        .find(|r| {
                            divisible(&(&a2t * r * r + &a4t * r + &a6t), &pb) && divisible(&(2 * &a2t * r + &a4t), &pb)
                        })
                        .expect("double root of the x-quadratic");
                    c.rst(&(&mx * r0), &BigInt::zero(), &BigInt::zero());
                    mx *= &pb;
                    ix += 1;
                }
                let mm = ix + iy - 5;
                return additive(Kodaira::IStar(mm), n - 4 - mm as i64);
            }
            (Some(r), _) => {
                c.rst(&(&r * &pb), &BigInt::zero(), &BigInt::zero());
                let x3 = &c.a[2] / &p2;
                let x6 = &c.a[4] / &p4;
                if !divisible(&(&x3 * &x3 + 4 * &x6), &pb) {
                    return additive(Kodaira::IVStar, n - 6);
                }
                let t0 = (0..p)
                    .map(big)
                    .find(|t| divisible(&(t * t + &x3 * t - &x6), &pb) && divisible(&(2 * t + &x3), &pb))
                    .expect("double root for IV* test");
                c.rst(&BigInt::zero(), &BigInt::zero(), &(&p2 * t0));
                if !divisible(&c.a[3], &p4) {
                    return additive(Kodaira::IIIStar, n - 7);
                }
                if !divisible(&c.a[4], &p6) {
                    return additive(Kodaira::IIStar, n - 8);
                }
                // non-minimal: divide by u = p
                let [a1, a2, a3, a4, a6] = &c.a;
                c.a = [a1 / &pb, a2 / &p2, a3 / &p3, a4 / &p4, a6 / &p6];
            }
        }
    }
}

fn singular_point(c: &Curve, p: u64) -> (BigInt, BigInt) {
    let pb = big(p);
    let [a1, a2, a3, a4, a6] = &c.a;
    for x in 0..p {
        for y in 0..p {
            let (x, y) = (big(x), big(y));
            let f = &y * &y + a1 * &x * &y + a3 * &y - &x * &x * &x - a2 * &x * &x - a4 * &x - a6;
            let fx = a1 * &y - 3 * &x * &x - 2 * a2 * &x - a4;
            let fy = 2 * &y + a1 * &x + a3;
            if divisible(&f, &pb) && divisible(&fx, &pb) && divisible(&fy, &pb) {
                return (x, y);
            }
        }
    }
    unreachable!("reduction with p | disc has a singular point")
}

/// For p >= 5 the reduction type is read off minimal (v(c4), v(c6), v(disc)).
fn tate_large_prime(m: &WeierstrassModel, p: u64) -> ReductionData {
    let inv = m.invariants();
    let vr = |x: &Rational| val_rat(x, p).unwrap_or(i64::MAX / 4);
    let (mut vc4, mut vc6, mut vd) = (vr(&inv.c4), vr(&inv.c6), vr(&inv.disc));
    // make c4, c6 integral, then strip u = p while the model stays integral
    while vc4 < 0 || vc6 < 0 {
        vc4 += 4;
        vc6 += 6;
        vd += 12;
    }
    while vc4 >= 4 && vc6 >= 6 && vd >= 12 {
        vc4 -= 4;
        vc6 -= 6;
        vd -= 12;
    }
    let data = |k: Kodaira, f: u32, class: ReductionClass| ReductionData {
        ell: p,
        kodaira: k,
        conductor_exponent: f,
        v_min_disc: vd,
        reduction_class: class,
    };
    if vd == 0 {
        return data(Kodaira::I0, 0, ReductionClass::Good);
    }
    if vc4 == 0 {
        // split iff -c6 is a square mod p
        let unit = inv.c6.numer() * inv.c6.denom();
        let (_, u) = split_int(&unit, p);
        let split = crate::arith::square_class_big(&(-u), p) == crate::arith::SquareClass::Square;
        let class = if split { ReductionClass::MultSplit } else { ReductionClass::MultNonSplit };
        return data(Kodaira::I(vd as u32), 1, class);
    }
    let k = match vd {
        2 => Kodaira::II,
        3 => Kodaira::III,
        4 => Kodaira::IV,
        6 => Kodaira::I0Star,
        8 => Kodaira::IVStar,
        9 => Kodaira::IIIStar,
        10 => Kodaira::IIStar,
        n if n > 6 => Kodaira::IStar((n - 6) as u32),
        n => unreachable!("impossible additive discriminant valuation {n}"),
    };
    data(k, 2, ReductionClass::Additive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cond(a: [i64; 5], p: u64) -> u32 {
        tate_algorithm(&WeierstrassModel::from_ints(a).unwrap(), p).conductor_exponent
    }

    #[test]
    fn examples() {
        assert_eq!(cond([0, 1, 0, -2, 0], 2), 5);
        assert_eq!(cond([0, 1, 0, -2, 0], 3), 1);
        assert_eq!(cond([0, 0, 1, 0, -7], 3), 3);
        assert_eq!(cond([0, 0, 1, 0, -7], 2), 0);
        assert_eq!(cond([0, 0, 0, -24, 48], 2), 5);
        assert_eq!(cond([0, 0, 0, -24, 48], 3), 3);
    }

    #[test]
    fn x011_is_split_i5_at_11() {
        let m = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap();
        let r = tate_algorithm(&m, 11);
        assert_eq!(r.kodaira, Kodaira::I(5));
        assert_eq!(r.reduction_class, ReductionClass::MultSplit);
        assert_eq!(tate_generic(&m, 11), r);
    }

    #[test]
    fn non_minimal_model_is_reduced() {
        // 11a1 scaled by u = 1/2 at p = 2
        let m = WeierstrassModel::from_ints([0, -1, 1, -10, -20]).unwrap();
        let big = m.transform(&crate::arith::q(1, 2), &crate::arith::qi(0), &crate::arith::qi(0), &crate::arith::qi(0));
        let r = tate_algorithm(&big, 2);
        assert_eq!(r.conductor_exponent, 0);
        assert_eq!(r.v_min_disc, 0);
        let scaled = m.transform(&crate::arith::q(1, 5), &crate::arith::qi(0), &crate::arith::qi(0), &crate::arith::qi(0));
        assert_eq!(tate_algorithm(&scaled, 5).v_min_disc, 0);
        assert_eq!(tate_generic(&scaled, 5).v_min_disc, 0);
    }
}
