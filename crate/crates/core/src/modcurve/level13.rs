//! Level 13: the genus-2 twists of X1(13) with local points everywhere
//! relevant, their local solubility, the j-map on X0(13) and the cyclic
//! cubic cover X1(13) -> X0(13).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{padic_roots, pow_mod_u64, qi, split_int, val_rat, Poly, QPoly, Rational};
use crate::error::{GfeError, Result};

/// A row of the table of twists `d y^2 = ...`, `gamma = delta / conj(delta)`,
/// given as `y^2 = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRow {
    pub index: usize,
    pub d: i64,
    /// `delta` in `Q(w)`, `w` a primitive cube root of unity
    pub delta: &'static str,
    /// ascending coefficients of the sextic
    pub f: [i64; 7],
}

pub const TWISTS_13: [TwistRow; 8] = [
    TwistRow { index: 1, d: 1, delta: "1", f: [1, -4, 6, -2, 1, -2, 1] },
    TwistRow { index: 2, d: 2, delta: "w", f: [16, 72, 138, 76, 18, 24, 16] },
    TwistRow { index: 3, d: 2, delta: "w + 4", f: [208, -936, 1794, -988, 234, -312, 208] },
    TwistRow { index: 4, d: 2, delta: "-3w - 4", f: [16, -72, 226, -252, 106, -24, 16] },
    TwistRow { index: 5, d: 13, delta: "3w - 1", f: [1, 4, 6, 2, 1, 2, 1] },
    TwistRow { index: 6, d: 26, delta: "w + 4", f: [16, -72, 138, -76, 18, -24, 16] },
    TwistRow { index: 7, d: 26, delta: "w", f: [208, 936, 1794, 988, 234, 312, 208] },
    TwistRow { index: 8, d: 26, delta: "-3w - 4", f: [16, -72, 226, -252, 106, -24, 16] },
];

impl TwistRow {
    pub fn poly(&self) -> Poly<BigInt> {
        Poly::new(self.f.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Rows 5..8 are models of the same curves as rows 1..4: rows 5-7 by `x -> -x`,
/// row 8 coincides with row 4.
pub fn twist_rows_pair_up() -> bool {
    let flip = |f: &[i64; 7]| {
        let mut g = *f;
        for (i, c) in g.iter_mut().enumerate() {
            if i % 2 == 1 {
                *c = -*c;
            }
        }
        g
    };
    (0..3).all(|i| flip(&TWISTS_13[i].f) == TWISTS_13[i + 4].f) && TWISTS_13[3].f == TWISTS_13[7].f
}

fn is_square_ql(n: &BigInt, ell: u64) -> bool {
    if n.is_zero() {
        return true;
    }
    let (v, u) = split_int(n, ell);
    if v % 2 != 0 {
        return false;
    }
    if ell == 2 {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        let r = u.mod_floor(&BigInt::from(ell)).to_u64_digits().1.first().copied().unwrap_or(0);
        pow_mod_u64(r, (ell - 1) / 2, ell) == 1
    }
}

fn val_big(n: &BigInt, ell: u64) -> Option<i64> {
    (!n.is_zero()).then(|| split_int(n, ell).0)
}

fn to_q(f: &Poly<BigInt>) -> QPoly {
    QPoly::new(f.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Integer multiple of `f` by a square, clearing denominators.
fn integral_square_multiple(f: &QPoly) -> Poly<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let sq = Rational::from_integer(&den * &den);
    Poly::new(f.coeffs().iter().map(|c| (c * &sq).to_integer()).collect())
}

/// `f = c * prod f_i^i` with monic squarefree pairwise coprime `f_i` (Yun).
fn squarefree_decomposition(f: &QPoly) -> Vec<QPoly> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &nb.derivative();
        out.push(a.monic());
        b = nb;
    }
    out
}

/// `z^(2 ceil(deg/2)) f(1/z)`.
fn reversed_even(f: &Poly<BigInt>) -> Poly<BigInt> {
    let n = f.degree().unwrap_or(0);
    let d = n + n % 2;
    Poly::new((0..=d).map(|i| f.coeff(d - i)).collect())
}

/// Statistics from the residue-disk search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolubilityReport {
    pub soluble: bool,
    /// `v_l` of the discriminant of the squarefree part searched
    pub disc_valuation: Option<i64>,
    /// deepest subdivision level visited
    pub max_depth: u32,
    pub disks_visited: u64,
    /// how the answer was reached
    pub reason: String,
}

struct Search {
    ell: u64,
    max_depth: u32,
    visited: u64,
}

const DEPTH_CAP: u32 = 400;

impl Search {
    /// Is `y^2 = h(t)` soluble with `t in Z_l`?  `h` squarefree over Q.
    /// `h(t) = l^(-2 removed) g(a + l^shift t)`.
    fn disk(&mut self, mut h: Poly<BigInt>, depth: u32, shift: u32, mut removed: u32) -> Option<&'static str> {
        self.visited += 1;
        self.max_depth = self.max_depth.max(depth);
        let ell = self.ell;
        let l2 = BigInt::from(ell * ell);
        while h.coeffs().iter().all(|c| c.is_multiple_of(&l2)) {
            h = h.map(|c| c / &l2);
            removed += 1;
        }
        let h0 = h.coeff(0);
        if h0.is_zero() {
            return Some("root of f");
        }
        let v0 = val_big(&h0, ell).unwrap();
        let vr = h.coeffs().iter().skip(1).filter_map(|c| val_big(c, ell)).min();
        let margin = if ell == 2 { 3 } else { 1 };
        match vr {
            None => return is_square_ql(&h0, ell).then_some("constant square class"),
            Some(vr) if vr >= v0 + margin => return is_square_ql(&h0, ell).then_some("constant square class"),
            Some(vr) if vr > v0 && v0 % 2 != 0 => return None,
            Some(vr) if ell == 2 && vr == v0 + 2 => {
                // unit part is u0 + 4 t (sum of c_i) mod 8 with c_i = h_i / 2^(v0 + 2)
                let u0 = (&h0 >> v0 as usize).mod_floor(&BigInt::from(8));
                let m = BigInt::from(2).pow(v0 as u32 + 2);
                let odd = h.coeffs().iter().skip(1).fold(BigInt::zero(), |acc, c| acc + c / &m).is_odd();
                let hit = u0 == BigInt::one() || (u0 == BigInt::from(5) && odd);
                return hit.then_some("square class mod 8");
            }
            _ => {}
        }
        // v(g(a)) > 2 v(g'(a)): a root of g near a is a point wherever it lies
        if let Some(v1) = val_big(&h.coeff(1), ell) {
            if v0 + 2 * shift as i64 > 2 * v1 + 2 * removed as i64 {
                return Some("Hensel root");
            }
        }
        if depth >= DEPTH_CAP {
            panic!("residue-disk search exceeded depth {DEPTH_CAP}");
        }
        let l = BigInt::from(ell);
        for b in 0..ell {
            let sub = Poly::new(vec![BigInt::from(b), l.clone()]);
            if let Some(r) = self.disk(h.compose(&sub), depth + 1, shift + 1, removed) {
                return Some(r);
            }
        }
        None
    }
}

/// Whether `y^2 = f(x)` has a point over Q_l, including the points at infinity
/// of the smooth model (there when the coefficient of `x^(2 ceil(deg/2))` is a
/// square in Q_l).
pub fn local_solubility_report(f: &Poly<BigInt>, ell: u64) -> SolubilityReport {
    let mut rep = SolubilityReport::default();
    let n = match f.degree() {
        None => {
            rep.soluble = true;
            rep.reason = "f = 0".into();
            return rep;
        }
        Some(n) => n,
    };
    let top = if n % 2 == 0 { f.coeff(n) } else { BigInt::zero() };
    if is_square_ql(&top, ell) {
        rep.soluble = true;
        rep.reason = "point at infinity".into();
        return rep;
    }
    // f = c * s^2 * r with r squarefree; points with s(x) = 0 need a root of s
    let fq = to_q(f);
    let parts = squarefree_decomposition(&fq);
    let mut s = QPoly::one();
    let mut r = QPoly::constant(fq.lead());
    for (i, p) in parts.iter().enumerate() {
        let mult = i + 1;
        s = &s * &p.pow((mult / 2) as u32);
        if mult % 2 == 1 {
            r = &r * p;
        }
    }
    if s.degree().unwrap_or(0) > 0 && !padic_roots(&s, ell, 20).is_empty() {
        rep.soluble = true;
        rep.reason = "rational root of a repeated factor".into();
        return rep;
    }
    let r = integral_square_multiple(&r);
    rep.disc_valuation = discriminant(&to_q(&r)).and_then(|d| val_rat(&d, ell));
    let mut search = Search { ell, max_depth: 0, visited: 0 };
    let affine = search.disk(r.clone(), 0, 0, 0);
    let found = affine.or_else(|| {
        let l = BigInt::from(ell);
        let rev = reversed_even(&r).compose(&Poly::new(vec![BigInt::zero(), l]));
        search.disk(rev, 1, 1, 0)
    });
    rep.soluble = found.is_some();
    rep.reason = found.unwrap_or("no residue disk carries a point").into();
    rep.max_depth = search.max_depth;
    rep.disks_visited = search.visited;
    rep
}

pub fn local_solubility(f: &Poly<BigInt>, ell: u64) -> bool {
    local_solubility_report(f, ell).soluble
}

/// Resultant over Q by the Euclidean algorithm.
pub fn resultant(f: &QPoly, g: &QPoly) -> Rational {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    if dg == 0 {
        return g.lead().pow(df as i32);
    }
    let r = f.div_rem(g).1;
    let Some(dr) = r.degree() else {
        return Rational::zero();
    };
    let sign = if df * dg % 2 == 1 { -qi(1) } else { qi(1) };
    sign * g.lead().pow((df - dr) as i32) * resultant(g, &r)
}

/// Discriminant, `None` for constants.
pub fn discriminant(f: &QPoly) -> Option<Rational> {
    let n = f.degree().filter(|&n| n > 0)?;
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -qi(1) } else { qi(1) };
    Some(sign * resultant(f, &f.derivative()) / f.lead())
}

/// Modular square test: is `a` a square modulo `ell^j`?  Returns the roots.
fn sqrt_lifts(ys: &[i128], a: i128, ell: i128, modulus: i128, prev: i128) -> Vec<i128> {
    // ys are square roots of a modulo prev; extend each by one digit
    let mut out = Vec::new();
    for &y in ys {
        for b in 0..ell {
            let y2 = y + b * prev;
            if (y2 * y2 - a).rem_euclid(modulus) == 0 {
                out.push(y2);
            }
        }
    }
    out
}

fn eval_mod(f: &[i128], x: i128, m: i128) -> i128 {
    f.iter().rev().fold(0i128, |acc, c| (acc * x + c).rem_euclid(m))
}

fn val_capped(n: i128, ell: i128, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut n = n;
    let mut v = 0;
    while n % ell == 0 && v < cap {
        n /= ell;
        v += 1;
    }
    v
}

/// Search for a pair `(x, y)` modulo `ell^k` with `y^2 = f(x)` that satisfies
/// the Hensel condition `k > 2 min(v(2y), v(f'(x)))`, extending digit by digit.
fn modular_scan(f: &[i128], ell: i128, k: u32, start: u32) -> bool {
    let df: Vec<i128> = f.iter().enumerate().skip(1).map(|(i, c)| c * i as i128).collect();
    // nodes: (x mod ell^j, roots y mod ell^j of f(x))
    let mut level: Vec<(i128, Vec<i128>)> = vec![(0, vec![0])];
    let mut m: i128 = 1;
    for j in 1..=k {
        let prev = m;
        m *= ell;
        let mut next = Vec::new();
        for (x, ys) in &level {
            let digits = if j <= start { 1 } else { ell };
            for a in 0..digits {
                let x2 = x + a * prev;
                let fx = eval_mod(f, x2, m);
                let mut y2s = sqrt_lifts(ys, fx, ell, m, prev);
                y2s.sort();
                y2s.dedup();
                if y2s.is_empty() {
                    continue;
                }
                let vd = val_capped(eval_mod(&df, x2, m), ell, j);
                for &y in &y2s {
                    let vy = val_capped((2 * y).rem_euclid(m), ell, j);
                    if j > 2 * vd.min(vy) {
                        return true;
                    }
                }
                next.push((x2, y2s));
            }
        }
        if next.is_empty() {
            return false;
        }
        level = next;
    }
    false
}

/// Finite-modulus oracle for [`local_solubility`] on squarefree `f`: scan
/// `x, y` modulo `ell^k` with `k = v_l(disc f) + 3` in both affine charts for a
/// Hensel-liftable solution.
pub fn local_solubility_bruteforce(f: &Poly<BigInt>, ell: u64) -> Result<bool> {
    let fq = to_q(f);
    let disc = discriminant(&fq).ok_or_else(|| GfeError::PreconditionFailed("constant polynomial".into()))?;
    let vd = val_rat(&disc, ell).ok_or_else(|| GfeError::PreconditionFailed("f is not squarefree".into()))?;
    let k = (vd + 3) as u32;
    // residues are multiplied in i128
    if (ell as f64).powi(k as i32) > 2f64.powi(62) {
        return Err(GfeError::BruteForceBoundExceeded(ell));
    }
    let to_i = |p: &Poly<BigInt>| -> Result<Vec<i128>> {
        p.coeffs()
            .iter()
            .map(|c| i128::try_from(c).map_err(|_| GfeError::PreconditionFailed("coefficient too large".into())))
            .collect()
    };
    let l = ell as i128;
    if modular_scan(&to_i(f)?, l, k, 0) {
        return Ok(true);
    }
    // z = 1/x in ell Z_l, including z = 0 for the points at infinity
    Ok(modular_scan(&to_i(&reversed_even(f))?, l, k, 1))
}

/// `j = (v^2 + 3v + 9)(v^4 + 3v^3 + 5v^2 - 4v - 4)^3 / (v - 1)` on X0(13);
/// `None` is infinity.
pub fn x013_jmap(v: Option<&Rational>) -> Option<Rational> {
    let v = v?;
    if *v == qi(1) {
        return None;
    }
    let quad = QPoly::from_i64s(&[9, 3, 1]).eval(v);
    let quart = QPoly::from_i64s(&[-4, -4, 5, 3, 1]).eval(v);
    Some(quad * quart.pow(3) / (v - qi(1)))
}

/// Element `a + b w` of Q(w), `w^2 + w + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qw {
    pub a: Rational,
    pub b: Rational,
}

impl Qw {
    pub fn new(a: Rational, b: Rational) -> Self {
        Qw { a, b }
    }
    pub fn rat(a: i64) -> Self {
        Qw::new(qi(a), qi(0))
    }
    pub fn w() -> Self {
        Qw::new(qi(0), qi(1))
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn conj(&self) -> Self {
        // w -> w^2 = -1 - w
        Qw::new(&self.a - &self.b, -self.b.clone())
    }
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(GfeError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Qw::new(c.a / &n, c.b / &n))
    }
}

impl Add for &Qw {
    type Output = Qw;
    fn add(self, o: &Qw) -> Qw {
        Qw::new(&self.a + &o.a, &self.b + &o.b)
    }
}
impl Sub for &Qw {
    type Output = Qw;
    fn sub(self, o: &Qw) -> Qw {
        Qw::new(&self.a - &o.a, &self.b - &o.b)
    }
}
impl Neg for &Qw {
    type Output = Qw;
    fn neg(self) -> Qw {
        Qw::new(-self.a.clone(), -self.b.clone())
    }
}
impl Mul for &Qw {
    type Output = Qw;
    fn mul(self, o: &Qw) -> Qw {
        // (a + bw)(c + dw) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
        let bd = &self.b * &o.b;
        Qw::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}

/// Polynomials in `z` with coefficients in `Q(w)[v]`: `c[i][j]` multiplies `z^i v^j`.
#[derive(Clone, Debug, PartialEq)]
struct ZvPoly {
    c: Vec<Vec<Qw>>,
}

impl ZvPoly {
    fn from_terms(terms: &[(usize, usize, Qw)]) -> Self {
        let mut p = ZvPoly { c: Vec::new() };
        for (i, j, x) in terms {
            p.add_term(*i, *j, x);
        }
        p
    }

    fn add_term(&mut self, i: usize, j: usize, x: &Qw) {
        if self.c.len() <= i {
            self.c.resize(i + 1, Vec::new());
        }
        if self.c[i].len() <= j {
            self.c[i].resize(j + 1, Qw::rat(0));
        }
        self.c[i][j] = &self.c[i][j] + x;
    }

    fn mul(&self, o: &Self) -> Self {
        let mut p = ZvPoly { c: Vec::new() };
        for (i1, r1) in self.c.iter().enumerate() {
            for (j1, x) in r1.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (i2, r2) in o.c.iter().enumerate() {
                    for (j2, y) in r2.iter().enumerate() {
                        if !y.is_zero() {
                            p.add_term(i1 + i2, j1 + j2, &(x * y));
                        }
                    }
                }
            }
        }
        p
    }

    fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (i, r) in o.c.iter().enumerate() {
            for (j, y) in r.iter().enumerate() {
                p.add_term(i, j, &-y);
            }
        }
        p
    }

    /// Remainder modulo a monic polynomial in `z` of degree 3.
    fn reduce_cubic(&self, m: &Self) -> Self {
        let mut p = self.clone();
        for i in (3..p.c.len()).rev() {
            let row = std::mem::take(&mut p.c[i]);
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                // z^3 = m(z) with deg m < 3
                for k in 0..3 {
                    for (jj, y) in m.c.get(k).into_iter().flatten().enumerate() {
                        p.add_term(i - 3 + k, j + jj, &(x * y));
                    }
                }
            }
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Qw::is_zero)
    }
}

/// `z^3 - v z^2 - (v + 3) z - 1`, ascending in `z` and `v`.
pub const X113_CUBIC: [[i64; 2]; 4] = [[-1, 0], [-3, -1], [0, -1], [1, 0]];

/// Does `(z - w)^3 (v - 3w^2) - (z - w^2)^3 (v - 3w)` vanish modulo the cubic?
pub fn cyclic_identity_holds(cubic: &[[i64; 2]; 4]) -> bool {
    let w = Qw::w();
    let w2 = &w * &w;
    let lin = |r: &Qw| ZvPoly::from_terms(&[(1, 0, Qw::rat(1)), (0, 0, -r)]);
    let vm = |r: &Qw| ZvPoly::from_terms(&[(0, 1, Qw::rat(1)), (0, 0, &Qw::rat(-3) * r)]);
    let cube = |p: &ZvPoly| p.mul(p).mul(p);
    let lhs = cube(&lin(&w)).mul(&vm(&w2)).sub(&cube(&lin(&w2)).mul(&vm(&w)));
    let lead = Qw::rat(cubic[3][0]);
    if lead != Qw::rat(1) || cubic[3][1] != 0 {
        return false;
    }
    // z^3 = -(c0 + c1 z + c2 z^2)
    let mut m = ZvPoly { c: Vec::new() };
    for (i, row) in cubic.iter().take(3).enumerate() {
        for (j, &c) in row.iter().enumerate() {
            m.add_term(i, j, &Qw::rat(-c));
        }
    }
    lhs.reduce_cubic(&m).is_zero()
}

/// `(v - 3w)/(v - 3w^2)`, the cube of `(z - w)/(z - w^2)` on X1(13); undefined at
/// the branch values `v = 3w, 3w^2`.
pub fn cyclic_cover_value(v: &Qw) -> Result<Qw> {
    let w = Qw::w();
    let w2 = &w * &w;
    let num = v - &(&Qw::rat(3) * &w);
    let den = v - &(&Qw::rat(3) * &w2);
    if num.is_zero() || den.is_zero() {
        return Err(GfeError::OutsideDomain("branch value of the cyclic cover".into()));
    }
    Ok(&num * &den.inv()?)
}

/// Fixed-point complex numbers scaled by `10^DIGITS`.
const DIGITS: u32 = 70;

#[derive(Clone, Debug)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

fn scale() -> BigInt {
    num_traits::pow(BigInt::from(10), DIGITS as usize)
}

impl Cx {
    fn mul(&self, o: &Cx) -> Cx {
        let s = scale();
        Cx { re: (&self.re * &o.re - &self.im * &o.im) / &s, im: (&self.re * &o.im + &self.im * &o.re) / &s }
    }
    fn div(&self, o: &Cx) -> Cx {
        let s = scale();
        let n = (&o.re * &o.re + &o.im * &o.im) / &s;
        let c = Cx { re: o.re.clone(), im: -o.im.clone() };
        let p = self.mul(&c);
        Cx { re: &p.re * &s / &n, im: &p.im * &s / &n }
    }
    fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

/// Numeric check at `v = 0` with `z` the real roots of `z^3 - 3z - 1`:
/// returns the number of decimal digits to which `((z - w)/(z - w^2))^3 = w^2`.
fn numeric_check_v0() -> u32 {
    let s = scale();
    let sqrt3 = (BigInt::from(3) * &s * &s).sqrt();
    let half = |x: BigInt| x / 2;
    let w = Cx { re: half(-s.clone()), im: half(sqrt3.clone()) };
    let w2 = Cx { re: half(-s.clone()), im: half(-sqrt3) };
    // z^3 - 3z - 1 has roots near 1.88, -0.35, -1.53
    let mut worst = DIGITS;
    for start in [19i64, -3, -15] {
        let mut z = BigInt::from(start) * &s / 10;
        for _ in 0..200 {
            let f = (&z * &z / &s) * &z / &s - BigInt::from(3) * &z - &s;
            let df = BigInt::from(3) * (&z * &z / &s) - BigInt::from(3) * &s;
            let step: BigInt = f * &s / df;
            if step.is_zero() {
                break;
            }
            z -= step;
        }
        let zc = Cx { re: z, im: BigInt::zero() };
        let ratio = zc.sub(&w).div(&zc.sub(&w2));
        let cube = ratio.mul(&ratio).mul(&ratio);
        let err = cube.sub(&w2);
        let e = err.re.abs().max(err.im.abs());
        let digits = if e.is_zero() { DIGITS } else { DIGITS - e.to_string().len() as u32 };
        worst = worst.min(digits);
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X113Report {
    /// the cyclic-cover identity holds modulo the cubic over Q(w)[v]
    pub identity_holds: bool,
    /// a corrupted cubic is rejected
    pub corrupted_rejected: bool,
    /// decimal digits of agreement in the numeric check at `v = 0`
    pub numeric_digits: u32,
    /// both branch values are excluded from the domain
    pub branch_values_excluded: bool,
}

impl X113Report {
    pub fn all(&self) -> bool {
        self.identity_holds && self.corrupted_rejected && self.numeric_digits >= 50 && self.branch_values_excluded
    }
}

pub fn x113_model_check() -> X113Report {
    let mut bad = X113_CUBIC;
    bad[1][0] = -2;
    let w = Qw::w();
    let w2 = &w * &w;
    X113Report {
        identity_holds: cyclic_identity_holds(&X113_CUBIC),
        corrupted_rejected: !cyclic_identity_holds(&bad),
        numeric_digits: numeric_check_v0(),
        branch_values_excluded: cyclic_cover_value(&(&Qw::rat(3) * &w)).is_err()
            && cyclic_cover_value(&(&Qw::rat(3) * &w2)).is_err(),
    }
}
