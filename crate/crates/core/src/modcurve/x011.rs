//! The modular curve X0(11): its j-map, the relation F(x, j) and the 2-adic
//! kernel of reduction.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::QBiPoly;
use crate::arith::{qi, Padic, PadicPoly, QPoly, Rational};
use crate::elliptic::{formal_log, formal_w, point_add, EllPoint, WeierstrassModel};
use crate::error::{GfeError, Result};

/// `y^2 + y = x^3 - x^2 - 10x - 20`
pub const X011_AINVS: [i64; 5] = [0, -1, 1, -10, -20];

const A_COEFFS: [i64; 12] = [
    -39176677684144739,
    108160113602504237,
    74593328129816300,
    420015065507429,
    -14545268641576841,
    -1895608370650736,
    576036867160006,
    82165362766027,
    2536749758583,
    19162005343,
    21559874,
    743,
];

const B_FACTOR1: [i64; 6] = [-707351591, 271927184, 65058492, 1304157, 4518, 1];
const B_FACTOR2: [i64; 6] = [-37315543, -37789861, -3406817, 3626752, 192189, 1];

/// The quartic whose cube is the `j^0` part of F.
const F_QUARTIC: [i64; 5] = [9789217, 4971236, 1333262, -52820, 1];

/// Coefficient of `j` in F.
const F_LINEAR: [i64; 12] = [
    -104748564078368391,
    199736619430410535,
    159480622275659333,
    6839041777752481,
    -29669709666741936,
    -4074814667347831,
    1134855511654843,
    164063633585170,
    5072626276355,
    38323813979,
    43119747,
    1486,
];

/// Exact data of the j-map on X0(11).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JMapData {
    pub model: WeierstrassModel,
    /// `j (x - 16)^11 = a(x) + b(x) y`
    pub a_poly: QPoly,
    pub b_poly: QPoly,
    pub b_factors: [QPoly; 2],
    pub quartic: QPoly,
    /// `F(x, j) = quartic^3 + linear * j - (x - 16)^11 j^2`
    pub f: QBiPoly,
}

/// Which of the built-in identities failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub linear_coefficient_is_2a_minus_b: bool,
    pub norm_identity: bool,
    pub leading_j_coefficient: bool,
    pub b_is_product_of_quintics: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.linear_coefficient_is_2a_minus_b
            && self.norm_identity
            && self.leading_j_coefficient
            && self.b_is_product_of_quintics
    }
}

fn x_minus_16_pow11() -> QPoly {
    QPoly::from_i64s(&[-16, 1]).pow(11)
}

fn build() -> JMapData {
    let b_factors = [QPoly::from_i64s(&B_FACTOR1), QPoly::from_i64s(&B_FACTOR2)];
    let quartic = QPoly::from_i64s(&F_QUARTIC);
    let f = QBiPoly::new(vec![quartic.pow(3), QPoly::from_i64s(&F_LINEAR), -x_minus_16_pow11()]);
    JMapData {
        model: WeierstrassModel::from_ints(X011_AINVS).expect("X0(11) is nonsingular"),
        a_poly: QPoly::from_i64s(&A_COEFFS),
        b_poly: &b_factors[0] * &b_factors[1],
        b_factors,
        quartic,
        f,
    }
}

impl JMapData {
    /// `x^3 - x^2 - 10x - 20`, so that the curve reads `y^2 + y = cubic(x)`.
    pub fn cubic(&self) -> QPoly {
        let [_, a2, _, a4, a6] = self.model.a_invariants();
        QPoly::new(vec![a6, a4, a2, qi(1)])
    }

    /// Verify that substituting `j = (a + b y)/(x - 16)^11` into F vanishes
    /// modulo the curve.
    ///
    /// Writing `y^2 = cubic - y`, the numerator `(x-16)^11 F` becomes
    /// `U(x) + V(x) y` with `V = linear*b - (2ab - b^2)` and
    /// `U = (x-16)^11 quartic^3 + linear*a - a^2 - b^2 cubic`.
    pub fn check_identities(&self) -> IdentityReport {
        let (a, b) = (&self.a_poly, &self.b_poly);
        let linear = self.f.coeff(1);
        let v = &(&linear * b) - &(&(a * b).scale(&qi(2)) - &(b * b));
        let u = &(&(&x_minus_16_pow11() * &self.quartic.pow(3)) + &(&linear * a)) - &(&(a * a) + &(&(b * b) * &self.cubic()));
        IdentityReport {
            linear_coefficient_is_2a_minus_b: v.is_zero(),
            norm_identity: u.is_zero(),
            leading_j_coefficient: self.f.coeff(2) == -x_minus_16_pow11(),
            b_is_product_of_quintics: &self.b_factors[0] * &self.b_factors[1] == self.b_poly
                && self.b_poly.degree() == Some(10)
                && self.a_poly.degree() == Some(11),
        }
    }

    /// `j` at a rational point; `None` at the two cusps.
    ///
    /// Where both `(x-16)^11` and `a + b y` vanish, the conjugate form
    /// `j = -quartic^3 / (a + b (-1 - y))` is used.
    pub fn j_of_point(&self, p: &EllPoint<Rational>) -> Option<Rational> {
        let EllPoint::Affine(x, y) = p else { return None };
        let den = (x - qi(16)).pow(11);
        let num = self.a_poly.eval(x) + self.b_poly.eval(x) * y;
        if !den.is_zero() {
            return Some(num / den);
        }
        if !num.is_zero() {
            return None;
        }
        let conj = self.a_poly.eval(x) + self.b_poly.eval(x) * (-qi(1) - y);
        Some(-self.quartic.eval(x).pow(3) / conj)
    }

    /// Whether `(x, j)` lies on `F = 0` in `P^1 x P^1`; `None` stands for infinity.
    pub fn f_vanishes(&self, x: Option<&Rational>, j: Option<&Rational>) -> bool {
        // bidegree (12, 2); dehomogenize at the coordinate that is finite
        let dx = 12;
        let mut total = Rational::zero();
        for k in 0..=2usize {
            let fk = self.f.coeff(k);
            let jpart = match j {
                Some(j) => j.pow(k as i32),
                None if k == 2 => qi(1),
                None => continue,
            };
            let xpart = match x {
                Some(x) => fk.eval(x),
                None => fk.coeff(dx),
            };
            total += xpart * jpart;
        }
        total.is_zero()
    }
}

/// The j-map data of X0(11); the identities are checked on first use.
pub fn x011_data() -> &'static JMapData {
    static DATA: OnceLock<JMapData> = OnceLock::new();
    DATA.get_or_init(|| {
        let d = build();
        let r = d.check_identities();
        assert!(r.all(), "embedded X0(11) data inconsistent: {r:?}");
        d
    })
}

/// The five rational points of X0(11).
pub fn x011_rational_points() -> Vec<EllPoint<Rational>> {
    let mut v = vec![EllPoint::Infinity];
    for (x, y) in [(5, 5), (5, -6), (16, 60), (16, -61)] {
        v.push(EllPoint::Affine(qi(x), qi(y)));
    }
    v
}

/// `mu = ceil(nu - 1/3) - 1`: points of `K_nu` are `2^mu`-divisible multiples
/// of points of `K_{1/3}` in the log coordinate.
pub fn qconst_mu(nu: &Rational) -> Result<i64> {
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    if nu <= &third {
        return Err(GfeError::PreconditionFailed(format!("nu = {nu} must exceed 1/3")));
    }
    let m = (nu - third).ceil().to_integer() - BigInt::one();
    Ok(i64::try_from(m).expect("small"))
}

/// Threshold above which `v_2(t(P))` guarantees a 2-adic half in the kernel.
pub fn halving_threshold() -> Rational {
    Rational::new(BigInt::from(4), BigInt::from(3))
}

/// Whether a point of filtration `v_2(t) = v` passes the halving criterion.
pub fn halving_criterion(v: &Rational) -> bool {
    v > &halving_threshold()
}

const SERIES_TERMS: usize = 72;

struct FormalSeries {
    w: QPoly,
    log: QPoly,
}

fn formal_series() -> &'static FormalSeries {
    static S: OnceLock<FormalSeries> = OnceLock::new();
    S.get_or_init(|| {
        let m = &x011_data().model;
        FormalSeries { w: formal_w(m, SERIES_TERMS), log: formal_log(m, SERIES_TERMS) }
    })
}

/// A Q_2-point of X0(11) reducing to the origin, given by `t = -x/y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelPoint {
    t: Padic,
}

impl KernelPoint {
    pub fn origin() -> Self {
        KernelPoint { t: Padic::exact_zero(2) }
    }

    pub fn from_t(t: Padic) -> Result<Self> {
        if t.ell() != 2 {
            return Err(GfeError::PreconditionFailed("kernel points live over Q_2".into()));
        }
        if !t.is_exact_zero() && t.val_lower() <= 0 {
            return Err(GfeError::OutsideDomain(format!("v_2(t) must be positive, t = {t}")));
        }
        Ok(KernelPoint { t })
    }

    pub fn from_point(p: &EllPoint<Padic>) -> Result<Self> {
        match p {
            EllPoint::Infinity => Ok(Self::origin()),
            EllPoint::Affine(x, y) => Self::from_t(-x.checked_div(y)?),
        }
    }

    pub fn t(&self) -> &Padic {
        &self.t
    }

    /// `v_2(t)`, `None` at the origin.
    pub fn filtration(&self) -> Option<i64> {
        if self.t.is_exact_zero() {
            None
        } else {
            Some(self.t.val_lower())
        }
    }

    /// Affine coordinates from the formal group: `x = t/w(t)`, `y = -1/w(t)`.
    pub fn to_point(&self) -> EllPoint<Padic> {
        if self.t.is_exact_zero() {
            return EllPoint::Infinity;
        }
        let v = self.t.val_lower().max(1) as usize;
        let prec = self.t.prec() + 8;
        // truncation error of w is O(t^n); t^3 is factored out by the division below
        let n = (((prec as usize) + 3 * v) / v + 4).min(SERIES_TERMS);
        let w = PadicPoly::from_qpoly(&formal_series().w.truncate(n), 2, prec).eval(&self.t);
        let x = self.t.checked_div(&w).expect("w(t) != 0");
        let y = -w.inv().expect("w(t) != 0");
        EllPoint::Affine(x, y)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let m = &x011_data().model;
        Self::from_point(&point_add(m, &self.to_point(), &o.to_point()))
    }

    pub fn mul(&self, k: i64) -> Result<Self> {
        let m = &x011_data().model;
        Self::from_point(&crate::elliptic::point_mul(m, k, &self.to_point()))
    }
}

/// Value of the formal logarithm at a kernel point, valid on `v_2(t) > 1/3`.
///
/// Terms `c_n t^n` have `v_2(c_n) >= -log_2(n)`, so the series is cut once
/// `n v(t) - log_2 n` passes the requested precision.
pub fn elliptic_log_2adic(p: &KernelPoint, prec: u32) -> Result<Padic> {
    if p.t.is_exact_zero() {
        return Ok(Padic::exact_zero(2));
    }
    let v = p.t.val_lower();
    // only integral valuations occur over Q_2, so v > 1/3 means v >= 1
    if v < 1 {
        return Err(GfeError::OutsideDomain(format!("v_2(t) = {v} is not above 1/3")));
    }
    let mut n = 2usize;
    while (n as i64) * v - (64 - (n as u64).leading_zeros() as i64) <= prec as i64 + v {
        n += 1;
    }
    if n > SERIES_TERMS {
        return Err(GfeError::InsufficientPrecision(format!("log needs {n} terms, {SERIES_TERMS} cached")));
    }
    let log = PadicPoly::from_qpoly(&formal_series().log.truncate(n), 2, prec + 16);
    Ok(log.eval(&p.t.lift_to(prec + 16)).truncate_abs(prec as i64 + v))
}

/// Sufficient test for `P` being twice a point of the kernel; a `true` answer
/// is confirmed by constructing the half.
pub fn divisible_by_2_in_kernel(p: &KernelPoint) -> bool {
    halve_kernel_point(p).is_some()
}

/// A point `Q` with `2Q = P`, found by the contraction `s <- s - ([2]s - t)/2`.
///
/// `[2](s) = 2s + 2s^3 - 7s^4 + ...` on X0(11), so each step gains at least
/// two digits once `v(s) >= 1`.
pub fn halve_kernel_point(p: &KernelPoint) -> Option<KernelPoint> {
    let Some(v) = p.filtration() else { return Some(KernelPoint::origin()) };
    if !halving_criterion(&qi(v)) {
        return None;
    }
    let prec = p.t.prec();
    let target = &p.t;
    let two = Padic::from_i64(2, 2, prec + 40);
    let mut s = target.checked_div(&two).ok()?.lift_to(prec + 8);
    for _ in 0..(prec as usize + 16) {
        let q = KernelPoint::from_t(s.clone()).ok()?;
        let d = q.mul(2).ok()?;
        let diff = d.t.sub_ref(target);
        if diff.is_zero_at_prec() || diff.val_lower() >= target.abs_prec().unwrap_or(0) {
            break;
        }
        s = s.sub_ref(&diff.checked_div(&two).ok()?).lift_to(prec + 8);
    }
    let q = KernelPoint::from_t(s).ok()?;
    let check = q.mul(2).ok()?.t.sub_ref(target);
    let want = target.abs_prec().unwrap_or(0) - 2;
    (check.val_lower() >= want).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::elliptic::{formal_log_coeffs, reference_curve};

    #[test]
    fn identities_hold() {
        assert!(x011_data().check_identities().all());
        assert_eq!(x011_data().f.coeff(2), -x_minus_16_pow11());
    }

    #[test]
    fn corrupted_data_is_detected() {
        let mut d = build();
        d.a_poly = &d.a_poly + &QPoly::from_i64s(&[1]);
        let r = d.check_identities();
        assert!(!r.norm_identity && !r.linear_coefficient_is_2a_minus_b);
        let mut d = build();
        d.b_factors[1] = QPoly::from_i64s(&[-37315543, -37789861, -3406817, 3626752, 192189, 2]);
        assert!(!d.check_identities().all());
    }

    #[test]
    fn rational_points_and_their_j() {
        let d = x011_data();
        let pts = x011_rational_points();
        assert!(pts.iter().all(|p| p.on(&d.model)));
        let js: Vec<Option<Rational>> = pts.iter().map(|p| d.j_of_point(p)).collect();
        // the CM point and the two other 121-curves, computed from their own models
        let j121: Vec<Rational> =
            ["121a1", "121b1", "121c1"].iter().map(|l| reference_curve(l).unwrap().model.j_invariant()).collect();
        assert_eq!(js[0], None);
        assert_eq!(js[3], None);
        for j in [&js[1], &js[2], &js[4]] {
            assert!(j121.contains(j.as_ref().unwrap()), "{j:?}");
        }
        assert_eq!(js[2], Some(qi(-32768)));
        for (p, j) in pts.iter().zip(&js) {
            let x = match p {
                EllPoint::Affine(x, _) => Some(x),
                EllPoint::Infinity => None,
            };
            assert!(d.f_vanishes(x, j.as_ref()), "{p:?}");
        }
        assert!(!d.f_vanishes(Some(&qi(5)), Some(&qi(1))));
    }

    #[test]
    fn f_roots_are_j_and_its_conjugate() {
        // over x the two y-values give j and j'; F(x, .) must have them as roots
        let d = x011_data();
        for x in [q(1, 3), qi(7), qi(-4), q(22, 5)] {
            let c = d.cubic().eval(&x);
            let (a, b) = (d.a_poly.eval(&x), d.b_poly.eval(&x));
            let den = (&x - qi(16)).pow(11);
            // sum and product of j and its conjugate: y + y' = -1, y y' = -c
            let sum = (qi(2) * &a - &b) / &den;
            let prod = (&a * &a - &a * &b - &b * &b * &c) / (&den * &den);
            let f = &d.f;
            assert_eq!(-f.coeff(1).eval(&x) / f.coeff(2).eval(&x), sum);
            assert_eq!(f.coeff(0).eval(&x) / f.coeff(2).eval(&x), prod);
        }
    }

    #[test]
    fn mu_values() {
        assert_eq!(qconst_mu(&qi(2)).unwrap(), 1);
        assert_eq!(qconst_mu(&qi(3)).unwrap(), 2);
        assert_eq!(qconst_mu(&q(5, 11)).unwrap(), 0);
        assert!(qconst_mu(&q(1, 3)).is_err());
    }

    #[test]
    fn log_series_matches_formal_log() {
        let want = [qi(0), qi(1), qi(0), q(-1, 3), q(1, 2), q(-19, 5), qi(-1), q(5, 7), q(-27, 2)];
        assert_eq!(formal_log_coeffs(&x011_data().model, 9), want);
    }

    fn kp(n: i64, prec: u32) -> KernelPoint {
        KernelPoint::from_t(Padic::from_i64(n, 2, prec)).unwrap()
    }

    #[test]
    fn log_valuation_and_doubling() {
        let p = kp(4 * 3, 60);
        let l = elliptic_log_2adic(&p, 50).unwrap();
        assert_eq!(l.valuation().unwrap(), Some(2));
        let p2 = p.mul(2).unwrap();
        assert_eq!(p2.filtration(), Some(3));
        let l2 = elliptic_log_2adic(&p2, 50).unwrap();
        let diff = l2.sub_ref(&l.scale_int(2));
        assert!(diff.val_lower() >= 45, "{diff}");
        assert!(elliptic_log_2adic(&KernelPoint::origin(), 50).unwrap().is_exact_zero());
    }

    #[test]
    fn outside_domain() {
        assert!(matches!(KernelPoint::from_t(Padic::from_i64(3, 2, 20)), Err(GfeError::OutsideDomain(_))));
        let x = Padic::from_i64(5, 2, 30);
        let y = Padic::from_i64(5, 2, 30);
        assert!(KernelPoint::from_point(&EllPoint::Affine(x, y)).is_err());
    }

    #[test]
    fn halving() {
        assert!(!halving_criterion(&q(1, 2)));
        assert!(!halving_criterion(&q(4, 3)));
        assert!(halving_criterion(&qi(2)));
        let p = kp(4 * 5, 50);
        let h = halve_kernel_point(&p).expect("v = 2 is divisible");
        let back = h.mul(2).unwrap();
        assert!(back.t().sub_ref(p.t()).val_lower() >= 45);
        assert!(!divisible_by_2_in_kernel(&kp(2, 50)));
        let q1 = kp(6, 50);
        assert!(divisible_by_2_in_kernel(&q1.mul(2).unwrap()));
    }
}
