//! Fibres of the j-map of X0(11) over 2-adic disks of the j-line.
//!
//! Over a disk `j = center + 2^k t` (or `base + scale t^2`) the x-coordinates
//! of the fibre move as power series in `t`.  The branch criterion bounds their
//! displacement.  Fibre roots usually generate ramified extensions of Q_2, so
//! the bound is computed in the etale algebra `Q[x]/(q)` for the squarefree
//! fibre polynomial `q`: the valuations of an element at all roots of `q` are
//! read off the Newton polygon of its characteristic polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::{PadicBiPoly, QBiPoly};
use super::branch::{branch_series, BranchReport, HypothesisCheck};
use super::x011::x011_data;
use crate::arith::{padic_roots, qbig, qi, squarefree_part, NewtonPolygon, Padic, QPoly, Rational};
use crate::error::{GfeError, Result};
use crate::frey::JDisk;

/// `j = center + lambda s` with `s = t^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct DiskParam {
    center: Rational,
    lambda: Rational,
    e: usize,
}

fn disk_param(d: &JDisk) -> Result<DiskParam> {
    match d {
        JDisk::CenterModulus { center, ell: 2, k } => {
            Ok(DiskParam { center: center.clone(), lambda: crate::arith::rat_pow(2, *k as i64), e: 1 })
        }
        JDisk::QuadraticFamily { base, scale, ell: 2 } => Ok(DiskParam { center: base.clone(), lambda: scale.clone(), e: 2 }),
        _ => Err(GfeError::PreconditionFailed(format!("{d} is not a 2-adic disk with a finite centre"))),
    }
}

fn binom(n: usize, k: usize) -> Rational {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    qbig(r)
}

/// Coefficient of `y^m` in `p(x + y)`, as a polynomial in `x`.
fn taylor(p: &QPoly, m: usize) -> QPoly {
    let cs = p.coeffs();
    if cs.len() <= m {
        return QPoly::zero();
    }
    QPoly::new((m..cs.len()).map(|i| &cs[i] * binom(i, m)).collect())
}

/// `G(s, y) = F(x + y, center + lambda s)` with coefficients in `Q[x]`:
/// `g[m][l]` multiplies `s^l y^m`.
fn shifted_relation(f: &QBiPoly, p: &DiskParam) -> Vec<Vec<QPoly>> {
    let dy = f.coeffs().iter().map(|c| c.degree().unwrap_or(0)).max().unwrap_or(0);
    let dj = f.degree_y();
    let mut g = vec![vec![QPoly::zero(); dj + 1]; dy + 1];
    for k in 0..=dj {
        let fk = f.coeff(k);
        for (m, row) in g.iter_mut().enumerate() {
            let t = taylor(&fk, m);
            if t.is_zero() {
                continue;
            }
            for (l, slot) in row.iter_mut().enumerate().take(k + 1) {
                let c = binom(k, l) * p.center.pow((k - l) as i32) * p.lambda.pow(l as i32);
                *slot = &*slot + &t.scale(&c);
            }
        }
    }
    g
}

/// Arithmetic in `Q[x]/(q)` for a monic squarefree `q`.
struct Etale {
    q: QPoly,
    n: usize,
    /// `sum of alpha^i` over the roots, for `i < n`
    power_sums: Vec<Rational>,
}

impl Etale {
    fn new(q: QPoly) -> Self {
        let n = q.degree().expect("nonconstant");
        // Newton's identities for a monic polynomial
        let c = |i: usize| q.coeff(n - i);
        let mut s = vec![qi(n as i64)];
        for k in 1..n {
            let mut acc = -(qi(k as i64) * c(k));
            for i in 1..k {
                acc -= c(i) * &s[k - i];
            }
            s.push(acc);
        }
        Etale { q, n, power_sums: s }
    }

    fn reduce(&self, h: &QPoly) -> QPoly {
        h.div_rem(&self.q).1
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&(a * b))
    }

    /// Inverse modulo `q`, when `gcd(h, q) = 1`.
    fn inv(&self, h: &QPoly) -> Option<QPoly> {
        let (mut r0, mut r1) = (self.q.clone(), self.reduce(h));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1);
            let s2 = &s0 - &(&quo * &s1);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(self.reduce(&s0.scale(&(qi(1) / r0.coeff(0)))))
    }

    fn trace(&self, h: &QPoly) -> Rational {
        h.coeffs().iter().zip(&self.power_sums).map(|(a, s)| a * s).sum()
    }

    /// Characteristic polynomial of multiplication by `h`, `prod (z - h(alpha))`.
    fn charpoly(&self, h: &QPoly) -> QPoly {
        let h = self.reduce(h);
        let mut p = Vec::with_capacity(self.n);
        let mut hk = QPoly::one();
        for _ in 0..self.n {
            hk = self.mul(&hk, &h);
            p.push(self.trace(&hk));
        }
        let mut e = vec![qi(1)];
        for k in 1..=self.n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let term = &e[k - i] * &p[i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / qi(k as i64));
        }
        // z^n - e1 z^(n-1) + e2 z^(n-2) - ...
        let coeffs: Vec<Rational> =
            (0..=self.n).map(|i| if (self.n - i) % 2 == 0 { e[self.n - i].clone() } else { -e[self.n - i].clone() }).collect();
        QPoly::new(coeffs)
    }

    fn valuations(&self, h: &QPoly, ell: u64) -> RootValuations {
        let h = self.reduce(h);
        if h.is_zero() {
            return RootValuations { finite: Vec::new(), zeros: self.n };
        }
        let np: NewtonPolygon = self.charpoly(&h).newton_polygon(ell);
        RootValuations { finite: np.root_valuations(), zeros: np.zero_roots }
    }
}

/// Valuations of an element of the etale algebra at each root.
#[derive(Clone, Debug)]
struct RootValuations {
    finite: Vec<Rational>,
    /// roots where the element vanishes
    zeros: usize,
}

impl RootValuations {
    /// Smallest valuation; `None` means +infinity at every root.
    fn min(&self) -> Option<Rational> {
        self.finite.iter().min().cloned()
    }

    /// Largest valuation; `None` means +infinity at some root.
    fn max(&self) -> Option<Rational> {
        if self.zeros > 0 {
            None
        } else {
            self.finite.iter().max().cloned()
        }
    }
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (x, None) | (None, x) => x,
    }
}

fn gt_opt(a: &Option<Rational>, b: &Rational) -> bool {
    a.as_ref().map_or(true, |a| a > b)
}

/// Result of [`disk_slope_analysis`], uniform over all fibre roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskSlopeReport {
    pub disk: JDisk,
    pub e: usize,
    /// Number of distinct fibre roots over the centre.
    pub fibre_roots: usize,
    pub rho: Rational,
    pub hypotheses: Vec<HypothesisCheck>,
    /// `v_2(phi_0(tau)) >= lower_bound` for every root and every `tau` with `v(tau) >= rho`.
    pub lower_bound: Rational,
    /// Range of `nu` in `v(phi_0(tau)) = nu + v(tau)`, when the slope law holds at every root.
    pub slope_range: Option<(Rational, Rational)>,
    /// `2 + v_2(x0 - theta)` where `theta` is a 2-torsion x-coordinate.
    pub threshold: Rational,
    pub exceeds_threshold: bool,
    /// Number of roots lying in Q_2.
    pub rational_roots: usize,
}

fn theta_valuation() -> Result<Rational> {
    let np = x011_data().model.division_poly_2().newton_polygon(2);
    let vals = np.root_valuations();
    let first = vals.first().cloned().ok_or_else(|| GfeError::PreconditionFailed("no 2-torsion".into()))?;
    if vals.iter().any(|v| v != &first) {
        return Err(GfeError::PreconditionFailed("2-torsion x-coordinates of unequal valuation".into()));
    }
    Ok(first)
}

struct FibreSetup {
    param: DiskParam,
    q: QPoly,
    g: Vec<Vec<QPoly>>,
}

fn fibre_setup(disk: &JDisk) -> Result<FibreSetup> {
    let param = disk_param(disk)?;
    let f = &x011_data().f;
    // F(x, center) as a polynomial in x
    let p0 = (0..=f.degree_y()).fold(QPoly::zero(), |acc, k| &acc + &f.coeff(k).scale(&param.center.pow(k as i32)));
    let q = squarefree_part(&p0);
    let dq = q.degree().unwrap_or(0);
    let dp = p0.degree().unwrap_or(0);
    if dq * param.e != dp {
        return Err(GfeError::HypothesisFailed(format!(
            "fibre over {} has {dq} distinct roots, expected every root with multiplicity {}",
            crate::arith::rat_to_string(&param.center),
            param.e
        )));
    }
    if param.e == 2 {
        let lead = p0.lead();
        if p0 != (&q * &q).scale(&lead) {
            return Err(GfeError::HypothesisFailed("fibre is not a square".into()));
        }
    }
    let g = shifted_relation(f, &param);
    Ok(FibreSetup { param, q, g })
}

/// Bound the motion of the fibre roots of the X0(11) j-map over a 2-adic disk.
///
/// Every fibre root `x0` gives a series `phi_0` with `F(x0 + phi_0(t), j(t)) = 0`;
/// the branch criterion is applied at every root simultaneously.  The square
/// class of `x - theta` is constant along a branch when the bound exceeds
/// `2 + v_2(x0 - theta)`.
pub fn disk_slope_analysis(disk: &JDisk, rho: &Rational) -> Result<DiskSlopeReport> {
    let FibreSetup { param, q, g } = fibre_setup(disk)?;
    let e = param.e;
    let et = Etale::new(q.clone());
    let ell = 2;
    for m in 0..e {
        if !et.reduce(&g[m][0]).is_zero() {
            return Err(GfeError::HypothesisFailed(format!("f_0{m} does not vanish on the fibre")));
        }
    }
    // valuations of g[m][l] / g[e][0] at every root
    let lead = et.valuations(&g[e][0], ell);
    if lead.zeros > 0 {
        return Err(GfeError::HypothesisFailed(format!("f_0{e} vanishes at a fibre root")));
    }
    let vals: Vec<Vec<RootValuations>> = match (lead.min(), lead.max()) {
        // constant valuation: shift, avoiding the huge denominators of the inverse
        (Some(lo), Some(hi)) if lo == hi => g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        let v = et.valuations(h, ell);
                        RootValuations { finite: v.finite.iter().map(|x| x - &lo).collect(), zeros: v.zeros }
                    })
                    .collect()
            })
            .collect(),
        _ => {
            let norm = et.inv(&g[e][0]).expect("unit at every root");
            g.iter().map(|row| row.iter().map(|h| et.valuations(&et.mul(h, &norm), ell)).collect()).collect()
        }
    };
    let step = qi(e as i64) * rho;
    let ef = qi(e as i64);
    let gauss_min = |m: usize, from: usize| -> Option<Rational> {
        vals[m].iter().enumerate().skip(from).fold(None, |acc, (l, v)| min_opt(acc, v.min().map(|x| x + &step * qi(l as i64))))
    };
    let c = &vals[0][1];
    let c_min = c.min().ok_or_else(|| GfeError::HypothesisFailed("F_0 has no linear term".into()))?;
    let c_max = c.max().ok_or_else(|| GfeError::HypothesisFailed("F_0 has no linear term at some root".into()))?;
    let w0_lower = gauss_min(0, 0).expect("c != 0");
    let w0_upper = &c_max + &step;
    let mut hypotheses = Vec::new();
    for m in 1..e {
        let rhs = qi((e - m) as i64) / &ef * &w0_upper;
        hypotheses.push(HypothesisCheck { name: format!("|F_{m}(t^e)| < |F_0(t^e)|^((e-{m})/e)"), holds: gt_opt(&gauss_min(m, 0), &rhs) });
    }
    hypotheses.push(HypothesisCheck { name: "|F_e(t^e) - 1| < 1".into(), holds: gt_opt(&gauss_min(e, 1), &qi(0)) });
    for m in (e + 1)..g.len() {
        let shift = qi((m - e) as i64) / &ef * &w0_lower;
        let holds = gauss_min(m, 0).map_or(true, |w| w + shift > qi(0));
        hypotheses.push(HypothesisCheck { name: format!("|F_0(t^e)|^(({m}-e)/e) |F_{m}(t^e)| < 1"), holds });
    }
    if let Some(h) = hypotheses.iter().find(|h| !h.holds) {
        return Err(GfeError::HypothesisFailed(h.name.clone()));
    }
    let slope_range = gt_opt(&gauss_min(0, 2), &w0_upper).then(|| (&c_min / &ef, &c_max / &ef));
    let lower_bound = w0_lower / &ef;
    let vtheta = theta_valuation()?;
    let x0_min = et.valuations(&QPoly::x(), ell).min().unwrap_or_else(|| qi(0));
    if x0_min <= vtheta {
        return Err(GfeError::PreconditionFailed("fibre roots as small as the 2-torsion".into()));
    }
    let threshold = qi(2) + vtheta;
    let rational_roots = padic_roots(&q, 2, 40).len();
    Ok(DiskSlopeReport {
        disk: disk.clone(),
        e,
        fibre_roots: et.n,
        rho: rho.clone(),
        hypotheses,
        exceeds_threshold: lower_bound > threshold,
        lower_bound,
        slope_range,
        threshold,
        rational_roots,
    })
}

/// The shifted relation at one fibre root in Q_2, normalized for the branch criterion.
fn padic_relation(g: &[Vec<QPoly>], x0: &Padic, e: usize, prec: u32) -> Result<PadicBiPoly> {
    let coeffs: Vec<Vec<Padic>> = g
        .iter()
        .enumerate()
        .map(|(m, row)| {
            row.iter()
                .enumerate()
                .map(|(l, h)| {
                    if l == 0 && m < e {
                        // vanishes at a root of the fibre
                        return Padic::exact_zero(2);
                    }
                    crate::arith::PadicPoly::from_qpoly(h, 2, prec).eval(x0)
                })
                .collect()
        })
        .collect();
    let raw = PadicBiPoly { ell: 2, coeffs };
    let lead = raw.f(0, e);
    raw.scale_inv(&lead)
}

/// Explicit branch series at each Q_2-rational fibre root over the disk.
pub fn disk_branch_series(disk: &JDisk, rho: &Rational, terms: usize, prec: u32) -> Result<Vec<(Padic, BranchReport)>> {
    let FibreSetup { param, q, g } = fibre_setup(disk)?;
    let roots = padic_roots(&q, 2, prec);
    if roots.is_empty() {
        return Err(GfeError::NoRationalRoot);
    }
    let mut out = Vec::new();
    for x0 in roots {
        let rel = padic_relation(&g, &x0, param.e, prec)?;
        out.push((x0, branch_series(&rel, param.e, rho, terms)?));
    }
    Ok(out)
}

/// The relation between `s = 1/x` and `u = 1/j` near the cusp at infinity:
/// `s^12 u^2 F(1/s, 1/u) = Q^3 u^2 + s H u - s (1 - 16 s)^11`, with `Q`, `H`
/// the reversed quartic and linear coefficient.
pub fn cusp_relation() -> QBiPoly {
    let d = x011_data();
    let rev = |p: &QPoly, deg: usize| QPoly::new((0..=deg).map(|i| p.coeff(deg - i)).collect());
    let q = rev(&d.quartic, 4);
    let h = rev(&d.f.coeff(1), 11);
    let lin = QPoly::from_i64s(&[1, -16]).pow(11);
    QBiPoly::new(vec![-(&QPoly::x() * &lin), &QPoly::x() * &h, q.pow(3)])
}

/// Branches of `1/j` through the cusp at infinity, as series in `t` with `1/x = t^2`.
pub fn cusp_branch(rho: &Rational, terms: usize, prec: u32) -> Result<BranchReport> {
    branch_series(&cusp_relation().to_padic(2, prec), 2, rho, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::frey::cal_d;

    #[test]
    fn taylor_shift() {
        // (x + y)^3 = x^3 + 3x^2 y + 3x y^2 + y^3
        let p = QPoly::from_i64s(&[0, 0, 0, 1]);
        assert_eq!(taylor(&p, 1), QPoly::from_i64s(&[0, 0, 3]));
        assert_eq!(taylor(&p, 2), QPoly::from_i64s(&[0, 3]));
        assert_eq!(taylor(&p, 3), QPoly::from_i64s(&[1]));
        assert!(taylor(&p, 4).is_zero());
    }

    #[test]
    fn etale_valuations_match_explicit_roots() {
        // roots 2, 1/4, 3 and a pair with valuation 1/2 (x^2 - 2)
        let fib = QPoly::from_i64s(&[-2, 1]) * QPoly::new(vec![q(-1, 4), qi(1)]) * QPoly::from_i64s(&[-3, 1]) * QPoly::from_i64s(&[-2, 0, 1]);
        let et = Etale::new(fib);
        let v = et.valuations(&QPoly::x(), 2);
        assert_eq!(v.finite, vec![qi(-2), qi(0), q(1, 2), q(1, 2), qi(1)]);
        // x - 2 vanishes at one root
        let v = et.valuations(&QPoly::from_i64s(&[-2, 1]), 2);
        assert_eq!(v.zeros, 1);
        assert_eq!(v.max(), None);
        let inv = et.inv(&QPoly::from_i64s(&[1, 1])).unwrap();
        assert_eq!(et.mul(&inv, &QPoly::from_i64s(&[1, 1])), QPoly::one());
        assert!(et.inv(&QPoly::from_i64s(&[-3, 1])).is_none());
    }

    #[test]
    fn centre_disks_bound_exceeds_four_thirds() {
        let d = cal_d();
        for disk in [&d[0], &d[1], &d[2], &d[3]] {
            let r = disk_slope_analysis(disk, &qi(0)).unwrap();
            assert_eq!(r.e, 1);
            assert_eq!(r.fibre_roots, 12);
            assert_eq!(r.threshold, q(4, 3));
            assert!(r.exceeds_threshold, "{disk}: bound {}", r.lower_bound);
            assert_eq!(r.rational_roots, 0);
        }
    }

    #[test]
    fn quadratic_family_bound() {
        let d = cal_d();
        for disk in &d[5..9] {
            let r = disk_slope_analysis(disk, &qi(0)).unwrap();
            assert_eq!(r.e, 2);
            assert_eq!(r.fibre_roots, 6);
            assert!(r.exceeds_threshold, "{disk}: bound {}", r.lower_bound);
        }
    }

    #[test]
    fn no_rational_root() {
        let d = cal_d();
        assert_eq!(disk_branch_series(&d[2], &qi(0), 8, 60).unwrap_err(), GfeError::NoRationalRoot);
        assert!(disk_slope_analysis(&d[4], &qi(0)).is_err());
    }

    #[test]
    fn rational_fibre_root_series() {
        // the CM point (5, -6) has j = -2^15, so x0 = 5 lies in the fibre;
        // the large fibre roots force a smaller radius than the full disk
        let disk = JDisk::CenterModulus { center: qi(-32768), ell: 2, k: 11 };
        assert!(matches!(disk_slope_analysis(&disk, &qi(0)), Err(GfeError::HypothesisFailed(_))));
        let rho = qi(5);
        let out = disk_branch_series(&disk, &rho, 12, 80).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().any(|(x0, _)| x0.to_rational() == qi(5)));
        for (_, r) in &out {
            assert!(r.residual_valuation.clone().map_or(true, |v| v >= qi(50)), "{:?}", r.residual_valuation);
        }
        let agg = disk_slope_analysis(&disk, &rho).unwrap();
        for (_, r) in &out {
            assert!(r.bound >= agg.lower_bound);
        }
    }

    /// `1/j` near the cusp from the formal group, as a series in `tau` with `tau^2 = 1/x`.
    #[test]
    fn cusp_branch_matches_formal_expansion() {
        let n = 14;
        let d = x011_data();
        let w = crate::elliptic::formal_w(&d.model, n + 4);
        // w = t^3 W, x = t^-2 V, y = -t^-3 V
        let big_w = QPoly::new(w.coeffs().iter().skip(3).cloned().collect());
        let v = big_w.series_inverse(n);
        let t = QPoly::x();
        let num = (&v - &QPoly::monomial(qi(16), 2)).pow(11).truncate(n);
        let mut den = QPoly::zero();
        for (i, a) in d.a_poly.coeffs().iter().enumerate() {
            den = &den + &(&v.pow(i as u32).truncate(n) * &QPoly::monomial(a.clone(), 23 - 2 * i)).truncate(n);
        }
        for (i, b) in d.b_poly.coeffs().iter().enumerate() {
            den = &den - &(&v.pow(i as u32 + 1).truncate(n) * &QPoly::monomial(b.clone(), 20 - 2 * i)).truncate(n);
        }
        let u = (&t * &num).mul_trunc(&den.series_inverse(n), n);
        // tau = t sqrt(W)
        let mut root = QPoly::one();
        for _ in 0..6 {
            root = (&root + &big_w.mul_trunc(&root.series_inverse(n), n)).scale(&q(1, 2)).truncate(n);
        }
        let tau = (&t * &root).truncate(n);
        assert_eq!(tau.mul_trunc(&tau, n), (&t * &t).mul_trunc(&big_w, n));

        let prec = 120;
        let r = cusp_branch(&qi(1), n, prec).unwrap();
        assert_eq!(r.e, 2);
        assert!(r.symmetric);
        let tau_p: Vec<Padic> = tau.coeffs().iter().map(|c| Padic::from_rational(c, 2, prec)).collect();
        let matches = |phi: &[Padic]| {
            let mut acc = vec![Padic::exact_zero(2); n];
            let mut pw = vec![Padic::from_i64(1, 2, prec)];
            for c in phi.iter().take(n) {
                acc = super::super::bipoly::series_add(&acc, &pw.iter().map(|x| x.mul_ref(c)).collect::<Vec<_>>(), 2);
                pw = super::super::bipoly::series_mul(&pw, &tau_p, n, 2);
            }
            (0..n).all(|k| acc[k].sub_ref(&Padic::from_rational(&u.coeff(k), 2, prec)).val_lower() >= 60)
        };
        assert_eq!(r.series.iter().filter(|s| matches(s)).count(), 1);
    }

    #[test]
    fn cusp_relation_shape() {
        let c = cusp_relation();
        assert_eq!(c.coeff(0).coeff(1), qi(-1));
        assert!(c.coeff(1).coeff(0).is_zero());
        assert_eq!(c.coeff(2).coeff(0), qi(1));
        assert_eq!(c.coeff(1).coeff(1), qi(1486));
    }
}
