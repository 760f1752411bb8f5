//! Power-series branches of `F(t^e, y) = 0` through the origin, with the
//! Gauss-valuation conditions that certify convergence on a closed disk.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::{series_add, series_inv, series_mul, spread, PadicBiPoly, Series};
use crate::arith::{hensel_lift, pow_big, qi, Padic, PadicPoly, Rational};
use crate::error::{GfeError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

/// Output of [`branch_series`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub ell: u64,
    pub e: usize,
    /// The disk `v(tau) >= rho` on which convergence was certified.
    pub rho: Rational,
    /// `v(phi(tau)) >= bound` for `tau` in the disk.
    pub bound: Rational,
    /// `nu = v(c)/e` when `v(phi(tau)) = nu + v(tau)` holds on the disk.
    pub slope: Option<Rational>,
    pub hypotheses: Vec<HypothesisCheck>,
    /// The e-th roots of `c`, one per branch.
    pub leading: Vec<Padic>,
    /// `series[j][k]` is the coefficient of `t^k` in the j-th branch.
    pub series: Vec<Series>,
    /// Lower bound for `v(F(tau^e, phi(tau)))` on `v(tau) >= rho` from the terms
    /// below the truncation order; `None` when they vanish exactly.
    pub residual_valuation: Option<Rational>,
    /// Whether `phi_j(t) = phi_0(zeta t)` was confirmed for the roots of unity available.
    pub symmetric: bool,
}

/// `min_i v(a_i) + i * step` using the lower valuation bound of each coefficient.
fn gauss_lower(row: &[Padic], step: &Rational, skip: usize) -> Option<Rational> {
    row.iter()
        .enumerate()
        .skip(skip)
        .filter(|(_, c)| !c.is_exact_zero())
        .map(|(i, c)| qi(c.val_lower()) + step * qi(i as i64))
        .min()
}

/// `a > b` where `None` is +infinity.
fn gt(a: &Option<Rational>, b: &Rational) -> bool {
    a.as_ref().map_or(true, |a| a > b)
}

fn structural(f: &PadicBiPoly, e: usize) -> Result<Padic> {
    if e == 0 {
        return Err(GfeError::PreconditionFailed("e must be at least 1".into()));
    }
    for j in 0..e {
        if !f.f(0, j).is_zero_at_prec() {
            return Err(GfeError::HypothesisFailed(format!("f_0{j} must vanish")));
        }
    }
    let one = Padic::from_i64(1, f.ell, 64);
    if !f.f(0, e).sub_ref(&one).is_zero_at_prec() {
        return Err(GfeError::HypothesisFailed(format!("f_0{e} must equal 1")));
    }
    let c = f.f(1, 0).neg_ref();
    if c.is_zero_at_prec() {
        return Err(GfeError::HypothesisFailed("F_0(t) = -ct + ... needs c != 0".into()));
    }
    Ok(c)
}

/// The convergence conditions of the branch criterion on `v(tau) >= rho`, and the
/// resulting bound `v(phi(tau)) >= w(F_0(t^e))/e`.
pub fn branch_hypotheses(f: &PadicBiPoly, e: usize, rho: &Rational) -> Result<(Vec<HypothesisCheck>, Rational, Option<Rational>)> {
    let c = structural(f, e)?;
    let vc = qi(c.valuation()?.expect("nonzero"));
    let step = qi(e as i64) * rho;
    let ef = qi(e as i64);
    let w0_lower = gauss_lower(f.row(0), &step, 0).expect("c != 0");
    // the -ct term alone bounds w(F_0) from above
    let w0_upper = &vc + &step;
    let mut checks = Vec::new();
    for m in 1..e {
        let wm = gauss_lower(f.row(m), &step, 0);
        let rhs = qi((e - m) as i64) / &ef * &w0_upper;
        checks.push(HypothesisCheck { name: format!("|F_{m}(t^e)| < |F_0(t^e)|^((e-{m})/e)"), holds: gt(&wm, &rhs) });
    }
    let we = gauss_lower(f.row(e), &step, 1);
    checks.push(HypothesisCheck { name: "|F_e(t^e) - 1| < 1".into(), holds: gt(&we, &qi(0)) });
    for m in (e + 1)..=f.degree_y() {
        let wm = gauss_lower(f.row(m), &step, 0);
        let lhs_shift = qi((m - e) as i64) / &ef * &w0_lower;
        let holds = wm.map_or(true, |w| w + &lhs_shift > qi(0));
        checks.push(HypothesisCheck { name: format!("|F_0(t^e)|^(({m}-e)/e) |F_{m}(t^e)| < 1"), holds });
    }
    let rest = gauss_lower(f.row(0), &step, 2);
    let slope = gt(&rest, &w0_upper).then(|| &vc / &ef);
    Ok((checks, w0_lower / ef, slope))
}

/// All e-th roots of `c` in Q_l.
fn eth_roots(c: &Padic, e: usize) -> Result<Vec<Padic>> {
    let ell = c.ell();
    let v = c.valuation()?.expect("nonzero");
    if v % e as i64 != 0 {
        return Err(GfeError::RamifiedRoots(format!("{v}/{e}")));
    }
    let prec = c.prec();
    let ve = crate::arith::val_int(&BigInt::from(e), ell).unwrap_or(0) as u32;
    let k = 2 * ve + 1;
    if prec < k {
        return Err(GfeError::InsufficientPrecision("unit known to too few digits".into()));
    }
    let m = pow_big(ell, k);
    let u = c.unit().mod_floor(&m);
    let mut coeffs = vec![Padic::exact_zero(ell); e + 1];
    coeffs[0] = Padic::from_int(c.unit(), ell, prec).neg_ref();
    coeffs[e] = Padic::from_i64(1, ell, prec + 8);
    let poly = PadicPoly::new(ell, coeffs);
    let scale = Padic::from_rational(&crate::arith::rat_pow(ell, v / e as i64), ell, prec + 8);
    let mut out: Vec<Padic> = Vec::new();
    let mut r = BigInt::one();
    while r < m {
        if !(&r % ell).is_zero() && r.modpow(&BigInt::from(e), &m) == u {
            let root = hensel_lift(&poly, &Padic::from_int(&r, ell, prec))?.mul_ref(&scale);
            if !out.iter().any(|o| o.sub_ref(&root).is_zero_at_prec()) {
                out.push(root);
            }
        }
        r += 1;
    }
    if out.len() < e {
        return Err(GfeError::RamifiedRoots(format!(
            "{v}/{e}; only {} of the {e} roots of X^e - c lie in Q_{ell}",
            out.len()
        )));
    }
    Ok(out)
}

/// Evaluate `sum_k rows[k](t) z^k` and its z-derivative modulo `t^n`.
fn eval_in_z(rows: &[Series], z: &[Padic], n: usize, ell: u64) -> (Series, Series) {
    let mut val = vec![Padic::exact_zero(ell); n];
    let mut der = vec![Padic::exact_zero(ell); n];
    // Horner for both P and dP/dz
    for r in rows.iter().rev() {
        der = series_add(&series_mul(&der, z, n, ell), &val, ell);
        val = series_add(&series_mul(&val, z, n, ell), &r[..r.len().min(n)], ell);
    }
    val.truncate(n);
    der.truncate(n);
    (val, der)
}

/// Solve `F(t^e, t z) / t^e = 0` for `z = gamma + O(t)` by Newton iteration.
fn solve_branch(f: &PadicBiPoly, e: usize, gamma: &Padic, n: usize) -> Result<Series> {
    let ell = f.ell;
    // rows of P(t, z) = sum_j Q_j(t) z^j with Q_j(t) = sum_i f_ij t^(e i + j - e)
    let rows: Vec<Series> = (0..=f.degree_y())
        .map(|j| {
            let mut q = vec![Padic::exact_zero(ell); n];
            for (i, c) in f.row(j).iter().enumerate() {
                if i == 0 && j < e {
                    continue;
                }
                let d = e * i + j;
                if d >= e && d - e < n {
                    q[d - e] = c.clone();
                }
            }
            q
        })
        .collect();
    let mut z: Series = vec![gamma.clone()];
    let mut m = 1;
    while m < n {
        m = (2 * m).min(n);
        z.resize(m, Padic::exact_zero(ell));
        let (val, der) = eval_in_z(&rows, &z, m, ell);
        let step = series_mul(&val, &series_inv(&der, m, ell)?, m, ell);
        z = z.iter().zip(&step).map(|(a, b)| a.sub_ref(b)).collect();
    }
    // one more pass repairs the digits lost to cancellation in the last step
    let (val, der) = eval_in_z(&rows, &z, n, ell);
    let step = series_mul(&val, &series_inv(&der, n, ell)?, n, ell);
    z = z.iter().zip(&step).map(|(a, b)| a.sub_ref(b)).collect();
    let mut phi = vec![Padic::exact_zero(ell)];
    phi.extend(z);
    Ok(phi)
}

/// `F(t^e, phi(t))` modulo `t^n`.
pub fn branch_residual(f: &PadicBiPoly, e: usize, phi: &[Padic], n: usize) -> Series {
    let ell = f.ell;
    let mut acc = vec![Padic::exact_zero(ell); n];
    for k in (0..=f.degree_y()).rev() {
        acc = series_mul(&acc, phi, n, ell);
        acc = series_add(&acc, &spread(f.row(k), e, n, ell), ell);
    }
    acc.truncate(n);
    acc
}

/// The `e` power series `phi_j` with `phi_j(0) = 0` and `F(t^e, phi_j(t)) = 0`,
/// computed to `terms` coefficients, with their convergence certified on `v(tau) >= rho`.
///
/// Requires `f_0j = 0` for `j < e`, `f_0e = 1` and `F_0(t) = -ct + ...` with `c != 0`.
pub fn branch_series(f: &PadicBiPoly, e: usize, rho: &Rational, terms: usize) -> Result<BranchReport> {
    let (hypotheses, bound, slope) = branch_hypotheses(f, e, rho)?;
    if let Some(h) = hypotheses.iter().find(|h| !h.holds) {
        return Err(GfeError::HypothesisFailed(h.name.clone()));
    }
    let c = f.f(1, 0).neg_ref();
    let roots = eth_roots(&c, e)?;
    let n = terms.max(2);
    let mut series = Vec::new();
    let mut residual: Option<Rational> = None;
    for g in &roots {
        let phi = solve_branch(f, e, g, n - 1)?;
        let r = branch_residual(f, e, &phi, n - 1 + e);
        for (k, c) in r.iter().enumerate() {
            if !c.is_exact_zero() {
                let w = qi(c.val_lower()) + rho * qi(k as i64);
                residual = Some(residual.map_or(w.clone(), |x| x.min(w)));
            }
        }
        series.push(phi);
    }
    // phi_j(t) = phi_0(zeta t) with zeta = gamma_j / gamma_0
    let mut symmetric = true;
    for (g, s) in roots.iter().zip(&series).skip(1) {
        let zeta = g.checked_div(&roots[0])?;
        let mut zk = Padic::from_i64(1, f.ell, zeta.prec());
        for (a, b) in series[0].iter().zip(s) {
            symmetric &= a.mul_ref(&zk).sub_ref(b).is_zero_at_prec();
            zk = zk.mul_ref(&zeta);
        }
    }
    Ok(BranchReport {
        ell: f.ell,
        e,
        rho: rho.clone(),
        bound,
        slope,
        hypotheses,
        leading: roots,
        series,
        residual_valuation: residual,
        symmetric,
    })
}

/// Evaluate a branch at `tau`; the caller is responsible for `v(tau) >= rho`.
pub fn eval_series(s: &[Padic], tau: &Padic) -> Padic {
    PadicPoly::new(tau.ell(), s.to_vec()).eval(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, QPoly};
    use crate::modcurve::bipoly::QBiPoly;

    fn bi(rows: &[&[i64]]) -> QBiPoly {
        QBiPoly::new(rows.iter().map(|r| QPoly::from_i64s(r)).collect())
    }

    #[test]
    fn square_root_branch_over_q3() {
        // y^2 - x
        let f = bi(&[&[0, -1], &[], &[1]]).to_padic(3, 80);
        let r = branch_series(&f, 2, &qi(0), 20).unwrap();
        assert_eq!(r.series.len(), 2);
        assert_eq!(r.slope, Some(qi(0)));
        assert!(r.symmetric);
        for s in &r.series {
            let one = Padic::from_i64(1, 3, 60);
            assert!(s[1].sub_ref(&one).is_zero_at_prec() || s[1].add_ref(&one).is_zero_at_prec());
            assert!(s.iter().enumerate().all(|(k, c)| k == 1 || c.is_zero_at_prec()));
        }
        assert!(r.residual_valuation.map_or(true, |v| v >= qi(70)));
    }

    #[test]
    fn geometric_branch_over_q2() {
        // y - 7x + xy: phi = 7t/(1+t)
        let f = bi(&[&[0, -7], &[1, 1]]).to_padic(2, 120);
        assert!(matches!(branch_series(&f, 1, &qi(0), 10), Err(GfeError::HypothesisFailed(_))));
        let r = branch_series(&f, 1, &q(1, 2), 40).unwrap();
        assert_eq!(r.slope, Some(qi(0)));
        let s = &r.series[0];
        for k in 1..40 {
            let want = if k % 2 == 1 { qi(7) } else { qi(-7) };
            assert!(s[k].sub_ref(&Padic::from_rational(&want, 2, 100)).is_zero_at_prec(), "t^{k}");
        }
        assert!(r.residual_valuation.map_or(true, |v| v >= qi(50)));
    }

    #[test]
    fn structural_failures() {
        let f = bi(&[&[1, -1], &[], &[1]]).to_padic(3, 40);
        assert!(matches!(branch_series(&f, 2, &qi(0), 5), Err(GfeError::HypothesisFailed(_))));
        let f = bi(&[&[0, 0, 1], &[], &[1]]).to_padic(3, 40);
        assert!(matches!(branch_series(&f, 2, &qi(0), 5), Err(GfeError::HypothesisFailed(_))));
        // c = 2 is not a square in Q_3
        let f = bi(&[&[0, -2], &[], &[1]]).to_padic(3, 40);
        assert!(matches!(branch_series(&f, 2, &qi(0), 5), Err(GfeError::RamifiedRoots(_))));
        // c = 3 has odd valuation
        let f = bi(&[&[0, -3], &[], &[1]]).to_padic(3, 40);
        assert!(matches!(branch_series(&f, 2, &qi(0), 5), Err(GfeError::RamifiedRoots(_))));
    }
}
