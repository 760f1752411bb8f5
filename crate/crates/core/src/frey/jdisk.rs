use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_power_unit, qi, rat_pow, rat_to_string, Padic, Rational};
use crate::error::{GfeError, Result};

/// Digits used when an exact rational is handed to an l-adic membership test.
const RATIONAL_PREC: u32 = 64;

/// An l-adic region of the j-line from the classification tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum JDisk {
    /// `center + ell^k Z_ell`
    CenterModulus { center: Rational, ell: u64, k: u32 },
    /// `{base + scale t^2 : t in Z_ell}`
    QuadraticFamily { base: Rational, scale: Rational, ell: u64 },
    /// `{ell^(base_exp - e) t^(-e) : t in Z_ell}`; `exponent = None` leaves `e = p` symbolic.
    InversePower { ell: u64, base_exp: i64, exponent: Option<u32> },
    /// `{ell^k t^3 : t in Z_ell}`
    PolyCube { ell: u64, k: u32 },
}

impl JDisk {
    pub fn ell(&self) -> u64 {
        match self {
            JDisk::CenterModulus { ell, .. }
            | JDisk::QuadraticFamily { ell, .. }
            | JDisk::InversePower { ell, .. }
            | JDisk::PolyCube { ell, .. } => *ell,
        }
    }

    /// Fix a symbolic exponent to the prime `p`; other variants are unchanged.
    pub fn with_exponent(&self, p: u32) -> JDisk {
        match self {
            JDisk::InversePower { ell, base_exp, exponent: None } => {
                JDisk::InversePower { ell: *ell, base_exp: *base_exp, exponent: Some(p) }
            }
            other => other.clone(),
        }
    }

    /// The normalized quantity whose shape decides membership.
    fn quantity(&self, j: &Padic) -> Result<Option<Padic>> {
        let ell = self.ell();
        let n = j.prec() + j.abs_prec().unwrap_or(0).unsigned_abs() as u32 + 32;
        let lift = |q: &Rational| Padic::from_rational(q, ell, n);
        Ok(Some(match self {
            JDisk::CenterModulus { center, .. } => j.sub_ref(&lift(center)),
            JDisk::QuadraticFamily { base, scale, .. } => j.sub_ref(&lift(base)).checked_div(&lift(scale))?,
            JDisk::InversePower { base_exp, .. } => {
                if j.is_exact_zero() {
                    return Ok(None);
                }
                lift(&rat_pow(ell, *base_exp)).checked_div(j)?
            }
            JDisk::PolyCube { k, .. } => j.checked_div(&lift(&rat_pow(ell, *k as i64)))?,
        }))
    }

    fn decide(&self, x: &Padic) -> Result<bool> {
        let ell = self.ell();
        match self {
            JDisk::CenterModulus { k, .. } => {
                if x.val_lower() >= *k as i64 {
                    return Ok(true);
                }
                Ok(x.valuation()?.is_some_and(|v| v >= *k as i64))
            }
            JDisk::QuadraticFamily { .. } => {
                if x.is_exact_zero() {
                    return Ok(true);
                }
                let v = x.valuation()?.expect("nonzero");
                Ok(v >= 0 && x.is_square()?)
            }
            JDisk::InversePower { exponent, .. } => {
                let e = exponent.ok_or_else(|| {
                    GfeError::PreconditionFailed("exponent p must be fixed before testing membership".into())
                })?;
                let v = x.valuation()?.expect("nonzero");
                if v < e as i64 || v % e as i64 != 0 {
                    return Ok(false);
                }
                is_power_unit(x.unit(), x.prec(), e, ell)
            }
            JDisk::PolyCube { .. } => {
                if x.is_exact_zero() {
                    return Ok(true);
                }
                let v = x.valuation()?.expect("nonzero");
                if v < 0 || v % 3 != 0 {
                    return Ok(false);
                }
                is_power_unit(x.unit(), x.prec(), 3, ell)
            }
        }
    }

    pub fn contains_padic(&self, j: &Padic) -> Result<bool> {
        if j.ell() != self.ell() {
            return Err(GfeError::PreconditionFailed(format!("{}-adic value for a {}-adic disk", j.ell(), self.ell())));
        }
        match self.quantity(j)? {
            None => Ok(false),
            Some(x) => self.decide(&x),
        }
    }

    /// Exact membership for a rational j.
    pub fn contains(&self, j: &Rational) -> Result<bool> {
        let ell = self.ell();
        let x = match self {
            JDisk::CenterModulus { center, .. } => j - center,
            JDisk::QuadraticFamily { base, scale, .. } => (j - base) / scale,
            JDisk::InversePower { base_exp, .. } => {
                if j == &qi(0) {
                    return Ok(false);
                }
                rat_pow(ell, *base_exp) / j
            }
            JDisk::PolyCube { k, .. } => j / rat_pow(ell, *k as i64),
        };
        self.decide(&Padic::from_rational(&x, ell, RATIONAL_PREC))
    }
}

fn pow_str(ell: u64, e: i64) -> String {
    format!("{ell}^{e}")
}

impl fmt::Display for JDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JDisk::CenterModulus { center, ell, k } => {
                write!(f, "{} + {} Z_{ell}", rat_to_string(center), pow_str(*ell, *k as i64))
            }
            JDisk::QuadraticFamily { base, scale, ell } => {
                write!(f, "{{{} + ({}) t^2 : t in Z_{ell}}}", rat_to_string(base), rat_to_string(scale))
            }
            JDisk::InversePower { ell, base_exp, exponent } => match exponent {
                Some(e) => write!(f, "{{{ell}^({base_exp}-{e}) t^-{e} : t in Z_{ell}}}"),
                None => write!(f, "{{{ell}^({base_exp}-p) t^-p : t in Z_{ell}}}"),
            },
            JDisk::PolyCube { ell, k } => write!(f, "{{{} t^3 : t in Z_{ell}}}", pow_str(*ell, *k as i64)),
        }
    }
}

fn center(c: i64, ell: u64, k: u32) -> JDisk {
    JDisk::CenterModulus { center: qi(c), ell, k }
}

fn quad(scale: i64, ell: u64) -> JDisk {
    JDisk::QuadraticFamily { base: qi(1728), scale: qi(scale), ell }
}

/// The nine 2-adic sets covering the 2-adically good j-invariants at level 11.
pub fn cal_d() -> Vec<JDisk> {
    vec![
        center(15 * 64, 2, 11),
        center(-64, 2, 11),
        center(512, 2, 11),
        center(-512, 2, 11),
        JDisk::InversePower { ell: 2, base_exp: 6, exponent: Some(11) },
        quad(-3 * 1024, 2),
        quad(-1024, 2),
        quad(1024, 2),
        quad(3 * 1024, 2),
    ]
}

/// Curves whose twists of `X(11)` can carry a 2-adically good point.
pub const CAL_E: [&str; 5] = ["54a1", "96a1", "864a1", "864b1", "864c1"];

/// Members of `cal_d()` that can contain `j(P)` for a point on `X_E(11)`.
pub fn curve_disks(label: &str) -> Result<Vec<JDisk>> {
    let d = cal_d();
    let idx: &[usize] = match label {
        "54a1" => &[4],
        "96a1" => &[0, 1, 3],
        "864a1" => &[5, 7],
        "864b1" => &[6, 8, 2],
        "864c1" => &[0, 1, 3],
        _ => return Err(GfeError::UnknownLabel(label.to_string())),
    };
    Ok(idx.iter().map(|&i| d[i].clone()).collect())
}

/// All members of `cal_d()` containing a 2-adic j; the branch values 0 and 12^3 are excluded.
pub fn jdisk_membership(j: &Padic) -> Result<Vec<JDisk>> {
    if j.ell() != 2 {
        return Err(GfeError::PreconditionFailed("membership in the 2-adic family needs a 2-adic j".into()));
    }
    let branch = |c: i64| j.sub_ref(&Padic::from_i64(c, 2, j.prec() + 64));
    if j.is_exact_zero() || branch(1728).is_exact_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for d in cal_d() {
        if d.contains_padic(j)? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Exact-rational form of [`jdisk_membership`].
pub fn jdisk_membership_rational(j: &Rational) -> Result<Vec<JDisk>> {
    if j == &qi(0) || j == &qi(1728) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for d in cal_d() {
        if d.contains(j)? {
            out.push(d);
        }
    }
    Ok(out)
}
