use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::JDisk;
use crate::arith::{int, qi, val_int};
use crate::error::{GfeError, Result};

/// One sub-row of a local classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub line: u8,
    pub ell: u64,
    /// Residues of `a` modulo `a_modulus` covered by this sub-row.
    pub a_classes: Vec<i64>,
    pub a_modulus: i64,
    pub b_class: i64,
    pub b_modulus: i64,
    pub d_set: Vec<i64>,
    pub curves: Vec<String>,
    /// Conductor exponent at `ell` of every admissible twist.
    pub v_n: u32,
    pub jdisk: JDisk,
    /// Marked impossible in the table (no curve of the list matches).
    pub impossible: bool,
}

impl TableRow {
    pub fn matches(&self, a: &BigInt, b: &BigInt) -> bool {
        let ar = a.mod_floor(&int(self.a_modulus)).to_i64().unwrap();
        let br = b.mod_floor(&int(self.b_modulus)).to_i64().unwrap();
        br == self.b_class.rem_euclid(self.b_modulus) && self.a_classes.iter().any(|c| c.rem_euclid(self.a_modulus) == ar)
    }
}

/// Why a residue class cannot come from a solution of `a^2 + b^3 = c^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// `a^2 + b^3` has valuation 1 or 2 at `ell`, so it is no p-th power for p >= 3;
    /// `residue` is its value modulo `ell^modulus_exp`.
    Valuation { ell: u64, modulus_exp: u32, residue: i64, valuation: u32 },
    /// The class is a table row marked impossible.
    MarkedImpossible { line: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Row(TableRow),
    Infeasible(Witness),
}

impl Classification {
    pub fn row(&self) -> Option<&TableRow> {
        match self {
            Classification::Row(r) => Some(r),
            Classification::Infeasible(_) => None,
        }
    }
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn center(c: i64, ell: u64, k: u32) -> JDisk {
    JDisk::CenterModulus { center: qi(c), ell, k }
}

fn quad(scale: i64, ell: u64) -> JDisk {
    JDisk::QuadraticFamily { base: qi(1728), scale: qi(scale), ell }
}

#[allow(clippy::too_many_arguments)]
fn row(
    ell: u64,
    line: u8,
    a_classes: &[i64],
    b_class: i64,
    d_set: &[i64],
    curves: &[&str],
    v_n: u32,
    jdisk: JDisk,
) -> TableRow {
    let (a_modulus, b_modulus) = if ell == 2 { (4, 8) } else { (9, 3) };
    TableRow {
        line,
        ell,
        a_classes: a_classes.to_vec(),
        a_modulus,
        b_class,
        b_modulus,
        d_set: d_set.to_vec(),
        curves: strs(curves),
        v_n,
        jdisk,
        impossible: curves.is_empty(),
    }
}

/// 2-adic conditions keyed on `(a mod 4, b mod 8)`; the last entry is the impossible line 7.
pub fn table_2adic() -> Vec<TableRow> {
    let all2 = [2, -2, 6, -6];
    let odd = [1, -1, 3, -3];
    let c288 = ["288a1", "864a1", "864b1"];
    let c96 = ["96a1", "864c1"];
    let inv = JDisk::InversePower { ell: 2, base_exp: 6, exponent: None };
    vec![
        row(2, 1, &[1], -1, &[1, -3], &["54a1"], 1, inv.clone()),
        row(2, 1, &[-1], -1, &[-1, 3], &["54a1"], 1, inv),
        row(2, 2, &[0], 1, &odd, &c288, 5, quad(-1024, 2)),
        row(2, 2, &[0], -3, &odd, &c288, 5, quad(3 * 1024, 2)),
        row(2, 2, &[0], 3, &all2, &c288, 5, quad(-3 * 1024, 2)),
        row(2, 2, &[0], -1, &all2, &c288, 5, quad(1024, 2)),
        row(2, 3, &[2], 1, &odd, &c96, 5, center(-64, 2, 11)),
        row(2, 3, &[2], -3, &odd, &c96, 5, center(15 * 64, 2, 11)),
        row(2, 3, &[2], 3, &all2, &c96, 5, center(7 * 64, 2, 11)),
        row(2, 3, &[2], -1, &all2, &c96, 5, center(-9 * 64, 2, 11)),
        row(2, 4, &[1], 0, &[-2, 6], &["27a1"], 0, JDisk::PolyCube { ell: 2, k: 15 }),
        row(2, 4, &[-1], 0, &[2, -6], &["27a1"], 0, JDisk::PolyCube { ell: 2, k: 15 }),
        row(2, 5, &[1, -1], 2, &all2, &c96, 5, center(-512, 2, 11)),
        row(2, 6, &[1, -1], -2, &all2, &c288, 5, center(512, 2, 11)),
        row(2, 7, &[1, -1], 4, &all2, &[], 0, center(4096, 2, 13)),
    ]
}

/// 3-adic conditions keyed on `(a mod 9, b mod 3)`.
pub fn table_3adic() -> Vec<TableRow> {
    let all = [1, -1, 2, -2, 3, -3, 6, -6];
    let c27 = ["27a1", "864b1", "864c1"];
    let c54 = ["54a1", "864a1"];
    let inv = JDisk::InversePower { ell: 3, base_exp: 3, exponent: None };
    vec![
        row(3, 1, &[1], -1, &[-3, 6], &["96a1"], 1, inv.clone()),
        row(3, 1, &[-1], -1, &[3, -6], &["96a1"], 1, inv),
        row(3, 2, &[0], 1, &all, &["288a1"], 2, quad(-2187, 3)),
        row(3, 2, &[0], -1, &all, &["288a1"], 2, quad(2187, 3)),
        row(3, 3, &[3, -3], 1, &all, &c27, 3, center(27, 3, 6)),
        row(3, 4, &[3, -3], -1, &all, &c54, 3, center(-8 * 27, 3, 6)),
        row(3, 5, &[1, -1, 2, -2, 4, -4], 0, &all, &c27, 3, JDisk::PolyCube { ell: 3, k: 6 }),
        row(3, 6, &[2, -2], 1, &all, &["288a1"], 2, center(2 * 27, 3, 5)),
        row(3, 7, &[1, -1], 1, &all, &c54, 3, center(-4 * 27, 3, 5)),
        row(3, 7, &[4, -4], 1, &all, &c54, 3, center(-27, 3, 5)),
    ]
}

/// Classes where `a^2 + b^3` has valuation 1 or 2 at `ell`; this is decided by the
/// residue modulo 8 (resp. 9), which the table keys determine.
fn valuation_witness(a: &BigInt, b: &BigInt, ell: u64, k: u32) -> Option<Witness> {
    let s = a * a + b * b * b;
    let class = s.mod_floor(&int(if ell == 2 { 8 } else { 9 })).to_i64().unwrap();
    let forced = if ell == 2 { [2, 4, 6].contains(&class) } else { [3, 6].contains(&class) };
    if !forced {
        return None;
    }
    let m = int(ell.pow(k) as i64);
    Some(Witness::Valuation {
        ell,
        modulus_exp: k,
        residue: s.mod_floor(&m).to_i64().unwrap(),
        valuation: val_int(&s, ell).expect("nonzero") as u32,
    })
}

/// Line of the 2-adic table containing `(a, b)`, or a reason the class is infeasible.
pub fn classify_2adic(a: &BigInt, b: &BigInt) -> Result<Classification> {
    if a.is_even() && b.is_even() {
        return Err(GfeError::NotCoprimeAt2);
    }
    if let Some(w) = valuation_witness(a, b, 2, 9) {
        return Ok(Classification::Infeasible(w));
    }
    let r = table_2adic().into_iter().find(|r| r.matches(a, b)).expect("the 2-adic table covers every coprime class");
    if r.impossible {
        return Ok(Classification::Infeasible(Witness::MarkedImpossible { line: r.line }));
    }
    Ok(Classification::Row(r))
}

/// Line of the 3-adic table containing `(a, b)`, or a reason the class is infeasible.
pub fn classify_3adic(a: &BigInt, b: &BigInt) -> Result<Classification> {
    let three = int(3);
    if (a % &three).is_zero() && (b % &three).is_zero() {
        return Err(GfeError::NotCoprimeAt3);
    }
    if let Some(w) = valuation_witness(a, b, 3, 5) {
        return Ok(Classification::Infeasible(w));
    }
    let r = table_3adic().into_iter().find(|r| r.matches(a, b)).expect("the 3-adic table covers every coprime class");
    Ok(Classification::Row(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveMatch {
    Curve(String),
    Incompatible,
}

/// Curve in the list determined by a 2-adic line `i2` and a 3-adic line `i3`.
pub fn match_curve(i2: u8, i3: u8) -> Result<CurveMatch> {
    let r = match i2 {
        1 => 0,
        2 | 6 => 1,
        3 | 5 => 2,
        4 => 3,
        _ => return Err(GfeError::PreconditionFailed(format!("no 2-adic line {i2}"))),
    };
    let c = match i3 {
        1 => 0,
        2 | 6 => 1,
        3 | 5 => 2,
        4 | 7 => 3,
        _ => return Err(GfeError::PreconditionFailed(format!("no 3-adic line {i3}"))),
    };
    const CELLS: [[Option<&str>; 4]; 4] = [
        [None, None, None, Some("54a1")],
        [None, Some("288a1"), Some("864b1"), Some("864a1")],
        [Some("96a1"), None, Some("864c1"), None],
        [None, None, Some("27a1"), None],
    ];
    Ok(match CELLS[r][c] {
        Some(l) => CurveMatch::Curve(l.to_string()),
        None => CurveMatch::Incompatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(a: i64, b: i64) -> Classification {
        classify_2adic(&int(a), &int(b)).unwrap()
    }

    fn c3(a: i64, b: i64) -> Classification {
        classify_3adic(&int(a), &int(b)).unwrap()
    }

    #[test]
    fn catalan_rows() {
        let r = c2(3, -2);
        let r = r.row().unwrap();
        assert_eq!(r.line, 6);
        assert_eq!(r.v_n, 5);
        assert_eq!(r.jdisk, center(512, 2, 11));
        let r3 = c3(3, -2);
        assert_eq!(r3.row().unwrap().line, 3);
        assert_eq!(r3.row().unwrap().curves, strs(&["27a1", "864b1", "864c1"]));
        assert_eq!(match_curve(6, 3).unwrap(), CurveMatch::Curve("864b1".into()));
    }

    #[test]
    fn trivial_and_infeasible() {
        let r = c2(1, 0);
        assert_eq!(r.row().unwrap().line, 4);
        assert_eq!(r.row().unwrap().d_set, vec![-2, 6]);
        assert!(matches!(c2(1, 1), Classification::Infeasible(Witness::Valuation { valuation: 1, .. })));
        assert!(matches!(c2(1, 4), Classification::Infeasible(Witness::MarkedImpossible { line: 7 })));
        assert!(matches!(c3(2, -1), Classification::Infeasible(Witness::Valuation { valuation: 1, .. })));
        assert_eq!(c3(9, 1).row().unwrap().line, 2);
        assert!(matches!(classify_2adic(&int(2), &int(4)), Err(GfeError::NotCoprimeAt2)));
        assert!(matches!(classify_3adic(&int(3), &int(6)), Err(GfeError::NotCoprimeAt3)));
    }

    #[test]
    fn table_sizes() {
        assert_eq!(table_2adic().iter().filter(|r| !r.impossible).count(), 14);
        assert_eq!(table_3adic().len(), 10);
        assert_eq!(match_curve(1, 1).unwrap(), CurveMatch::Incompatible);
        assert_eq!(match_curve(4, 5).unwrap(), CurveMatch::Curve("27a1".into()));
    }
}
