//! Independent transcription of the classification and twist tables in the
//! printed layout, with a parser for the j-forms.

use crate::arith::{qi, Rational};
use crate::frey::JDisk;

/// `line | a mod 4 | b mod 8 | d | curves | v_2(N) | j`; a blank line carries over.
pub const TABLE1_TEXT: &str = "
1 |  1 | -1 | 1,-3   | 54a1                | 1 | 2^(6-p) t^(-p)
  | -1 | -1 | -1,3   | 54a1                | 1 | 2^(6-p) t^(-p)
2 |  0 |  1 | ±1,±3  | 288a1,864a1,864b1   | 5 | 12^3 - 2^10 t^2
  |  0 | -3 | ±1,±3  | 288a1,864a1,864b1   | 5 | 12^3 + 3*2^10 t^2
  |  0 |  3 | ±2,±6  | 288a1,864a1,864b1   | 5 | 12^3 - 3*2^10 t^2
  |  0 | -1 | ±2,±6  | 288a1,864a1,864b1   | 5 | 12^3 + 2^10 t^2
3 |  2 |  1 | ±1,±3  | 96a1,864c1          | 5 | -2^6 + 2^11 t
  |  2 | -3 | ±1,±3  | 96a1,864c1          | 5 | 15*2^6 + 2^11 t
  |  2 |  3 | ±2,±6  | 96a1,864c1          | 5 | 7*2^6 + 2^11 t
  |  2 | -1 | ±2,±6  | 96a1,864c1          | 5 | -9*2^6 + 2^11 t
4 |  1 |  0 | -2,6   | 27a1                | 0 | 2^15 t^3
  | -1 |  0 | 2,-6   | 27a1                | 0 | 2^15 t^3
5 | ±1 |  2 | ±2,±6  | 96a1,864c1          | 5 | -2^9 + 2^11 t
6 | ±1 | -2 | ±2,±6  | 288a1,864a1,864b1   | 5 | 2^9 + 2^11 t
7 | ±1 |  4 | ±2,±6  | impossible          | 0 | (2^12 + 2^13 t)
";

/// `line | a mod 9 | b mod 3 | d | curves | v_3(N) | j`
pub const TABLE2_TEXT: &str = "
1 | 1        | -1 | -3,6         | 96a1              | 1 | 3^(3-p) t^(-p)
  | -1       | -1 | 3,-6         | 96a1              | 1 | 3^(3-p) t^(-p)
2 | 0        |  1 | ±1,±2,±3,±6  | 288a1             | 2 | 12^3 - 3^7 t^2
  | 0        | -1 | ±1,±2,±3,±6  | 288a1             | 2 | 12^3 + 3^7 t^2
3 | ±3       |  1 | ±1,±2,±3,±6  | 27a1,864b1,864c1  | 3 | 3^3 + 3^6 t
4 | ±3       | -1 | ±1,±2,±3,±6  | 54a1,864a1        | 3 | -8*3^3 + 3^6 t
5 | ±1,±2,±4 |  0 | ±1,±2,±3,±6  | 27a1,864b1,864c1  | 3 | 3^6 t^3
6 | ±2       |  1 | ±1,±2,±3,±6  | 288a1             | 2 | 2*3^3 + 3^5 t
7 | ±1       |  1 | ±1,±2,±3,±6  | 54a1,864a1        | 3 | -4*3^3 + 3^5 t
  | ±4       |  1 | ±1,±2,±3,±6  | 54a1,864a1        | 3 | -3^3 + 3^5 t
";

/// Rows are 2-adic line groups, columns 3-adic line groups; `-` is incompatible.
pub const TABLE3_TEXT: &str = "
1   | -    | -     | -     | 54a1
2,6 | -    | 288a1 | 864b1 | 864a1
3,5 | 96a1 | -     | 864c1 | -
4   | -    | -     | 27a1  | -
";
pub const TABLE3_COLUMNS: [&str; 4] = ["1", "2,6", "3,5", "4,7"];

/// `p mod 24 | 27a1 | 54a1 | 96a1 | 288a1 | 864a1 | 864b1 | 864c1`
pub const TABLE4_TEXT: &str = "
1  |   | + | + |    | +  | +  | +
5  | + | - | + |    | +- | +- | +-
7  |   | - | + | +  | +  | +  | +
11 | + | + | + | +- | +  | +  | +
13 |   |   | - |    | +  | +  | +
17 | + | + |   |    | +  | +  | +
19 |   | + | - | +- | +- | +- | +-
23 | + |   |   | +  | +  | +  | +
";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub line: u8,
    pub a_classes: Vec<i64>,
    pub b_class: i64,
    pub d_set: Vec<i64>,
    pub curves: Vec<String>,
    pub v_n: u32,
    pub jdisk: JDisk,
}

fn cells(line: &str) -> Vec<&str> {
    line.split('|').map(str::trim).collect()
}

/// `±1,-3` -> `[1, -1, -3]`
pub fn int_list(s: &str) -> Vec<i64> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some(rest) = part.strip_prefix('±') {
            let n: i64 = rest.parse().expect("integer");
            out.push(n);
            out.push(-n);
        } else {
            out.push(part.parse().expect("integer"));
        }
    }
    out
}

/// `-8*3^3` -> -216
fn eval_product(s: &str) -> i64 {
    let s = s.trim();
    let (sign, s) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    sign * s
        .split('*')
        .map(|f| match f.split_once('^') {
            Some((b, e)) => b.trim().parse::<i64>().unwrap().pow(e.trim().parse().unwrap()),
            None => f.trim().parse::<i64>().unwrap(),
        })
        .product::<i64>()
}

/// `ell^k` -> `(ell, k)`
fn prime_power(s: &str) -> (u64, i64) {
    let (b, e) = s.trim().split_once('^').expect("power");
    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
    (b.trim().parse().unwrap(), e.parse().unwrap_or(0))
}

/// Parse a j-form as printed in the tables.
pub fn parse_jform(s: &str) -> JDisk {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s).trim();
    if let Some(head) = s.strip_suffix("t^(-p)") {
        // ell^(k-p)
        let (b, e) = head.trim().split_once('^').unwrap();
        let k: i64 = e.trim_start_matches('(').split('-').next().unwrap().parse().unwrap();
        return JDisk::InversePower { ell: b.parse().unwrap(), base_exp: k, exponent: None };
    }
    if let Some(head) = s.strip_suffix("t^3") {
        let (ell, k) = prime_power(head);
        return JDisk::PolyCube { ell, k: k as u32 };
    }
    // constant, then a signed t-term
    let split = s.rfind(" + ").or_else(|| s.rfind(" - ")).expect("two terms");
    let (c, rest) = (&s[..split], &s[split + 1..]);
    let sign = if rest.starts_with('-') { -1 } else { 1 };
    let term = rest[1..].trim();
    let center: Rational = qi(eval_product(c));
    if let Some(scale) = term.strip_suffix("t^2") {
        let scale = sign * eval_product(scale);
        let ell = if scale % 2 == 0 { 2 } else { 3 };
        return JDisk::QuadraticFamily { base: center, scale: qi(scale), ell };
    }
    let modulus = term.strip_suffix('t').expect("linear term");
    let (ell, k) = prime_power(modulus);
    JDisk::CenterModulus { center, ell, k: k as u32 }
}

pub fn parse_class_table(text: &str) -> Vec<ExpectedRow> {
    let mut line = 0u8;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c = cells(l);
            if !c[0].is_empty() {
                line = c[0].parse().unwrap();
            }
            let curves = if c[4] == "impossible" { Vec::new() } else { c[4].split(',').map(String::from).collect() };
            ExpectedRow {
                line,
                a_classes: int_list(c[1]),
                b_class: c[2].parse().unwrap(),
                d_set: int_list(c[3]),
                curves,
                v_n: c[5].parse().unwrap(),
                jdisk: parse_jform(c[6]),
            }
        })
        .collect()
}

/// `(row lines, column lines, label or None)` cells.
pub fn parse_curve_grid() -> Vec<(Vec<u8>, Vec<u8>, Option<String>)> {
    let lines = |s: &str| s.split(',').map(|x| x.trim().parse().unwrap()).collect::<Vec<u8>>();
    let mut out = Vec::new();
    for l in TABLE3_TEXT.lines().filter(|l| !l.trim().is_empty()) {
        let c = cells(l);
        for (col, cell) in TABLE3_COLUMNS.iter().zip(&c[1..]) {
            let label = (*cell != "-").then(|| cell.to_string());
            out.push((lines(c[0]), lines(col), label));
        }
    }
    out
}

/// `(p mod 24, [signs per curve])` with signs as printed (`""`, `"+"`, `"-"`, `"+-"`).
pub fn parse_twist_grid() -> Vec<(u64, Vec<String>)> {
    TABLE4_TEXT
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c = cells(l);
            (c[0].parse().unwrap(), c[1..].iter().map(|s| s.to_string()).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn jforms() {
        assert_eq!(parse_jform("2^(6-p) t^(-p)"), JDisk::InversePower { ell: 2, base_exp: 6, exponent: None });
        assert_eq!(parse_jform("2^15 t^3"), JDisk::PolyCube { ell: 2, k: 15 });
        assert_eq!(
            parse_jform("12^3 + 3*2^10 t^2"),
            JDisk::QuadraticFamily { base: qi(1728), scale: qi(3072), ell: 2 }
        );
        assert_eq!(parse_jform("-8*3^3 + 3^6 t"), JDisk::CenterModulus { center: qi(-216), ell: 3, k: 6 });
        assert_eq!(parse_jform("(2^12 + 2^13 t)"), JDisk::CenterModulus { center: qi(4096), ell: 2, k: 13 });
        assert_eq!(parse_jform("-3^3 + 3^5 t"), JDisk::CenterModulus { center: q(-27, 1), ell: 3, k: 5 });
    }

    #[test]
    fn grids() {
        assert_eq!(parse_class_table(TABLE1_TEXT).len(), 15);
        assert_eq!(parse_class_table(TABLE2_TEXT).len(), 10);
        assert_eq!(parse_curve_grid().len(), 16);
        assert_eq!(parse_twist_grid().len(), 8);
    }
}
